#pragma once

#include "locmult/pwl.hpp"
#include "locmult/rational.hpp"
#include "locmult/rset.hpp"

namespace locmult {

/// f = lambda + mu * t on [0, eps].
struct LocalForm {
  Rat lambda;
  Rat mu;
  Rat eps;

  bool operator==(const LocalForm&) const = default;
};

LocalForm local_form_at_zero(const PwlFn& f);

/// Lexicographic sign of a germ lambda + mu * t at 0: the sign of the
/// function on a small enough punctured neighbourhood of 0.
int germ_sign(const Rat& lambda, const Rat& mu);

/// Urysohn function for closed K inside open V (relative to [0,1]).
///
/// Each component of K is fattened on either side by half its gap to the
/// boundary of the enclosing component of V; the result is rho on that
/// fattened set, zero off V, with linear ramps in between.
/// Throws PreconditionError unless K is closed, V is open, K is a subset of
/// V and rho > 0.
PwlFn urysohn(const RSet& k, const RSet& v, const Rat& rho);

/// The open set U on which urysohn(k, v, rho) equals rho.
RSet urysohn_plateau(const RSet& k, const RSet& v);

/// Hat supported on [0, width]: 0 at 0, slope * width / 2 at width / 2,
/// 0 from width on.
PwlFn hat(const Rat& slope, const Rat& width);

/// Hat s below half of l(t) = lambda + mu * t, where (lambda, mu) is a
/// positive germ and l is only trusted on [0, reach]. s has germ (0, sigma)
/// with sigma > 0, s <= l / 2 on its support, and l > 0 on (0, width].
PwlFn sliver_below(const Rat& lambda, const Rat& mu, const Rat& reach);

/// Urysohn cut at 0: `height` on [0, a], linear to 0 at b, 0 afterwards.
PwlFn cap_at_zero(const Rat& height, const Rat& a, const Rat& b);

}  // namespace locmult
