#pragma once

#include "locmult/monoid.hpp"
#include "locmult/rng.hpp"

namespace locmult {

// Hand-rolled generators for the property suites. All of them draw only
// from Rng, so a (seed, stream, id) triple fixes the instance.

/// Up to `max_inner` interior breakpoints, values in [lo, hi].
PwlFn random_pwl(Rng& rng, int max_inner = 4, long lo = -2, long hi = 2);

/// Nonzero element of M. With `vanish_at_zero` the value at 0 is 0 and the
/// first slope is positive; otherwise f(0) > 0 one time in four.
MElem random_m(Rng& rng, bool vanish_at_zero = false, int max_inner = 4);

/// Nonzero element of N_f: a meet of q f with a random element of M.
MElem random_nf(Rng& rng, const MElem& f);

/// x <=_M y for nonzero y; sometimes x = y or x touches y away from 0.
MElem random_below(Rng& rng, const MElem& y);

struct RieszInstance {
  MElem x;
  MElem y1;
  MElem y2;
};

/// x <=_M y1 + y2 with y1, y2 nonzero.
RieszInstance random_riesz(Rng& rng);

/// Compact subset of the open set u made of one or two closed intervals.
/// u must have a component of positive length.
RSet random_compact_in(Rng& rng, const RSet& u);

/// Point of u with positive length component, away from its ends.
Rat random_point_in(Rng& rng, const RSet& u);

}  // namespace locmult
