#pragma once

#include <array>
#include <optional>
#include <string>

#include "locmult/pwl.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

/// A function on [0,1] that is piecewise linear away from one accumulation
/// point.
///
/// Plain: an ordinary PwlFn.
/// Oscillating: g = mu t on [0, mu_1]; on each window [mu_n, mu_{n+1}] of
///   the dyadic sequence mu_n = rho (1 - 2^-n) it holds its start value on
///   the first third, ramps linearly in the middle third and holds its end
///   value on the last third. Windows with odd n go from the plateau
///   P = mu * mu_1 down to 0, even ones back up; g = 0 on [rho, 1]. The
///   value stored at rho itself is 0; g has no limit there.
/// Superlinear: h(2^-n) = c 4^-n for n >= 1, linear in between, h = c/4 on
///   [1/2, 1] and h(0) = 0. It has no linear germ at 0.
class TailFn {
 public:
  enum class Kind { Plain, Oscillating, Superlinear };

  static TailFn plain(PwlFn f);
  static TailFn oscillating(const Rat& rho, const Rat& mu);
  static TailFn superlinear(const Rat& c);

  Kind kind() const { return kind_; }
  /// Plain: the function. Oscillating: equals g on [0, mu_1], constant after.
  const PwlFn& prefix() const { return prefix_; }
  /// Accumulation point: rho, or 0 for Superlinear. Empty for Plain.
  std::optional<Rat> singular_point() const;
  const Rat& rho() const { return rho_; }
  const Rat& plateau() const { return plateau_; }
  /// Slope of the first segment.
  Rat mu() const;

  /// rho (1 - 2^-n), n >= 1.
  Rat mu_seq(long n) const;
  /// n with mu_n <= t < mu_{n+1}, for mu_1 <= t < rho.
  long window_index(const Rat& t) const;
  /// The four breakpoints of window n.
  std::array<Point, 4> window(long n) const;

  Rat eval(const Rat& t) const;
  TailFn scaled(const Rat& c) const;

  /// PwlFn equal to this function on [a, b] and constant outside it.
  /// Throws PreconditionError when [a, b] contains the accumulation point.
  PwlFn truncation(const Rat& a, const Rat& b) const;

  /// Empty for Superlinear.
  std::optional<LocalForm> germ_at_zero() const;
  Rat lower_bound() const;
  Rat upper_bound() const;

  /// `{"prefix":"pwl[...]","tail":{"rho":..,"mu":..,"plateau":..,"rule":"dyadic"}}`
  std::string to_json() const;

  bool operator==(const TailFn&) const = default;

 private:
  TailFn() = default;

  Kind kind_ = Kind::Plain;
  PwlFn prefix_;
  Rat rho_;
  Rat plateau_;
  Rat coeff_;  // Superlinear scale c
};

}  // namespace locmult
