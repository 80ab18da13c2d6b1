#pragma once

#include <optional>
#include <string>

#include "locmult/pwl.hpp"
#include "locmult/tail.hpp"

namespace locmult {

/// `fn` equals the function on the closed window [lo, hi].
struct LocalPiece {
  PwlFn fn;
  Rat lo;
  Rat hi;
};

/// base + coeff * tail, where tail (if any) is Oscillating or Superlinear.
/// Plain tails are folded into the base on construction. This is enough to
/// represent h, h1 - g, n - h and their scalings in the monster setting.
class SupFn {
 public:
  SupFn() = default;
  SupFn(PwlFn base);  // NOLINT(google-explicit-constructor)
  SupFn(PwlFn base, const Rat& coeff, const TailFn& tail);
  explicit SupFn(const TailFn& tail) : SupFn(PwlFn(), Rat(1), tail) {}

  const PwlFn& base() const { return base_; }
  const Rat& coeff() const { return coeff_; }
  const std::optional<TailFn>& tail() const { return tail_; }
  bool has_tail() const { return tail_.has_value(); }
  bool is_zero() const { return !tail_ && base_.is_zero(); }
  std::optional<Rat> singular_point() const;

  Rat eval(const Rat& t) const;
  std::optional<LocalForm> germ_at_zero() const;
  Rat lower_bound() const;
  Rat upper_bound() const;

  /// A PwlFn agreeing with this function on a closed window around t.
  /// Throws PreconditionError at the accumulation point.
  LocalPiece local_piece(const Rat& t) const;
  /// PwlFn equal to this on [a, b] (which must avoid the singular point).
  PwlFn truncation(const Rat& a, const Rat& b) const;

  std::string to_string() const;

  bool operator==(const SupFn&) const = default;

 private:
  PwlFn base_;
  Rat coeff_;
  std::optional<TailFn> tail_;
};

/// Tails must coincide when both sides carry one.
SupFn operator+(const SupFn& a, const SupFn& b);
SupFn operator-(const SupFn& a, const SupFn& b);
SupFn operator*(const Rat& q, const SupFn& a);

/// Sign analysis of d on s, with the tail part handled symbolically.
Comparison nonneg_report(const SupFn& d, const RSet& s);
/// z <= h (and z < h) on s.
Comparison compare(const PwlFn& z, const SupFn& h, const RSet& s);
bool agree_on(const SupFn& a, const SupFn& b, const RSet& s);

}  // namespace locmult
