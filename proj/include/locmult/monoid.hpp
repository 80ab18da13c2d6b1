#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "locmult/pwl.hpp"
#include "locmult/rset.hpp"

namespace locmult {

/// Why a candidate was turned away, with a point that shows it.
struct Rejection {
  Rat witness;
  std::string reason;
};

/// Either an accepted value or a Rejection. Rejections are ordinary
/// results, not errors.
template <typename T>
class Verdict {
 public:
  Verdict(T value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Verdict(Rejection r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<T>(v_); }
  const Rejection& rejection() const { return std::get<Rejection>(v_); }

 private:
  std::variant<T, Rejection> v_;
};

/// Element of M: either zero, or f >= 0 with f > 0 on (0, eps].
class MElem {
 public:
  MElem() = default;  // zero

  /// Throws PreconditionError when f is not in M.
  static MElem checked(const PwlFn& f);

  const PwlFn& fn() const { return fn_; }
  bool is_zero() const { return !eps_; }
  /// Certified positivity radius; empty for zero.
  const std::optional<Rat>& eps() const { return eps_; }

  bool operator==(const MElem& o) const { return fn_ == o.fn_; }

  /// `{"kind":"MElem","fn":"pwl[...]","eps":"1/4"}`; eps is "ZERO" for 0.
  std::string to_json() const;

 private:
  friend Verdict<MElem> in_M(const PwlFn& f);
  MElem(PwlFn f, std::optional<Rat> eps) : fn_(std::move(f)), eps_(std::move(eps)) {}

  PwlFn fn_;
  std::optional<Rat> eps_;
};

Verdict<MElem> in_M(const PwlFn& f);

/// M is closed under these; results are certified afresh.
MElem operator+(const MElem& a, const MElem& b);
/// q >= 0.
MElem operator*(const Rat& q, const MElem& a);
/// meet of two elements of M stays in M.
MElem meet(const MElem& a, const MElem& b);
MElem join(const MElem& a, const MElem& b);

/// g <=_M f iff f - g is in M; the certificate is that difference.
Verdict<MElem> alg_leq(const MElem& g, const MElem& f);

/// g <_M f: g <=_M f and g != f.
bool alg_less(const MElem& g, const MElem& f);

/// Context of the order-ideal N_f for a nonzero f.
class IdealCtx {
 public:
  /// Throws PreconditionError when f is zero.
  explicit IdealCtx(MElem f);

  const MElem& f() const { return f_; }
  const RSet& cozero() const { return cozero_; }
  /// f <=_M f0 holds (recorded; the usual standing assumption).
  bool below_f0() const { return below_f0_; }
  /// f(0) = 0, so every element of N_f vanishes at 0. Implied by
  /// below_f0() and all the interval calculus actually uses.
  bool vanishes_at_zero() const { return f_.fn().eval(Rat(0)) == 0; }
  /// Throws PreconditionError unless vanishes_at_zero().
  void require_interval_base(const char* who) const;

 private:
  MElem f_;
  RSet cozero_;
  bool below_f0_ = false;
};

/// Least n >= 1 with g <=_M n f, or a rejection: a point where g > 0 = f.
Verdict<Int> in_Nf(const MElem& g, const IdealCtx& ctx);

/// g in N_f and g <=_M 1.
bool in_Df(const MElem& g, const IdealCtx& ctx);

/// Split x <=_M y1 + y2 into x = x1 + x2 with x1 <=_M y1 and x2 <=_M y2.
/// Throws PreconditionError (carrying the in_M rejection point) when
/// x <=_M y1 + y2 fails.
std::pair<MElem, MElem> riesz_decompose(const MElem& x, const MElem& y1, const MElem& y2);

/// A nonzero element of N_f and N_g for nonzero f, g: their meet.
MElem prime_witness(const MElem& f, const MElem& g);

}  // namespace locmult
