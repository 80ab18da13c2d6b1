#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locmult/rational.hpp"
#include "locmult/rset.hpp"

namespace locmult {

struct Point {
  Rat x;
  Rat y;
  bool operator==(const Point&) const = default;
};

/// Continuous piecewise-linear function on [0,1] with rational breakpoints.
///
/// Always held in canonical form: abscissae strictly increasing from 0 to 1
/// and no three consecutive points collinear. Two functions are equal iff
/// their canonical point lists are equal.
class PwlFn {
 public:
  /// The zero function.
  PwlFn();

  /// Validates and canonicalizes. Throws PreconditionError on
  /// non-increasing abscissae or missing endpoints 0 / 1.
  static PwlFn from_points(std::vector<Point> points);
  static PwlFn constant(const Rat& c);
  /// f0(t) = t.
  static PwlFn identity();

  const std::vector<Point>& points() const { return pts_; }
  std::vector<Rat> breakpoints() const;

  /// Throws PreconditionError for t outside [0,1].
  Rat eval(const Rat& t) const;

  bool is_zero() const;
  Rat min_value() const;
  Rat max_value() const;
  /// Abscissa of the first breakpoint after 0 (1 for an affine function).
  const Rat& first_break() const { return pts_[1].x; }

  /// `pwl[(x,y);...]`, exact fractions; parse(print(f)) == f.
  std::string to_string() const;
  static PwlFn parse(std::string_view text);

  bool operator==(const PwlFn&) const = default;

 private:
  explicit PwlFn(std::vector<Point> pts) : pts_(std::move(pts)) {}
  static std::vector<Point> canonical(std::vector<Point> pts);

  std::vector<Point> pts_;
};

PwlFn add(const PwlFn& f, const PwlFn& g);
PwlFn sub(const PwlFn& f, const PwlFn& g);
PwlFn scale(const Rat& q, const PwlFn& f);
PwlFn meet(const PwlFn& f, const PwlFn& g);
PwlFn join(const PwlFn& f, const PwlFn& g);

inline PwlFn operator+(const PwlFn& f, const PwlFn& g) { return add(f, g); }
inline PwlFn operator-(const PwlFn& f, const PwlFn& g) { return sub(f, g); }
inline PwlFn operator-(const PwlFn& f) { return scale(Rat(-1), f); }
inline PwlFn operator*(const Rat& q, const PwlFn& f) { return scale(q, f); }

/// Open set {t : f(t) > 0}, for any f.
RSet positive_set(const PwlFn& f);
/// {t : f(t) > 0}; requires f >= 0 everywhere.
RSet cozero(const PwlFn& f);
/// Closure of the co-zero set.
RSet support(const PwlFn& f);
/// Level sets {f <= c} and {f >= c} (closed).
RSet sublevel(const PwlFn& f, const Rat& c);
RSet superlevel(const PwlFn& f, const Rat& c);

/// Result of comparing f against g on a set S.
struct Comparison {
  bool leq = true;                ///< f(t) <= g(t) for all t in S
  bool strict = true;             ///< f(t) <  g(t) for all t in S
  std::optional<Rat> inf_gap;     ///< inf of g - f over S; empty iff S empty
  std::optional<Rat> leq_witness;     ///< t in S with f(t) > g(t)
  std::optional<Rat> strict_witness;  ///< t in S with f(t) >= g(t)
};

/// `strict` is the pointwise reading of f << g on S; the uniform reading is
/// `inf_gap > 0`. Callers pick.
Comparison compare(const PwlFn& f, const PwlFn& g, const RSet& s);

/// Gap analysis of a PwlFn `d` on a set: the engine behind compare().
Comparison nonneg_report(const PwlFn& d, const RSet& s);

/// f == g at every point of s.
bool agree_on(const PwlFn& f, const PwlFn& g, const RSet& s);

}  // namespace locmult
