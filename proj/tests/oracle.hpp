#pragma once

// Small reference computations used by the tests. They work from raw point
// lists and elementary arithmetic only, never from the library's own
// comparison or order routines.

#include <algorithm>
#include <utility>
#include <vector>

#include "locmult/pwl.hpp"

namespace oracle {

using locmult::PwlFn;
using locmult::Rat;

/// Linear interpolation straight from (x, y) pairs.
inline Rat interp(const std::vector<std::pair<Rat, Rat>>& pts, const Rat& t) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& [x0, y0] = pts[i];
    const auto& [x1, y1] = pts[i + 1];
    if (x0 <= t && t <= x1) return Rat(y0 + (y1 - y0) * (t - x0) / (x1 - x0));
  }
  return pts.back().second;
}

inline std::vector<std::pair<Rat, Rat>> raw(const PwlFn& f) {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& p : f.points()) out.emplace_back(p.x, p.y);
  return out;
}

/// Every abscissa of every argument, sorted and unique, plus the midpoints
/// between consecutive ones.
inline std::vector<Rat> grid(std::initializer_list<const PwlFn*> fs) {
  std::vector<Rat> xs;
  for (const PwlFn* f : fs) {
    for (const auto& p : f->points()) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back((xs[i] + xs[i + 1]) / 2);
  std::sort(xs.begin(), xs.end());
  return xs;
}

/// f >= 0 everywhere and f is zero or positive on its first segment past 0.
inline bool in_M(const PwlFn& f) {
  const auto pts = raw(f);
  bool zero = true;
  for (const auto& [x, y] : pts) {
    if (y < 0) return false;
    if (y != 0) zero = false;
  }
  return zero || pts[0].second > 0 || pts[1].second > 0;
}

inline bool leq_M(const PwlFn& a, const PwlFn& b) { return oracle::in_M(b - a); }

/// Least n >= 1 with g <=_M n f, searched up to `limit`; 0 if none.
inline long least_multiple(const PwlFn& g, const PwlFn& f, long limit) {
  for (long n = 1; n <= limit; ++n) {
    if (leq_M(g, Rat(n) * f)) return n;
  }
  return 0;
}

/// (value, slope) of the first segment.
inline std::pair<Rat, Rat> germ(const PwlFn& f) {
  const auto pts = raw(f);
  return {pts[0].second, Rat((pts[1].second - pts[0].second) / (pts[1].first - pts[0].first))};
}

/// Membership of g in I_f(h) for f(0) = 0: g is zero, or g <= h on the
/// closure of {f > 0} and the germ of h is lexicographically above that
/// of g. On each cell of the common breakpoint grid all three functions
/// are linear, so a cell where f is positive at the midpoint lies in the
/// closure and it is enough to compare at its ends and middle.
inline bool ifh(const PwlFn& g, const PwlFn& f, const PwlFn& h) {
  if (g == PwlFn()) return true;
  std::vector<Rat> xs;
  for (const PwlFn* p : {&g, &f, &h}) {
    for (const auto& pt : p->points()) xs.push_back(pt.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const auto rg = raw(g), rf = raw(f), rh = raw(h);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat mid = (xs[i] + xs[i + 1]) / 2;
    if (interp(rf, mid) <= 0) continue;
    for (const Rat& t : {xs[i], mid, xs[i + 1]}) {
      if (interp(rg, t) > interp(rh, t)) return false;
    }
  }
  const auto a = germ(h), b = germ(g);
  return a.first > b.first || (a.first == b.first && a.second > b.second);
}

}  // namespace oracle
