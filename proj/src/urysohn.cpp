#include "locmult/urysohn.hpp"

#include "locmult/error.hpp"

namespace locmult {

LocalForm local_form_at_zero(const PwlFn& f) {
  const auto& p = f.points();
  const Rat mu = (p[1].y - p[0].y) / (p[1].x - p[0].x);
  return LocalForm{p[0].y, mu, p[1].x};
}

int germ_sign(const Rat& lambda, const Rat& mu) {
  if (lambda != 0) return lambda > 0 ? 1 : -1;
  if (mu != 0) return mu > 0 ? 1 : -1;
  return 0;
}

namespace {

struct Plateau {
  Rat v_lo;   // where the left ramp starts (value 0)
  Rat lo;     // plateau start
  Rat hi;     // plateau end
  Rat v_hi;   // where the right ramp ends (value 0)
};

std::vector<Plateau> plateaus(const RSet& k, const RSet& v) {
  if (!k.is_closed()) throw PreconditionError("urysohn: K must be closed");
  if (!v.is_open()) throw PreconditionError("urysohn: V must be open");
  if (!k.subset_of(v)) throw PreconditionError("urysohn: K is not a subset of V");
  std::vector<Plateau> out;
  for (const Interval& c : k.intervals()) {
    const auto enclosing = v.component_of(c.lo);
    if (!enclosing) throw InvariantError("urysohn: component of V not found");
    Plateau p;
    p.v_lo = enclosing->lo;
    p.v_hi = enclosing->hi;
    p.lo = (c.lo == enclosing->lo) ? c.lo : (c.lo + enclosing->lo) / 2;
    p.hi = (c.hi == enclosing->hi) ? c.hi : (c.hi + enclosing->hi) / 2;
    out.push_back(std::move(p));
  }
  return out;
}

PwlFn trapezoid(const Plateau& p, const Rat& rho) {
  std::vector<Point> pts;
  auto push = [&](const Rat& x, const Rat& y) {
    if (!pts.empty() && pts.back().x == x) return;
    pts.push_back({x, y});
  };
  if (p.v_lo > 0) push(Rat(0), Rat(0));
  if (p.lo > p.v_lo) push(p.v_lo, Rat(0));
  push(p.lo, rho);
  push(p.hi, rho);
  if (p.v_hi > p.hi) push(p.v_hi, Rat(0));
  if (p.v_hi < 1) push(Rat(1), Rat(0));
  if (pts.front().x != 0) {
    pts.insert(pts.begin(), Point{Rat(0), pts.front().y});
  }
  if (pts.back().x != 1) pts.push_back({Rat(1), pts.back().y});
  return PwlFn::from_points(std::move(pts));
}

}  // namespace

PwlFn urysohn(const RSet& k, const RSet& v, const Rat& rho) {
  if (rho <= 0) throw PreconditionError("urysohn: rho must be positive");
  PwlFn out;
  for (const Plateau& p : plateaus(k, v)) out = join(out, trapezoid(p, rho));
  return out;
}

RSet urysohn_plateau(const RSet& k, const RSet& v) {
  RSet out;
  for (const Plateau& p : plateaus(k, v)) {
    out = out.unite(RSet::interval(p.lo, p.hi, p.lo == 0, p.hi == 1));
    if (p.lo == p.hi && p.lo != 0 && p.hi != 1) {
      throw InvariantError("urysohn: degenerate plateau");
    }
  }
  return out;
}

PwlFn hat(const Rat& slope, const Rat& width) {
  if (width <= 0 || width > 1) throw PreconditionError("hat: width must lie in (0,1]");
  const Rat half = width / 2;
  const Rat peak = slope * half;
  std::vector<Point> pts{{Rat(0), Rat(0)}, {half, peak}, {width, Rat(0)}};
  if (width < 1) pts.push_back({Rat(1), Rat(0)});
  return PwlFn::from_points(std::move(pts));
}

PwlFn sliver_below(const Rat& lambda, const Rat& mu, const Rat& reach) {
  if (germ_sign(lambda, mu) <= 0) {
    throw PreconditionError("sliver_below: germ must be positive");
  }
  if (reach <= 0) throw PreconditionError("sliver_below: reach must be positive");
  Rat width = min_of(reach, Rat(1));
  if (lambda + mu * width <= 0) width = -lambda / mu / 2;
  const Rat half = width / 2;
  const Rat at_half = lambda + mu * half;
  const Rat sigma = at_half / half / 2;
  return hat(sigma, width);
}

PwlFn cap_at_zero(const Rat& height, const Rat& a, const Rat& b) {
  if (!(0 < a && a < b && b <= 1)) {
    throw PreconditionError("cap_at_zero: need 0 < a < b <= 1");
  }
  std::vector<Point> pts{{Rat(0), height}, {a, height}, {b, Rat(0)}};
  if (b < 1) pts.push_back({Rat(1), Rat(0)});
  return PwlFn::from_points(std::move(pts));
}

}  // namespace locmult
