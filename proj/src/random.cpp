#include "locmult/random.hpp"

#include <algorithm>
#include <set>

#include "locmult/error.hpp"

namespace locmult {

namespace {

std::vector<Rat> interior_xs(Rng& rng, int max_inner, int min_inner) {
  std::set<Rat> xs;
  const long want = rng.range(min_inner, max_inner);
  for (long i = 0; i < want; ++i) xs.insert(rng.unit());
  while (static_cast<int>(xs.size()) < min_inner) xs.insert(rng.unit());
  return {xs.begin(), xs.end()};
}

}  // namespace

PwlFn random_pwl(Rng& rng, int max_inner, long lo, long hi) {
  std::vector<Point> pts{{Rat(0), rng.rat(lo, hi)}};
  for (const Rat& x : interior_xs(rng, max_inner, 0)) pts.push_back({x, rng.rat(lo, hi)});
  pts.push_back({Rat(1), rng.rat(lo, hi)});
  return PwlFn::from_points(std::move(pts));
}

MElem random_m(Rng& rng, bool vanish_at_zero, int max_inner) {
  const bool lifted = !vanish_at_zero && rng.below(4) == 0;
  std::vector<Point> pts{{Rat(0), lifted ? rng.rat(1, 2) : Rat(0)}};
  const std::vector<Rat> xs = interior_xs(rng, max_inner, 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rat y = rng.rat(0, 2);
    if (i == 0 && y == 0) y = Rat(1, 2);
    pts.push_back({xs[i], y});
  }
  pts.push_back({Rat(1), rng.rat(0, 2)});
  return MElem::checked(PwlFn::from_points(std::move(pts)));
}

MElem random_nf(Rng& rng, const MElem& f) {
  if (f.is_zero()) throw PreconditionError("random_nf: f must be nonzero");
  const Rat q = rng.rat(1, 3);
  return meet(q * f, random_m(rng, f.fn().eval(Rat(0)) == 0));
}

MElem random_below(Rng& rng, const MElem& y) {
  if (y.is_zero()) throw PreconditionError("random_below: y must be nonzero");
  switch (rng.below(6)) {
    case 0:
      return y;
    case 1:
      return MElem();
    default:
      break;
  }
  const MElem r = random_m(rng);
  const MElem x = meet(y, r);
  if (alg_leq(x, y)) return x;
  return meet(Rat(1, 2) * y, r);
}

RieszInstance random_riesz(Rng& rng) {
  RieszInstance inst;
  inst.y1 = random_m(rng);
  inst.y2 = random_m(rng);
  switch (rng.below(8)) {
    case 0:
      inst.x = inst.y1 + inst.y2;
      break;
    case 1:
      inst.x = inst.y1;
      break;
    default:
      inst.x = random_below(rng, inst.y1 + inst.y2);
  }
  return inst;
}

RSet random_compact_in(Rng& rng, const RSet& u) {
  RSet k;
  const long pieces = rng.range(1, 2);
  for (long i = 0; i < pieces; ++i) {
    const Rat a = random_point_in(rng, u);
    const Interval comp = *u.component_of(a);
    // The far end of the component, pulled in unless it is a closed 1.
    const Rat room = comp.hi - a;
    Rat b = a + room * rng.unit();
    if (comp.hi == 1 && comp.hi_closed && rng.coin()) b = Rat(1);
    k = k.unite(RSet::closed(a, b));
  }
  return k;
}

Rat random_point_in(Rng& rng, const RSet& u) {
  std::vector<Interval> comps;
  for (const Interval& c : u.intervals()) {
    if (c.hi > c.lo) comps.push_back(c);
  }
  if (comps.empty()) throw PreconditionError("random_point_in: no interval component");
  const Interval& c = comps[rng.below(comps.size())];
  return c.lo + (c.hi - c.lo) * rng.unit();
}

}  // namespace locmult
