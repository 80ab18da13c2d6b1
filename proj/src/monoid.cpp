#include "locmult/monoid.hpp"

#include <algorithm>

#include "json.hpp"
#include "locmult/error.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

Verdict<MElem> in_M(const PwlFn& f) {
  if (f.is_zero()) return MElem();
  const auto& pts = f.points();
  for (const Point& p : pts) {
    if (p.y < 0) return Rejection{p.x, "negative value"};
  }
  if (pts[0].y == 0 && pts[1].y == 0) {
    return Rejection{pts[1].x / 2, "vanishes on a right neighbourhood of 0"};
  }
  // f > 0 on (0, first zero); eps is the last breakpoint before that zero.
  const RSet pos = cozero(f);
  const Interval& first = pos.intervals().front();
  if (first.hi == 1 && first.hi_closed) return MElem(f, Rat(1));
  Rat eps = first.hi / 2;
  for (const Point& p : pts) {
    if (p.x > 0 && p.x < first.hi) eps = p.x;
  }
  return MElem(f, eps);
}

MElem MElem::checked(const PwlFn& f) {
  Verdict<MElem> v = in_M(f);
  if (!v) {
    throw PreconditionError("not in M: " + v.rejection().reason + " at t=" +
                            to_string(v.rejection().witness));
  }
  return v.value();
}

std::string MElem::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = "MElem";
  j["fn"] = fn_.to_string();
  j["eps"] = eps_ ? to_string(*eps_) : "ZERO";
  return j.dump();
}

MElem operator+(const MElem& a, const MElem& b) { return MElem::checked(a.fn() + b.fn()); }

MElem operator*(const Rat& q, const MElem& a) {
  if (q < 0) throw PreconditionError("M is only closed under nonnegative scaling");
  return MElem::checked(q * a.fn());
}

MElem meet(const MElem& a, const MElem& b) { return MElem::checked(meet(a.fn(), b.fn())); }
MElem join(const MElem& a, const MElem& b) { return MElem::checked(join(a.fn(), b.fn())); }

Verdict<MElem> alg_leq(const MElem& g, const MElem& f) { return in_M(f.fn() - g.fn()); }

bool alg_less(const MElem& g, const MElem& f) {
  return !(g == f) && alg_leq(g, f).ok();
}

IdealCtx::IdealCtx(MElem f) : f_(std::move(f)) {
  if (f_.is_zero()) throw PreconditionError("ideal context needs a nonzero f");
  cozero_ = locmult::cozero(f_.fn());
  below_f0_ = alg_leq(f_, MElem::checked(PwlFn::identity())).ok();
}

void IdealCtx::require_interval_base(const char* who) const {
  if (!vanishes_at_zero()) throw PreconditionError(std::string(who) + ": base f must vanish at 0");
}

namespace {

std::vector<Rat> merged_breaks(const PwlFn& a, const PwlFn& b) {
  std::vector<Rat> xs = a.breakpoints();
  const std::vector<Rat> more = b.breakpoints();
  xs.insert(xs.end(), more.begin(), more.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

Verdict<Int> in_Nf(const MElem& g, const IdealCtx& ctx) {
  if (g.is_zero()) return Int(1);
  const PwlFn& f = ctx.f().fn();
  // g and f are linear between merged breakpoints, and f >= 0, so the ratio
  // g/f on a segment where f > 0 inside is maximized at an endpoint, and
  // g > 0 = f anywhere forces it at an endpoint.
  Rat worst(0);
  for (const Rat& x : merged_breaks(f, g.fn())) {
    const Rat fv = f.eval(x), gv = g.fn().eval(x);
    if (fv == 0) {
      if (gv > 0) return Rejection{x, "g > 0 where f = 0"};
      continue;
    }
    const Rat r = gv / fv;
    if (r > worst) worst = r;
  }
  Int n = ceil_of(worst);
  if (n < 1) n = 1;
  for (int step = 0; step < 2; ++step, ++n) {
    if (in_M(Rat(n) * f - g.fn()).ok()) return n;
  }
  throw InvariantError("in_Nf: bound n + 1 failed to dominate");
}

bool in_Df(const MElem& g, const IdealCtx& ctx) {
  return in_Nf(g, ctx).ok() && alg_leq(g, MElem::checked(PwlFn::constant(Rat(1)))).ok();
}

std::pair<MElem, MElem> riesz_decompose(const MElem& x, const MElem& y1, const MElem& y2) {
  const Verdict<MElem> pre = in_M(y1.fn() + y2.fn() - x.fn());
  if (!pre) {
    throw PreconditionError("riesz_decompose: x is not <=_M y1 + y2 (" + pre.rejection().reason +
                            " at t=" + to_string(pre.rejection().witness) + ")");
  }
  PwlFn x1 = meet(x.fn(), y1.fn());
  PwlFn x2 = x.fn() - x1;
  const bool clean = in_M(x2).ok() && in_M(y1.fn() - x1).ok() && in_M(y2.fn() - x2).ok();
  if (!clean) {
    // Move a sliver s from x1 to x2: s <= x1/2 and s <= (y2 - x2)/2 near 0,
    // which gives both x2 + s and y1 - x1 + s a positive germ.
    const PwlFn w = y2.fn() - x2;
    const LocalForm a = local_form_at_zero(x1), b = local_form_at_zero(w);
    if (germ_sign(a.lambda, a.mu) <= 0 || germ_sign(b.lambda, b.mu) <= 0) {
      throw InvariantError("riesz_decompose: no room for the repair sliver");
    }
    const Rat reach = min_of(a.eps, b.eps);
    const PwlFn s = meet(sliver_below(a.lambda, a.mu, reach), sliver_below(b.lambda, b.mu, reach));
    x1 = x1 - s;
    x2 = x2 + s;
  }
  const Verdict<MElem> m1 = in_M(x1), m2 = in_M(x2);
  if (!m1 || !m2 || !(x1 + x2 == x.fn()) || !alg_leq(m1.value(), y1) || !alg_leq(m2.value(), y2)) {
    throw InvariantError("riesz_decompose: postconditions failed");
  }
  return {m1.value(), m2.value()};
}

MElem prime_witness(const MElem& f, const MElem& g) {
  if (f.is_zero() || g.is_zero()) throw PreconditionError("prime_witness: inputs must be nonzero");
  const MElem h = meet(f, g);
  if (h.is_zero() || !in_Nf(h, IdealCtx(f)) || !in_Nf(h, IdealCtx(g))) {
    throw InvariantError("prime_witness: meet is not a common nonzero element");
  }
  return h;
}

}  // namespace locmult
