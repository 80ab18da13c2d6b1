#include "locmult/localization.hpp"

#include "json.hpp"
#include "locmult/error.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

namespace {

const MElem& f0_elem() {
  static const MElem f0 = MElem::checked(PwlFn::identity());
  return f0;
}

// (a - t)+ for a in (0,1].
PwlFn ramp_down(const Rat& a) {
  if (a >= 1) return PwlFn::constant(Rat(1)) - PwlFn::identity();
  return PwlFn::from_points({{Rat(0), a}, {a, Rat(0)}, {Rat(1), Rat(0)}});
}

// Witness for h1 + h2 built as the pointwise sum of witnesses of h1, h2.
PropCWitness sum_witness(const PropCWitness& a, const PropCWitness& b) {
  return PropCWitness([a, b](const Rat& t) {
    const PropCValue x = a.at(t), y = b.at(t);
    return PropCValue{MElem::checked(x.z.fn() + y.z.fn()), max_of(x.lo, y.lo), min_of(x.hi, y.hi),
                      min_of(x.zero_radius, y.zero_radius)};
  });
}

}  // namespace

std::string LocalClass::to_json() const {
  nlohmann::ordered_json j;
  j["class"] = {{"base", rep.ctx.f().fn().to_string()}, {"sup", rep.h.to_string()}};
  return j.dump();
}

LocalClass make_class(const IdealCtx& ctx, const SupFn& h) {
  ctx.require_interval_base("make_class");
  return LocalClass{make_interval(ctx, h)};
}

LocalClass zero_class() { return LocalClass{make_interval(IdealCtx(f0_elem()), SupFn())}; }

MElem refine(const MElem& f, const MElem& g) {
  const MElem p = prime_witness(f, g);
  return MElem::checked(Rat(1, 2) * meet(p.fn(), PwlFn::identity()));
}

bool equivalent(const LocalClass& a, const LocalClass& b) {
  const IdealCtx common(refine(a.rep.ctx.f(), b.rep.ctx.f()));
  return agree_on(a.rep.h, b.rep.h, common.cozero());
}

LocalClass add_classes(const LocalClass& a, const LocalClass& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const IdealCtx common(refine(a.rep.ctx.f(), b.rep.ctx.f()));
  const SupFn h = a.rep.h + b.rep.h;
  const Verdict<PropCWitness> ca = has_property_C(common, a.rep.h);
  const Verdict<PropCWitness> cb = has_property_C(common, b.rep.h);
  if (!ca || !cb) throw InvariantError("add_classes: restricted summand lost property (C)");
  const Verdict<MElem> lf = in_Lf(h, common);
  if (!lf) throw InvariantError("add_classes: sum is not in L_f");
  return LocalClass{IntervalRep{common, h, lf.value(), sum_witness(ca.value(), cb.value())}};
}

std::string MinIdealReport::to_json() const {
  nlohmann::ordered_json j;
  j["min_ideal_n"] = n.get_si();
  j["mu"] = to_string(mu);
  j["f_prime"] = f_prime.fn().to_string();
  j["verified"] = verified();
  return j.dump();
}

MinIdealReport minimal_ideal_dominates(const LocalClass& c) {
  if (c.is_zero()) throw PreconditionError("minimal_ideal_dominates: class must be nonzero");
  const IntervalRep& rep = c.rep;
  const auto germ = rep.h.germ_at_zero();
  if (!germ) throw InvariantError("minimal_ideal_dominates: sup function has no linear germ");
  // A hat g under h that equals mu t on [0, delta / 2]. With h(0) > 0 the
  // slope 1 fits under h once delta is small; otherwise mu is h's slope.
  Rat mu = germ->mu;
  Rat delta = germ->eps;
  if (germ->lambda > 0) {
    mu = 1;
    delta = min_of(delta, germ->lambda / (2 * (1 + abs(germ->mu))));
  } else if (germ->lambda < 0 || germ->mu <= 0) {
    throw InvariantError("minimal_ideal_dominates: sup function is not positive near 0");
  }
  delta = min_of(delta, Rat(1));
  MinIdealReport out;
  out.mu = mu;
  out.g = MElem::checked(mu * meet(PwlFn::identity(), ramp_down(delta)));
  out.n = floor_of(1 / mu) + 1;
  out.f_prime = MElem::checked(Rat(1, 2) * meet(rep.ctx.f().fn(), ramp_down(delta / 2)));
  out.f_prime_below_f = alg_leq(out.f_prime, rep.ctx.f()).ok();
  const MElem& g = out.g;
  const LocalForm lf{Rat(0), mu, delta / 2};
  const RSet s = locmult::cozero(out.f_prime.fn());
  const Rat n(out.n);
  const PwlFn f0 = PwlFn::identity();
  const PwlFn ng = n * g.fn();
  out.complement_positive = n * lf.mu - 1 > 0;
  out.sum_identity = agree_on(f0 + (n * lf.mu - 1) * f0, ng, s);
  out.ng_below_nh = compare(ng, n * rep.h, rep.ctx.cozero()).leq;
  out.f0_below_ng = compare(f0, SupFn(ng), s).strict;
  return out;
}

FundamentalSeq fundamental_sequence(int k) {
  if (k < 1) throw PreconditionError("fundamental_sequence: k must be at least 1");
  FundamentalSeq out;
  out.elems.push_back(f0_elem());
  for (int n = 1; n <= k; ++n) {
    const Rat edge(1, n + 1);
    const MElem fn = MElem::checked(Rat(1, 2) * meet(out.elems.back().fn(), ramp_down(edge)));
    if (!alg_leq(fn, out.elems.back()) || !(locmult::cozero(fn.fn()) == RSet::open(Rat(0), edge))) {
      throw InvariantError("fundamental_sequence: step " + std::to_string(n) + " fails");
    }
    out.elems.push_back(fn);
  }
  return out;
}

}  // namespace locmult
