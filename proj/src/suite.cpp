#include "locmult/suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "locmult/error.hpp"
#include "locmult/group.hpp"
#include "locmult/intervals.hpp"
#include "locmult/localization.hpp"
#include "locmult/monster.hpp"
#include "locmult/random.hpp"

namespace locmult {

namespace {

struct Outcome {
  bool passed = true;
  std::string witness;
};

Outcome pass(std::string note = {}) { return {true, std::move(note)}; }
Outcome fail(std::string why) { return {false, std::move(why)}; }

using PerInstance = std::function<Outcome(Rng&, std::uint64_t)>;
using Whole = std::function<std::vector<Outcome>(const SuiteConfig&)>;

struct Check {
  std::string name;
  PerInstance per;  // set for randomized checks
  Whole whole;      // set for checks that run once and report several rows
};

// Collects named law failures; the first one becomes the witness.
class Laws {
 public:
  void require(bool ok, const std::string& law) {
    if (!ok && failed_.empty()) failed_ = law;
  }
  Outcome outcome(const std::string& context) const {
    return failed_.empty() ? pass() : fail(failed_ + ": " + context);
  }

 private:
  std::string failed_;
};

const MElem& f0m() {
  static const MElem f0 = MElem::checked(PwlFn::identity());
  return f0;
}

PwlFn ramp_down(const Rat& a) {
  if (a >= 1) return PwlFn::constant(Rat(1)) - PwlFn::identity();
  return PwlFn::from_points({{Rat(0), a}, {a, Rat(0)}, {Rat(1), Rat(0)}});
}

std::vector<Rat> all_breaks(std::initializer_list<const PwlFn*> fs) {
  std::vector<Rat> xs;
  for (const PwlFn* f : fs) {
    for (const Point& p : f->points()) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Independent reading of a <=_M b for functions in canonical form: b - a
// is nonnegative at every breakpoint and, unless it vanishes, positive on
// its first segment away from 0.
bool oracle_leq_M(const PwlFn& a, const PwlFn& b) {
  const std::vector<Rat> xs = all_breaks({&a, &b});
  bool all_zero = true;
  for (const Rat& x : xs) {
    const Rat d = b.eval(x) - a.eval(x);
    if (d < 0) return false;
    if (d != 0) all_zero = false;
  }
  if (all_zero) return true;
  const Rat d0 = b.eval(Rat(0)) - a.eval(Rat(0));
  const Rat d1 = b.eval(xs[1]) - a.eval(xs[1]);
  return d0 > 0 || d1 > 0;
}

// Germ (value, slope) at 0 straight from the first segment.
std::pair<Rat, Rat> oracle_germ(const PwlFn& f) {
  const Point& p0 = f.points()[0];
  const Point& p1 = f.points()[1];
  return {p0.y, (p1.y - p0.y) / (p1.x - p0.x)};
}

bool germ_greater(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
  return a.first > b.first || (a.first == b.first && a.second > b.second);
}

// Independent membership test for I_f(h) with PwlFn h: g <= h on the
// closure of U_f at every breakpoint, and h's germ strictly above g's.
bool oracle_ifh(const MElem& g, const IdealCtx& ctx, const PwlFn& h) {
  if (g.is_zero()) return true;
  const RSet cl = ctx.cozero().closure();
  for (const Rat& x : all_breaks({&g.fn(), &h, &ctx.f().fn()})) {
    if (cl.contains(x) && g.fn().eval(x) > h.eval(x)) return false;
  }
  for (const Rat& x : cl.endpoints()) {
    if (g.fn().eval(x) > h.eval(x)) return false;
  }
  return germ_greater(oracle_germ(h), oracle_germ(g.fn()));
}

// ---------------------------------------------------------------- lattice

Outcome lattice_group_laws(Rng& rng, std::uint64_t) {
  const PwlFn f = random_pwl(rng), g = random_pwl(rng), h = random_pwl(rng);
  const PwlFn zero;
  Laws laws;
  laws.require((f + g) + h == f + (g + h), "associativity");
  laws.require(f + g == g + f, "commutativity");
  laws.require(f + zero == f, "identity");
  laws.require(f + (-f) == zero, "inverse");
  laws.require(f - g == f + (-g), "subtraction");
  laws.require(PwlFn::identity() + (PwlFn::constant(Rat(1)) - PwlFn::identity()) ==
                   PwlFn::constant(Rat(1)),
               "telescoping");
  return laws.outcome(f.to_string() + " " + g.to_string() + " " + h.to_string());
}

Outcome lattice_module_laws(Rng& rng, std::uint64_t) {
  const PwlFn f = random_pwl(rng), g = random_pwl(rng);
  const Rat p = rng.rat(-3, 3), q = rng.rat(-3, 3);
  Laws laws;
  laws.require(q * (f + g) == q * f + q * g, "scalar distributes over sums");
  laws.require((p + q) * f == p * f + q * f, "sum of scalars distributes");
  laws.require((p * q) * f == p * (q * f), "scalar associativity");
  laws.require(Rat(1) * f == f, "unit scalar");
  laws.require(Rat(0) * f == PwlFn(), "zero scalar");
  laws.require(Rat(2) * PwlFn::identity() - PwlFn::identity() == PwlFn::identity(), "2t - t = t");
  return laws.outcome(f.to_string() + " " + g.to_string() + " p=" + to_string(p) +
                      " q=" + to_string(q));
}

Outcome lattice_lattice_laws(Rng& rng, std::uint64_t) {
  const PwlFn f = random_pwl(rng), g = random_pwl(rng), h = random_pwl(rng);
  Laws laws;
  const PwlFn m = meet(f, g), j = join(f, g);
  laws.require(m == meet(g, f) && j == join(g, f), "commutativity");
  laws.require(meet(meet(f, g), h) == meet(f, meet(g, h)), "meet associativity");
  laws.require(join(join(f, g), h) == join(f, join(g, h)), "join associativity");
  laws.require(meet(f, join(f, g)) == f && join(f, meet(f, g)) == f, "absorption");
  laws.require(meet(f, f) == f && join(f, f) == f, "idempotence");
  for (const Rat& x : all_breaks({&f, &g, &m, &j})) {
    laws.require(m.eval(x) <= f.eval(x) && m.eval(x) <= g.eval(x), "meet below both");
    laws.require(j.eval(x) >= f.eval(x) && j.eval(x) >= g.eval(x), "join above both");
  }
  laws.require(m + j == f + g, "meet + join = sum");
  return laws.outcome(f.to_string() + " " + g.to_string() + " " + h.to_string());
}

Outcome lattice_meet_eval(Rng& rng, std::uint64_t) {
  const PwlFn f = random_pwl(rng), g = random_pwl(rng);
  const PwlFn m = meet(f, g), j = join(f, g);
  for (int i = 0; i < 16; ++i) {
    const Rat t = i == 0 ? Rat(0) : i == 1 ? Rat(1) : rng.unit();
    const Rat a = f.eval(t), b = g.eval(t);
    if (m.eval(t) != min_of(a, b) || j.eval(t) != max_of(a, b)) {
      return fail("t=" + to_string(t) + " " + f.to_string() + " " + g.to_string());
    }
  }
  return pass();
}

Outcome lattice_cozero(Rng& rng, std::uint64_t) {
  const PwlFn f = join(random_pwl(rng), PwlFn());
  const RSet u = cozero(f);
  const auto& pts = f.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Rat> ts{pts[i].x};
    if (i + 1 < pts.size()) ts.push_back((pts[i].x + pts[i + 1].x) / 2);
    for (const Rat& t : ts) {
      if (u.contains(t) != (f.eval(t) > 0)) {
        return fail("t=" + to_string(t) + " f=" + f.to_string() + " U=" + u.to_string());
      }
    }
  }
  return pass();
}

Outcome lattice_canonical(Rng& rng, std::uint64_t) {
  const PwlFn f = random_pwl(rng, 6);
  const std::string text = f.to_string();
  const PwlFn back = PwlFn::parse(text);
  if (back != f || back.to_string() != text) return fail("round trip: " + text);
  if (PwlFn::from_points(f.points()) != f) return fail("canonical form not idempotent: " + text);
  return pass();
}

// ------------------------------------------------------------------ group

std::vector<Outcome> group_properties(const SuiteConfig& cfg) {
  const std::vector<GElem> sample = generate_G(cfg.depth, 24, cfg.seed);
  const GroupReport rep = verify_group_properties(sample, urysohn_grid(50));
  std::vector<Outcome> out;
  out.push_back(sample.size() >= 200 ? pass(std::to_string(sample.size()) + " elements")
                                     : fail("sample has only " + std::to_string(sample.size()) +
                                            " elements"));
  for (const PropertyRow& r : rep.rows) {
    const std::string note = "(" + r.property + ") " + r.instance +
                             (r.detail.empty() ? "" : ": " + r.detail);
    switch (r.status) {
      case RowStatus::Pass:
        out.push_back(pass());
        break;
      case RowStatus::Precondition:
        out.push_back(pass("rejected as expected " + note));
        break;
      case RowStatus::Fail:
        out.push_back(fail(note));
        break;
    }
  }
  return out;
}

const std::vector<GElem>& group_sample(int depth, std::uint64_t seed) {
  // Small cache keyed by run parameters; filled once per (depth, seed).
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, std::vector<GElem>> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({depth, seed});
  if (it == cache.end()) it = cache.emplace(std::make_pair(depth, seed), generate_G(depth, 24, seed)).first;
  return it->second;
}

PerInstance group_replay(const SuiteConfig& cfg) {
  return [cfg](Rng& rng, std::uint64_t) {
    const auto& sample = group_sample(cfg.depth, cfg.seed);
    const GElem& e = sample[rng.below(sample.size())];
    const std::string text = e.derivation.to_string();
    const Derivation back = Derivation::parse(text);
    if (back.to_string() != text) return fail("term round trip: " + text);
    if (back.evaluate() != e.fn) return fail("replay differs: " + text);
    return pass();
  };
}

PerInstance group_local_forms(const SuiteConfig& cfg) {
  return [cfg](Rng& rng, std::uint64_t) {
    const auto& sample = group_sample(cfg.depth, cfg.seed);
    const PwlFn& f = sample[rng.below(sample.size())].fn;
    const PwlFn& g = sample[rng.below(sample.size())].fn;
    const LocalForm a = local_form_at_zero(f), b = local_form_at_zero(g);
    const LocalForm s = local_form_at_zero(f + g);
    if (s.lambda != a.lambda + b.lambda || s.mu != a.mu + b.mu) {
      return fail(f.to_string() + " " + g.to_string());
    }
    return pass();
  };
}

// ----------------------------------------------------------------- monoid

Outcome monoid_cancellation(Rng& rng, std::uint64_t) {
  const MElem x = random_m(rng);
  const MElem y = rng.coin() ? x : random_m(rng);
  const MElem z = random_m(rng);
  const bool sums_equal = (x + z) == (y + z);
  if (sums_equal != (x == y)) {
    return fail(x.fn().to_string() + " " + y.fn().to_string() + " " + z.fn().to_string());
  }
  return pass(sums_equal ? "equal" : "");
}

Outcome monoid_antisymmetry(Rng& rng, std::uint64_t) {
  const MElem f = random_m(rng);
  const MElem g = rng.below(3) == 0 ? f : random_below(rng, f);
  const bool both = alg_leq(g, f).ok() && alg_leq(f, g).ok();
  if (both && !(f == g)) return fail(f.fn().to_string() + " " + g.fn().to_string());
  if (alg_leq(g, f).ok() != oracle_leq_M(g.fn(), f.fn())) {
    return fail("alg_leq disagrees with the breakpoint oracle: " + g.fn().to_string() + " " +
                f.fn().to_string());
  }
  return pass();
}

Outcome monoid_nf_minimality(Rng& rng, std::uint64_t) {
  MElem f = random_m(rng);
  if (rng.coin()) f = MElem::checked(Rat(1, 2) * meet(f.fn(), ramp_down(rng.unit())));
  const MElem g = rng.below(4) == 0 ? random_m(rng) : random_nf(rng, f);
  const IdealCtx ctx(f);
  const Verdict<Int> v = in_Nf(g, ctx);
  const std::string ctxt = " g=" + g.fn().to_string() + " f=" + f.fn().to_string();
  if (!v) {
    const Rat& w = v.rejection().witness;
    if (g.fn().eval(w) > 0 && f.fn().eval(w) == 0) return pass("rejected at " + to_string(w));
    return fail("bad rejection witness " + to_string(w) + ctxt);
  }
  const Rat n(v.value());
  if (!oracle_leq_M(g.fn(), n * f.fn())) return fail("g <=_M n f fails for n=" + to_string(n) + ctxt);
  if (n > 1 && oracle_leq_M(g.fn(), (n - 1) * f.fn())) {
    return fail("n=" + to_string(n) + " is not least" + ctxt);
  }
  return pass("n=" + to_string(n));
}

Outcome monoid_closure(Rng& rng, std::uint64_t) {
  const MElem x = random_m(rng), y = random_m(rng);
  const Rat q = rng.rat(1, 4);
  Laws laws;
  laws.require(in_M(x.fn() + y.fn()).ok(), "sum in M");
  laws.require(in_M(q * x.fn()).ok(), "positive multiple in M");
  laws.require(in_M(meet(x.fn(), y.fn())).ok() && in_M(join(x.fn(), y.fn())).ok(), "lattice closure");
  laws.require(alg_leq(x, x + y).ok(), "x <=_M x + y");
  laws.require(RSet::interval(Rat(0), *x.eps(), false, true).subset_of(cozero(x.fn())),
               "positivity radius certificate");
  return laws.outcome(x.fn().to_string() + " " + y.fn().to_string());
}

// ------------------------------------------------------------------ riesz

Outcome riesz_decompose_check(Rng& rng, std::uint64_t) {
  const RieszInstance in = random_riesz(rng);
  const std::string ctxt = "x=" + in.x.fn().to_string() + " y1=" + in.y1.fn().to_string() +
                           " y2=" + in.y2.fn().to_string();
  const auto [x1, x2] = riesz_decompose(in.x, in.y1, in.y2);
  if (x1.fn() + x2.fn() != in.x.fn()) return fail("x1 + x2 != x " + ctxt);
  if (!oracle_leq_M(x1.fn(), in.y1.fn())) return fail("x1 <=_M y1 fails " + ctxt);
  if (!oracle_leq_M(x2.fn(), in.y2.fn())) return fail("x2 <=_M y2 fails " + ctxt);
  return pass();
}

Outcome riesz_rejects(Rng& rng, std::uint64_t) {
  const MElem y1 = random_m(rng), y2 = random_m(rng);
  // A bump above y1 + y2 somewhere in (0,1).
  const Rat c = rng.unit();
  const Rat w = min_of(c, 1 - c) / 2;
  const PwlFn bump = PwlFn::from_points({{Rat(0), Rat(0)}, {c - w, Rat(0)}, {c, Rat(1)},
                                         {c + w, Rat(0)}, {Rat(1), Rat(0)}});
  const MElem x = MElem::checked(y1.fn() + y2.fn() + bump);
  try {
    riesz_decompose(x, y1, y2);
  } catch (const PreconditionError&) {
    return pass();
  }
  return fail("accepted x above y1 + y2 at " + to_string(c));
}

Outcome riesz_prime_witness(Rng& rng, std::uint64_t) {
  MElem f = random_m(rng), g = random_m(rng);
  if (rng.coin()) f = MElem::checked(meet(f.fn(), ramp_down(rng.unit())));
  const MElem w = prime_witness(f, g);
  if (w.is_zero()) return fail("zero witness");
  if (!in_Nf(w, IdealCtx(f)) || !in_Nf(w, IdealCtx(g))) {
    return fail("witness outside an ideal: " + w.fn().to_string());
  }
  return pass();
}

// -------------------------------------------------------------- intervals

struct IntervalsInstance {
  MElem f;
  IdealCtx ctx;
  PwlFn h;
};

IntervalsInstance intervals_instance(Rng& rng) {
  const MElem f = random_m(rng, true);
  return {f, IdealCtx(f), random_m(rng).fn()};
}

std::string describe(const IntervalsInstance& in) {
  return "f=" + in.f.fn().to_string() + " h=" + in.h.to_string();
}

// Nonzero element of I_f(h): half of the meet of an N_f element with h.
MElem member_of(Rng& rng, const IntervalsInstance& in) {
  return Rat(1, 2) * meet(random_nf(rng, in.f), MElem::checked(in.h));
}

Outcome intervals_agreement(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  MElem g = random_nf(rng, in.f);
  switch (rng.below(3)) {
    case 0:
      g = meet(g, MElem::checked(rng.rat(1, 2) * in.h));
      break;
    case 1:
      g = meet(g, MElem::checked(in.h));
      break;
    default:
      break;
  }
  const IfhVerdict v = in_Ifh(g, in.ctx, SupFn(in.h));
  const bool oracle = oracle_ifh(g, in.ctx, in.h);
  if (v.member != oracle) {
    return fail("member=" + std::to_string(v.member) + " oracle=" + std::to_string(oracle) +
                " g=" + g.fn().to_string() + " " + describe(in));
  }
  return pass(v.member ? "member" : "non-member");
}

Outcome intervals_hereditary(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const MElem g = member_of(rng, in);
  const MElem below = Rat(1, 2) * meet(g, random_m(rng));
  if (!alg_leq(below, g)) return fail("generator produced g' not below g");
  if (!in_Ifh(g, in.ctx, SupFn(in.h)).member) return fail("g not in I_f(h) " + describe(in));
  if (!in_Ifh(below, in.ctx, SupFn(in.h)).member) {
    return fail("g'=" + below.fn().to_string() + " dropped out " + describe(in));
  }
  return pass();
}

Outcome intervals_upward(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const MElem g1 = member_of(rng, in), g2 = member_of(rng, in);
  const MElem up = upward_direct(g1, g2, in.ctx, SupFn(in.h));
  Laws laws;
  laws.require(oracle_ifh(up, in.ctx, in.h), "g'' in I_f(h)");
  laws.require(oracle_leq_M(g1.fn(), up.fn()), "g1 <=_M g''");
  laws.require(oracle_leq_M(g2.fn(), up.fn()), "g2 <=_M g''");
  return laws.outcome("g1=" + g1.fn().to_string() + " g2=" + g2.fn().to_string() + " " +
                      describe(in));
}

Outcome intervals_approx(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const RSet k = random_compact_in(rng, in.ctx.cozero());
  const auto propC = has_property_C(in.ctx, SupFn(in.h));
  if (!propC) return fail("no property (C) witness " + describe(in));
  const std::optional<MElem> v =
      rng.coin() ? std::optional<MElem>(member_of(rng, in)) : std::nullopt;
  const MElem z = approx_on_compact(in.ctx, SupFn(in.h), propC.value(), k, v);
  const std::string ctxt = "K=" + k.to_string() + " z=" + z.fn().to_string() + " " + describe(in);
  std::vector<Rat> ts = k.endpoints();
  for (const Rat& x : all_breaks({&z.fn(), &in.h})) {
    if (k.contains(x)) ts.push_back(x);
  }
  for (const Rat& t : ts) {
    if (z.fn().eval(t) != in.h.eval(t)) return fail("z != h at " + to_string(t) + " " + ctxt);
  }
  if (!oracle_ifh(z, in.ctx, in.h)) return fail("z not in I_f(h) " + ctxt);
  if (v && !oracle_leq_M(v->fn(), z.fn())) return fail("v <=_M z fails " + ctxt);
  return pass();
}

// A point of U_f where h > 0, when one is found.
std::optional<Rat> positive_point(Rng& rng, const IdealCtx& ctx, const PwlFn& h) {
  for (int i = 0; i < 16; ++i) {
    const Rat t = random_point_in(rng, ctx.cozero());
    if (t > 0 && h.eval(t) > 0) return t;
  }
  return std::nullopt;
}

Outcome intervals_realize(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const auto t = positive_point(rng, in.ctx, in.h);
  if (!t) return pass("skipped: h vanishes at every sampled point");
  const Rat eps = rng.unit() / rng.range(1, 64);
  const MElem g = realize_sup(in.ctx, SupFn(in.h), *t, eps);
  const std::string ctxt = "t=" + to_string(*t) + " eps=" + to_string(eps) + " " + describe(in);
  if (!(g.fn().eval(*t) > in.h.eval(*t) - eps)) return fail("g(t) too small " + ctxt);
  if (!oracle_ifh(g, in.ctx, in.h)) return fail("g not in I_f(h) " + ctxt);
  return pass();
}

Outcome intervals_sup_additivity(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const PwlFn h2 = random_m(rng).fn();
  const auto t = positive_point(rng, in.ctx, meet(in.h, h2));
  if (!t) return pass("skipped: no common positive point");
  const Rat eps = rng.unit();
  const MElem g1 = realize_sup(in.ctx, SupFn(in.h), *t, eps / 2);
  const MElem g2 = realize_sup(in.ctx, SupFn(h2), *t, eps / 2);
  const std::string ctxt = "t=" + to_string(*t) + " h2=" + h2.to_string() + " " + describe(in);
  if (!oracle_ifh(g1, in.ctx, in.h) || !oracle_ifh(g2, in.ctx, h2)) return fail("membership " + ctxt);
  if (!((g1.fn() + g2.fn()).eval(*t) > (in.h + h2).eval(*t) - eps)) return fail("sum too small " + ctxt);
  return pass();
}

Outcome intervals_propC(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const auto w = has_property_C(in.ctx, SupFn(in.h));
  if (!w) return fail("no witness " + describe(in));
  for (int i = 0; i < 4; ++i) {
    const Rat t = random_point_in(rng, in.ctx.cozero());
    const std::string err = check_propC(in.ctx, SupFn(in.h), t, w.value().at(t));
    if (!err.empty()) return fail("t=" + to_string(t) + ": " + err + " " + describe(in));
  }
  return pass();
}

Outcome intervals_complement_split(Rng& rng, std::uint64_t) {
  const IntervalsInstance in = intervals_instance(rng);
  const long n = static_cast<long>(ceil_of(in.h.max_value()).get_si()) + 1;
  const Rat eps(1, 2);
  const MElem g = meet(random_nf(rng, in.f), MElem::checked(PwlFn::constant(Rat(n) - Rat(1, 4))));
  const auto w = has_property_C(in.ctx, SupFn(in.h));
  if (!w) return fail("no witness " + describe(in));
  const SplitResult s = complement_split(in.ctx, SupFn(in.h), w.value(), n, eps, g);
  const std::string ctxt = "n=" + std::to_string(n) + " g=" + g.fn().to_string() + " " + describe(in);
  if (s.g1.fn() + s.g2.fn() != g.fn()) return fail("recombination " + ctxt);
  if (!oracle_ifh(s.g1, in.ctx, in.h)) return fail("g1 not in I_f(h) " + ctxt);
  const PwlFn rest = PwlFn::constant(Rat(n)) - in.h;
  if (!oracle_ifh(s.g2, in.ctx, rest)) return fail("g2 not in I_f(n - h) " + ctxt);
  if (!s.recombines || !s.g1_in_I || !s.g2_in_I) return fail("split report flags " + s.to_json());
  return pass();
}

// ----------------------------------------------------------- localization

LocalClass random_class(Rng& rng) {
  const MElem f = random_m(rng, true);
  const Rat q = rng.coin() ? Rat(1) : rng.unit();
  return make_class(IdealCtx(f), SupFn(q * random_m(rng).fn()));
}

// Same sup function over a smaller base inside the old one.
LocalClass restricted(Rng& rng, const LocalClass& c) {
  const MElem& f = c.rep.ctx.f();
  const Rat edge = *f.eps() * rng.unit();
  const MElem smaller = MElem::checked(Rat(1, 2) * meet(f.fn(), ramp_down(edge)));
  return make_class(IdealCtx(smaller), c.rep.h);
}

Outcome localization_min_ideal(Rng& rng, std::uint64_t) {
  const LocalClass c = random_class(rng);
  const MinIdealReport r = minimal_ideal_dominates(c);
  const std::string ctxt = c.to_json() + " " + r.to_json();
  if (!r.verified()) return fail("unverified " + ctxt);
  const auto germ = oracle_germ(c.rep.h.base());
  const Rat mu = germ.first > 0 ? Rat(1) : germ.second;
  if (r.mu != mu) return fail("slope " + to_string(r.mu) + " expected " + to_string(mu) + " " + ctxt);
  // Least n with f0 < n g strictly on U_{f'}, searched directly.
  const RSet s = cozero(r.f_prime.fn());
  const long top = static_cast<long>(ceil_of(1 / mu).get_si()) + 2;
  std::optional<long> least;
  for (long n = 1; n <= top && !least; ++n) {
    if (compare(PwlFn::identity(), Rat(n) * r.g.fn(), s).strict) least = n;
  }
  if (!least || Int(*least) != r.n) {
    return fail("brute force found " + (least ? std::to_string(*least) : std::string("none")) + " " + ctxt);
  }
  return pass("n=" + std::to_string(*least));
}

Outcome localization_equivalence(Rng& rng, std::uint64_t) {
  const LocalClass a = random_class(rng);
  const LocalClass b = rng.coin() ? restricted(rng, a) : random_class(rng);
  const LocalClass c = restricted(rng, b);
  Laws laws;
  laws.require(equivalent(a, a), "reflexive");
  laws.require(equivalent(a, b) == equivalent(b, a), "symmetric");
  if (equivalent(a, b) && equivalent(b, c)) laws.require(equivalent(a, c), "transitive");
  return laws.outcome(a.to_json() + " " + b.to_json() + " " + c.to_json());
}

Outcome localization_restriction(Rng& rng, std::uint64_t) {
  const LocalClass a = random_class(rng);
  const LocalClass b = restricted(rng, a);
  if (!equivalent(a, b)) return fail(a.to_json() + " " + b.to_json());
  return pass();
}

Outcome localization_addition(Rng& rng, std::uint64_t) {
  const LocalClass a = random_class(rng), b = random_class(rng), c = random_class(rng);
  Laws laws;
  laws.require(equivalent(add_classes(a, b), add_classes(b, a)), "commutative");
  laws.require(equivalent(add_classes(add_classes(a, b), c), add_classes(a, add_classes(b, c))),
               "associative");
  laws.require(equivalent(add_classes(a, zero_class()), a), "zero is neutral");
  return laws.outcome(a.to_json() + " " + b.to_json() + " " + c.to_json());
}

// Records whether a + c ~ b + c forces a ~ b; only the converse (sums of
// equivalent classes stay equivalent) is required.
Outcome localization_cancellation(Rng& rng, std::uint64_t) {
  const LocalClass a = random_class(rng), c = random_class(rng);
  const LocalClass b = rng.coin() ? restricted(rng, a) : random_class(rng);
  const bool base = equivalent(a, b);
  const bool sums = equivalent(add_classes(a, c), add_classes(b, c));
  if (base && !sums) return fail("sum not well defined " + a.to_json() + " " + b.to_json());
  return pass(sums == base ? "cancels" : "does not cancel");
}

std::vector<Outcome> localization_fundamental(const SuiteConfig& cfg) {
  const int k = std::max(cfg.depth, 3);
  const FundamentalSeq seq = fundamental_sequence(k);
  std::vector<Outcome> out;
  for (int n = 1; n <= k; ++n) {
    const MElem& cur = seq.elems[static_cast<std::size_t>(n)];
    const MElem& prev = seq.elems[static_cast<std::size_t>(n) - 1];
    const RSet u = cozero(cur.fn());
    const bool ok = oracle_leq_M(cur.fn(), prev.fn()) && u == RSet::open(Rat(0), ratio(1, n + 1)) &&
                    u.subset_of(cozero(prev.fn())) && u != cozero(prev.fn());
    out.push_back(ok ? pass() : fail("f_" + std::to_string(n) + "=" + cur.fn().to_string()));
  }
  return out;
}

// ---------------------------------------------------------------- monster

struct MonsterFixture {
  MonsterBuild build;
  IdealCtx ctx;
  IntervalRep rep;
};

const MonsterFixture& monster_fixture() {
  static const MonsterFixture fx = [] {
    MonsterBuild mb = default_monster();
    IdealCtx ctx(mb.f_prime);
    IntervalRep rep = make_interval(ctx, SupFn(mb.g), monster_local_pieces(mb.g, mb.f_prime));
    return MonsterFixture{mb, ctx, rep};
  }();
  return fx;
}

// Random point of (0, rho), drawn more densely near rho.
Rat monster_point(Rng& rng, const Rat& rho) {
  if (rng.coin()) return rho * rng.unit();
  const long k = rng.range(1, 12);
  return rho - rho * pow2(-k) * rng.unit();
}

std::vector<Outcome> monster_certificates(const SuiteConfig&) {
  const MonsterFixture& fx = monster_fixture();
  const MonsterBuild& mb = fx.build;
  std::vector<Outcome> out;
  const Oscillation osc = oscillation(mb.g, mb.g.rho());
  const bool exact = osc.liminf == 0 && osc.limsup == Rat(1, 16) && !osc.extendable();
  out.push_back(exact ? pass("(0, 1/16)")
                      : fail("(" + to_string(osc.liminf) + ", " + to_string(osc.limsup) + ")"));
  const bool dom = dominated(mb.g, MElem::checked(Rat(1, 2) * PwlFn::identity()));
  out.push_back(dom ? pass("g < f0/2") : fail("g < f0/2 fails"));
  out.push_back(mb.windows_ok && mb.words_checked == 4 ? pass("4 lattice words")
                                                       : fail("lattice words disagree with g"));
  out.push_back(cozero(mb.f_prime.fn()) == RSet::open(Rat(0), mb.g.rho()) ? pass()
                                                                          : fail("cozero(f')"));
  bool collapsed_rejected = false;
  try {
    const RSet k = RSet::closed(Rat(0), Rat(1, 2));
    ideal_split(MElem::checked(PwlFn::identity()), f0m(), mb.f_prime, k, k, k);
  } catch (const PreconditionError&) {
    collapsed_rejected = true;
  }
  out.push_back(collapsed_rejected ? pass("K1 = K = K2 rejected") : fail("collapsed nesting accepted"));
  return out;
}

Outcome monster_propC(Rng& rng, std::uint64_t) {
  const MonsterFixture& fx = monster_fixture();
  const Rat t = monster_point(rng, fx.build.g.rho());
  const std::string err = check_propC(fx.ctx, fx.rep.h, t, fx.rep.propC->at(t));
  return err.empty() ? pass() : fail("t=" + to_string(t) + ": " + err);
}

Outcome monster_local_coherence(Rng& rng, std::uint64_t) {
  const MonsterFixture& fx = monster_fixture();
  const Rat t = monster_point(rng, fx.build.g.rho());
  const LocalWitness w = locally_in_M_witness(fx.build.g, fx.build.f_prime, t);
  if (!(w.lo < t && t < w.hi)) return fail("window misses t=" + to_string(t));
  // Exact agreement on the window, checked at every breakpoint inside it.
  const PwlFn trunc = fx.build.g.truncation(w.lo, w.hi);
  std::vector<Rat> ts{w.lo, w.hi, t};
  for (const Rat& x : all_breaks({&w.z.fn(), &trunc})) {
    if (w.lo <= x && x <= w.hi) ts.push_back(x);
  }
  for (const Rat& x : ts) {
    if (w.z.fn().eval(x) != fx.build.g.eval(x)) {
      return fail("t=" + to_string(t) + " differs at " + to_string(x));
    }
  }
  return pass("radius " + to_string((w.hi - w.lo) / 2));
}

Outcome monster_interval_sum(Rng& rng, std::uint64_t) {
  const MonsterFixture& fx = monster_fixture();
  const MonsterBuild& mb = fx.build;
  MElem z;
  switch (rng.below(4)) {
    case 0:
      break;
    case 1:
      z = *fx.rep.lf_witness;
      break;
    default: {
      const MElem cand = meet(random_m(rng, true), rng.rat(1, 4) * mb.f_prime);
      z = alg_leq(cand, mb.h) ? cand : Rat(1, 2) * meet(cand, mb.h);
    }
  }
  const SumCheckRow row = interval_sum_check(mb, {z}).front();
  if (!row.passed) return fail(row.detail + " z=" + z.fn().to_string());
  return pass("beta=" + to_string(row.beta));
}

Outcome monster_truncation(Rng& rng, std::uint64_t) {
  const MonsterFixture& fx = monster_fixture();
  const TailFn& g = fx.build.g;
  const long m = rng.range(1, 10);
  const Rat end = g.mu_seq(m);
  const PwlFn trunc = g.truncation(Rat(0), end);
  // A PwlFn is continuous; what has to hold is agreement with g at every
  // breakpoint and midpoint up to mu_m, and with the lattice word.
  const auto& pts = trunc.points();
  for (std::size_t i = 0; i + 1 < pts.size() && pts[i].x < end; ++i) {
    for (const Rat& x : {pts[i].x, Rat((pts[i].x + pts[i + 1].x) / 2)}) {
      if (x <= end && trunc.eval(x) != g.eval(x)) return fail("m=" + std::to_string(m) + " at " + to_string(x));
    }
  }
  if (!agree_on(trunc, lattice_word(g, static_cast<int>(m)), RSet::closed(Rat(0), end))) {
    return fail("lattice word m=" + std::to_string(m));
  }
  return pass();
}

Outcome monster_ideal_split(Rng& rng, std::uint64_t) {
  const MonsterFixture& fx = monster_fixture();
  const Rat rho = fx.build.g.rho();
  const MElem g = random_m(rng, true);
  const Rat a = rho * rng.unit();
  const Rat b = rho + (1 - rho) * rng.unit() / 2;
  const Rat c = b + (1 - b) * rng.unit();
  const RSet k1 = RSet::closed(Rat(0), a), k = RSet::closed(Rat(0), b), k2 = RSet::closed(Rat(0), c);
  const IdealSplit s = ideal_split(g, f0m(), fx.build.f_prime, k1, k, k2);
  const std::string ctxt = "g=" + g.fn().to_string() + " K1=" + k1.to_string() + " K=" + k.to_string() +
                           " K2=" + k2.to_string();
  Laws laws;
  laws.require(s.g1.fn() + s.g2.fn() == g.fn(), "recombination");
  laws.require(s.g2_prime.fn() + s.remainder == s.g2.fn(), "refinement");
  laws.require(support(s.g2.fn()).subset_of(k1.unite(s.k_prime)), "supp g2 in K1 u K'");
  laws.require(s.k_prime.intersect(k).is_empty() && s.k_prime.is_closed(), "K' closed and off K");
  laws.require(in_Nf(s.g1, IdealCtx(f0m())).ok(), "g1 in N_f");
  laws.require(in_Nf(s.g2_prime, IdealCtx(fx.build.f_prime)).ok(), "g2' in N_f'");
  laws.require(agree_on(s.remainder, PwlFn(), k), "remainder vanishes on K");
  laws.require(s.verified(), "report flags");
  return laws.outcome(ctxt);
}

std::vector<Outcome> monster_tower_check(const SuiteConfig& cfg) {
  const FundamentalSeq seq = fundamental_sequence(cfg.depth + 1);
  const std::vector<TowerStage> stages = monster_tower(cfg.depth, seq);
  std::vector<Outcome> out;
  const MonsterFixture& fx = monster_fixture();
  for (const TowerStage& st : stages) {
    bool ok = st.verified() && oracle_leq_M(st.f_prime.fn(), seq.elems[static_cast<std::size_t>(st.n)].fn());
    if (st.n == 1) ok = ok && st.g == fx.build.g;
    out.push_back(ok ? pass("gap " + to_string(st.gap)) : fail(st.to_json()));
  }
  if (static_cast<int>(stages.size()) != cfg.depth) out.push_back(fail("wrong number of stages"));
  return out;
}

// --------------------------------------------------------------- registry

std::vector<Check> checks_of(const std::string& suite, const SuiteConfig& cfg) {
  if (suite == "lattice") {
    return {{"group_laws", lattice_group_laws, {}},       {"module_laws", lattice_module_laws, {}},
            {"lattice_laws", lattice_lattice_laws, {}},   {"meet_eval", lattice_meet_eval, {}},
            {"cozero_sampling", lattice_cozero, {}},      {"canonical_form", lattice_canonical, {}}};
  }
  if (suite == "group") {
    return {{"properties", {}, group_properties},
            {"derivation_replay", group_replay(cfg), {}},
            {"local_form_additivity", group_local_forms(cfg), {}}};
  }
  if (suite == "monoid") {
    return {{"cancellation", monoid_cancellation, {}},
            {"antisymmetry", monoid_antisymmetry, {}},
            {"nf_minimality", monoid_nf_minimality, {}},
            {"closure", monoid_closure, {}}};
  }
  if (suite == "riesz") {
    return {{"decompose", riesz_decompose_check, {}},
            {"rejects_unsatisfiable", riesz_rejects, {}},
            {"prime_witness", riesz_prime_witness, {}}};
  }
  if (suite == "intervals") {
    return {{"ifh_agreement", intervals_agreement, {}},
            {"hereditary", intervals_hereditary, {}},
            {"upward_direct", intervals_upward, {}},
            {"approx_on_compact", intervals_approx, {}},
            {"realize_sup", intervals_realize, {}},
            {"sup_additivity", intervals_sup_additivity, {}},
            {"property_c", intervals_propC, {}},
            {"complement_split", intervals_complement_split, {}}};
  }
  if (suite == "localization") {
    return {{"min_ideal", localization_min_ideal, {}},
            {"equivalence", localization_equivalence, {}},
            {"restriction", localization_restriction, {}},
            {"addition", localization_addition, {}},
            {"cancellation_recorded", localization_cancellation, {}},
            {"fundamental_sequence", {}, localization_fundamental}};
  }
  if (suite == "monster") {
    return {{"certificates", {}, monster_certificates},
            {"property_c", monster_propC, {}},
            {"local_coherence", monster_local_coherence, {}},
            {"interval_sum", monster_interval_sum, {}},
            {"truncation", monster_truncation, {}},
            {"ideal_split", monster_ideal_split, {}},
            {"tower", {}, monster_tower_check}};
  }
  throw ConfigError("unknown suite '" + suite + "'");
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lattice",   "group",        "monoid", "riesz",
                                              "intervals", "localization", "monster"};
  return names;
}

std::vector<std::string> check_names(const std::string& suite) {
  std::vector<std::string> out;
  for (const Check& c : checks_of(suite, SuiteConfig{})) out.push_back(c.name);
  return out;
}

void validate(const SuiteConfig& cfg) {
  if (cfg.count < 1) throw ConfigError("count must be at least 1");
  if (cfg.depth < 1) throw ConfigError("depth must be at least 1");
}

Report run_check(const std::string& suite, const std::string& check, const SuiteConfig& cfg) {
  validate(cfg);
  const std::vector<Check> checks = checks_of(suite, cfg);
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == check; });
  if (it == checks.end()) throw ConfigError("unknown check '" + check + "' in suite '" + suite + "'");

  std::vector<Outcome> outcomes;
  if (it->whole) {
    try {
      outcomes = it->whole(cfg);
    } catch (const std::exception& e) {
      outcomes = {fail(std::string("exception: ") + e.what())};
    }
  } else {
    outcomes.resize(static_cast<std::size_t>(cfg.count));
    const std::string stream = suite + "." + check;
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t i) {
      Rng rng = Rng::derive(cfg.seed, stream, i);
      outcomes[i] = guarded([&] { return it->per(rng, i); });
    });
  }
  Report rep;
  rep.rows.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rep.rows.push_back({suite, check, i, outcomes[i].passed, outcomes[i].witness});
  }
  return rep;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  validate(cfg);
  Report rep;
  if (name == "all") {
    for (const std::string& s : suite_names()) rep.append(run_suite(s, cfg));
    return rep;
  }
  for (const std::string& c : check_names(name)) rep.append(run_check(name, c, cfg));
  return rep;
}

}  // namespace locmult
