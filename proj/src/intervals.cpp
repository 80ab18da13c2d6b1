#include "locmult/intervals.hpp"

#include "json.hpp"
#include "locmult/error.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

namespace {

// Half the distance from t to the boundary of its component in `allowed`,
// never more than t/2. A component end at 0 or 1 that is closed does not
// count as boundary.
Rat room_radius(const Rat& t, const RSet& allowed) {
  const std::optional<Interval> comp = allowed.component_of(t);
  if (!comp) throw PreconditionError("point " + to_string(t) + " outside the admissible region");
  Rat room = t;
  if (!(comp->lo == 0 && comp->lo_closed)) room = min_of(room, t - comp->lo);
  if (!(comp->hi == 1 && comp->hi_closed)) room = min_of(room, comp->hi - t);
  if (room <= 0) throw PreconditionError("point " + to_string(t) + " has no room in its region");
  return room / 2;
}

struct Localized {
  RSet k;
  RSet v;
  RSet plateau;
};

// K = [t - d/2, t + d/2] inside V = (t - d, t + d), both clipped to [0,1].
Localized localize(const Rat& t, const Rat& d) {
  Localized out;
  out.k = RSet::closed(t - d / 2, min_of(t + d / 2, Rat(1)));
  out.v = RSet::interval(t - d, min_of(t + d, Rat(1)), false, t + d >= 1);
  out.plateau = urysohn_plateau(out.k, out.v);
  return out;
}

// Urysohn cut: `height` on [0, c/2], zero from c on.
PwlFn cut_near_zero(const Rat& c, const Rat& height) {
  return urysohn(RSet::closed(Rat(0), c / 2), RSet::interval(Rat(0), c, true, false), height);
}

Rat at_least_one(const Rat& x) { return max_of(x, Rat(1)); }

Rat hat_width(const PwlFn& s) { return s.points()[2].x; }

RSet punctured(const Rat& r) { return RSet::open(Rat(0), min_of(r, Rat(1))); }

}  // namespace

RSet PropCValue::window() const { return RSet::interval(lo, hi, false, hi == 1); }

std::string check_propC(const IdealCtx& ctx, const SupFn& h, const Rat& t, const PropCValue& v) {
  if (!v.window().contains(t)) return "window does not contain t";
  if (!in_Nf(v.z, ctx)) return "z_t is not in N_f";
  const Comparison below = compare(v.z.fn(), h, ctx.cozero());
  if (!below.leq) return "z_t exceeds h at " + to_string(*below.leq_witness);
  if (!agree_on(SupFn(v.z.fn()), h, v.window())) return "z_t differs from h on its window";
  if (v.zero_radius <= 0) return "empty punctured neighbourhood of 0";
  const Comparison near0 = compare(v.z.fn(), h, punctured(v.zero_radius));
  if (!near0.strict) return "z_t touches h near 0 at " + to_string(*near0.strict_witness);
  return {};
}

Verdict<MElem> in_Lf(const SupFn& h, const IdealCtx& ctx) {
  const MElem& f = ctx.f();
  const std::optional<LocalForm> germ = h.germ_at_zero();
  if (!germ) {
    return Rejection{Rat(0), "h has no linear germ at 0: it falls below every line s*t, s > 0"};
  }
  const Comparison below_h = compare(f.fn(), h, ctx.cozero());
  if (below_h.leq) return f;
  const int sign = germ_sign(germ->lambda, germ->mu);
  if (sign < 0) return Rejection{germ->eps / 2, "h is negative near 0"};
  if (sign == 0) return Rejection{germ->eps / 2, "h vanishes near 0 while N_f* elements do not"};
  Rat delta = min_of(germ->eps, *f.eps());
  if (germ->lambda + germ->mu * delta <= 0) delta /= 2;
  const PwlFn z0 = meet(f.fn(), cut_near_zero(delta, at_least_one(f.fn().max_value())));
  Rat kappa(1);
  for (const Point& p : z0.points()) {
    if (p.x <= delta && p.y > 0) {
      const Rat hv = germ->lambda + germ->mu * p.x;
      kappa = min_of(kappa, hv / p.y);
    }
  }
  const Verdict<MElem> z = in_M(kappa * z0);
  if (!z || z.value().is_zero() || !in_Nf(z.value(), ctx) ||
      !compare(z.value().fn(), h, ctx.cozero()).leq) {
    throw InvariantError("in_Lf: scaled cut of f is not below h");
  }
  return z.value();
}

Verdict<PropCWitness> has_property_C(const IdealCtx& ctx, const SupFn& h, const LocalPieceFn& local) {
  if (h.is_zero()) return Rejection{Rat(0), "h is zero"};
  const Comparison nonneg = nonneg_report(h, ctx.cozero());
  if (!nonneg.leq) return Rejection{*nonneg.leq_witness, "h is negative on U_f"};
  const Verdict<MElem> lf = in_Lf(h, ctx);
  if (!lf) return lf.rejection();
  const MElem z = lf.value();
  LocalPieceFn piece = local ? local : LocalPieceFn([h](const Rat& t) { return h.local_piece(t); });
  return PropCWitness([ctx, z, piece](const Rat& t) {
    if (t <= 0 || !ctx.cozero().contains(t)) {
      throw PreconditionError("property (C) queried outside U_f \\ {0}");
    }
    const LocalPiece p = piece(t);
    const RSet allowed = ctx.cozero().intersect(RSet::closed(p.lo, p.hi));
    const Rat d = room_radius(t, allowed);
    const Localized loc = localize(t, d);
    const PwlFn pp = join(p.fn, PwlFn());
    const PwlFn r = urysohn(loc.k, loc.v, at_least_one(pp.max_value()));
    const Rat c = (t - d) / 2;
    const PwlFn r0 = cut_near_zero(c, at_least_one(z.fn().max_value()));
    const PwlFn zt = Rat(1, 2) * meet(z.fn(), r0) + meet(pp, r);
    const Interval& w = loc.plateau.intervals().front();
    return PropCValue{MElem::checked(zt), w.lo, w.hi, min_of(c / 2, *z.eps())};
  });
}

IntervalRep make_interval(const IdealCtx& ctx, const SupFn& h, const LocalPieceFn& local) {
  if (h.is_zero()) return IntervalRep{ctx, h, std::nullopt, std::nullopt};
  const Verdict<MElem> lf = in_Lf(h, ctx);
  if (!lf) throw PreconditionError("h is not in L_f: " + lf.rejection().reason);
  const Verdict<PropCWitness> c = has_property_C(ctx, h, local);
  if (!c) throw PreconditionError("h lacks property (C): " + c.rejection().reason);
  return IntervalRep{ctx, h, lf.value(), c.value()};
}

IfhVerdict in_Ifh(const MElem& g, const IdealCtx& ctx, const SupFn& h) {
  ctx.require_interval_base("in_Ifh");
  if (!in_Nf(g, ctx)) throw PreconditionError("in_Ifh: g is not in N_f");
  const Verdict<MElem> lf = in_Lf(h, ctx);
  if (!lf) throw PreconditionError("in_Ifh: h is not in L_f: " + lf.rejection().reason);
  const RSet& uf = ctx.cozero();
  IfhVerdict out;
  auto disagree = [](const char* what) {
    throw InvariantError(std::string("in_Ifh: characterizations disagree: ") + what);
  };

  if (g.is_zero()) {
    // 0 belongs by definition; the constructions below still certify it.
    const MElem z = Rat(1, 2) * lf.value();
    const Rat radius = *z.eps();
    const bool ok = !z.is_zero() && compare(z.fn(), h, uf).leq &&
                    compare(z.fn(), h, punctured(radius)).strict && in_Nf(z, ctx).ok();
    if (!ok) disagree("zero element");
    out.member = out.original = out.tilde = out.prime = true;
    out.z_original = out.g_tilde = out.z_prime = z;
    out.tilde_radius = radius;
    return out;
  }

  const Comparison le = compare(g.fn(), h, uf);
  if (!le.leq) {
    out.reason = "g exceeds h at t=" + to_string(*le.leq_witness);
    return out;
  }
  const LocalForm gg = local_form_at_zero(g.fn());
  const LocalForm gh = *h.germ_at_zero();
  const Rat dl = gh.lambda - gg.lambda, dm = gh.mu - gg.mu;
  if (germ_sign(dl, dm) <= 0) {
    // Any z with g <_M z has a strictly larger germ than g, and z <= h near
    // 0 caps that germ by h's: no room.
    out.reason = "no strict room between g and h near 0";
    return out;
  }
  const Rat reach = min_of(min_of(gg.eps, gh.eps), *ctx.f().eps());

  // Tilde form: g' = g + s with s <= (h - g)/2 near 0.
  const PwlFn s = sliver_below(dl, dm, reach);
  const Rat width = hat_width(s);
  const Verdict<MElem> gt = in_M(g.fn() + s);
  out.tilde = gt.ok() && in_Nf(gt.value(), ctx).ok() &&
              compare(g.fn(), SupFn(gt.value().fn()), punctured(width)).strict &&
              compare(gt.value().fn(), h, punctured(width)).strict;
  if (out.tilde) {
    out.g_tilde = gt.value();
    out.tilde_radius = width;
  }

  // Original form, from the tilde witness: z = (g' ^ r) v g.
  if (out.tilde) {
    const PwlFn r = cut_near_zero(width, at_least_one(gt.value().fn().max_value()));
    const Verdict<MElem> z = in_M(join(meet(gt.value().fn(), r), g.fn()));
    out.original = z.ok() && alg_less(g, z.value()) && in_Nf(z.value(), ctx).ok() &&
                   compare(z.value().fn(), h, uf).leq &&
                   compare(z.value().fn(), h, punctured(width / 2)).strict;
    if (out.original) out.z_original = z.value();
  }

  // Prime form: a thinner sliver on top of g.
  const Verdict<MElem> zp = in_M(g.fn() + sliver_below(dl, dm, reach / 2));
  out.prime = zp.ok() && alg_less(g, zp.value()) && in_Nf(zp.value(), ctx).ok() &&
              compare(zp.value().fn(), h, uf).leq;
  if (out.prime) out.z_prime = zp.value();

  if (!out.original || !out.tilde || !out.prime) disagree("constructions failed with room available");
  out.member = true;
  return out;
}

MElem upward_direct(const MElem& g1_in, const MElem& g2_in, const IdealCtx& ctx, const SupFn& h) {
  const IfhVerdict v1 = in_Ifh(g1_in, ctx, h), v2 = in_Ifh(g2_in, ctx, h);
  if (!v1.member || !v2.member) throw PreconditionError("upward_direct: inputs must lie in I_f(h)");
  const LocalForm l1 = local_form_at_zero(g1_in.fn()), l2 = local_form_at_zero(g2_in.fn());
  const bool swap = l2.mu > l1.mu;
  const MElem& g1 = swap ? g2_in : g1_in;
  const MElem& g2 = swap ? g1_in : g2_in;
  const MElem& gp = *(swap ? v2 : v1).z_original;
  // On [0, reach] both inputs are linear through 0 with g1 >= g2.
  const Rat reach = min_of(min_of(g1.fn().first_break(), g2.fn().first_break()), gp.fn().first_break());
  const PwlFn diff = gp.fn() - g1.fn();
  const PwlFn r = cut_near_zero(reach, at_least_one(diff.max_value()));
  const Verdict<MElem> out = in_M(Rat(1, 2) * meet(diff, r) + join(g1.fn(), g2.fn()));
  if (!out || !alg_leq(g1, out.value()) || !alg_leq(g2, out.value()) ||
      !in_Ifh(out.value(), ctx, h).member) {
    throw InvariantError("upward_direct: result fails its postconditions");
  }
  return out.value();
}

MElem approx_on_compact(const IdealCtx& ctx, const SupFn& h, const PropCWitness& propC,
                        const RSet& k, const std::optional<MElem>& v) {
  if (!k.is_closed()) throw PreconditionError("approx_on_compact: K must be compact");
  if (!k.subset_of(ctx.cozero())) throw PreconditionError("approx_on_compact: K is not inside U_f");
  if (v && !in_Ifh(*v, ctx, h).member) throw PreconditionError("approx_on_compact: v is not in I_f(h)");

  MElem z;
  if (k.is_empty()) {
    z = *in_Ifh(MElem(), ctx, h).z_original;
  } else {
    std::vector<PropCValue> cover;
    for (const Interval& comp : k.intervals()) {
      Rat t = comp.lo;
      for (int guard = 0;; ++guard) {
        if (guard > 100000) throw InvariantError("approx_on_compact: cover does not terminate");
        cover.push_back(propC.at(t));
        const PropCValue& last = cover.back();
        if (last.hi > comp.hi || last.hi == 1) break;
        t += 2 * (last.hi - t) / 3;
      }
    }
    PwlFn zp;
    RSet windows;
    Rat c = cover.front().zero_radius;
    for (const PropCValue& pv : cover) {
      zp = join(zp, pv.z.fn());
      windows = windows.unite(pv.window());
      c = min_of(c, min_of(pv.zero_radius, pv.lo));
    }
    const Rat height = at_least_one(zp.max_value());
    const PwlFn r = cut_near_zero(c, height);
    const PwlFn rk = urysohn(k, windows, height);
    z = MElem::checked(Rat(1, 2) * meet(zp, r) + meet(zp, rk));
  }
  if (!agree_on(SupFn(z.fn()), h, k) || !in_Ifh(z, ctx, h).member) {
    throw InvariantError("approx_on_compact: z fails its postconditions");
  }
  if (!v) return z;
  const MElem up = upward_direct(z, *v, ctx, h);
  if (!agree_on(SupFn(up.fn()), h, k) || !alg_leq(*v, up)) {
    throw InvariantError("approx_on_compact: augmented z fails its postconditions");
  }
  return up;
}

MElem realize_sup(const IdealCtx& ctx, const SupFn& h, const Rat& t, const Rat& eps) {
  if (eps <= 0) throw PreconditionError("realize_sup: eps must be positive");
  if (t <= 0 || !ctx.cozero().contains(t)) throw PreconditionError("realize_sup: t must lie in U_f");
  const Rat ht = h.eval(t);
  if (ht <= 0) throw PreconditionError("realize_sup: h(t) must be positive");
  const Verdict<MElem> lf = in_Lf(h, ctx);
  if (!lf) throw PreconditionError("realize_sup: h is not in L_f");
  const Rat rho = max_of(ht - eps / 2, ht / 2);
  const LocalPiece p = h.local_piece(t);
  const RSet allowed = ctx.cozero()
                           .intersect(RSet::closed(p.lo, p.hi))
                           .intersect(positive_set(p.fn - PwlFn::constant(rho)));
  const Rat d = room_radius(t, allowed);
  const Localized loc = localize(t, d);
  const PwlFn r = urysohn(loc.k, loc.v, rho);
  const MElem& z = lf.value();
  const PwlFn r0 = cut_near_zero((t - d) / 2, at_least_one(z.fn().max_value()));
  const MElem g = MElem::checked(join(Rat(1, 4) * meet(z.fn(), r0), r));
  if (!(g.fn().eval(t) > ht - eps) || !in_Ifh(g, ctx, h).member) {
    throw InvariantError("realize_sup: construction fails its postconditions");
  }
  return g;
}

std::string SplitResult::to_json() const {
  nlohmann::ordered_json j;
  j["op"] = "complement_split";
  j["recombines"] = recombines;
  j["g1_in_I"] = g1_in_I;
  j["g2_in_I"] = g2_in_I;
  return j.dump();
}

SplitResult complement_split(const IdealCtx& ctx, const SupFn& h, const PropCWitness& propC,
                             long n, const Rat& eps, const MElem& g) {
  ctx.require_interval_base("complement_split");
  if (n < 1) throw PreconditionError("complement_split: n must be at least 1");
  if (eps <= 0) throw PreconditionError("complement_split: eps must be positive");
  const SupFn nh = SupFn(PwlFn::constant(Rat(n))) - h;
  const Comparison gap = compare(PwlFn::constant(eps), nh, ctx.cozero());
  if (!gap.inf_gap || *gap.inf_gap <= 0) {
    throw PreconditionError("complement_split: n - h does not stay above eps on U_f");
  }
  if (!in_Nf(g, ctx) || !alg_leq(g, MElem::checked(PwlFn::constant(Rat(n))))) {
    throw PreconditionError("complement_split: g is not in n D_f");
  }
  if (g.is_zero()) return SplitResult{MElem(), MElem(), true, true, true};

  const Rat delta = eps / 3;
  const PwlFn& gf = g.fn();
  const RSet k1 = sublevel(gf, delta / 3);
  const RSet k2 = superlevel(gf, delta / 2);
  const RSet k3 = superlevel(gf, delta / 3);
  const PwlFn a = k2.is_empty() ? PwlFn() : urysohn(k2, k1.complement(), Rat(n) - delta / 2);
  const MElem gp = MElem::checked(meet(gf, PwlFn::constant(Rat(n)) - a));

  // v: a sliver under g near 0, supported away from K3.
  const Rat k3_start = k3.is_empty() ? Rat(1) : *k3.inf();
  const LocalForm lg = local_form_at_zero(gf);
  const MElem v = MElem::checked(sliver_below(lg.lambda, lg.mu, min_of(lg.eps, k3_start / 2)));

  const MElem gpp = MElem::checked(gf - gp.fn() + v.fn());
  const SupFn hp = nh - SupFn(gp.fn());
  const Verdict<PropCWitness> propC_hp = has_property_C(ctx, hp);
  if (!propC_hp) throw InvariantError("complement_split: n - h - g' lacks property (C)");

  const MElem z1 = approx_on_compact(ctx, h, propC, k3);
  const MElem z2 = approx_on_compact(ctx, hp, propC_hp.value(), k3, v);
  const auto [g1, g3] = riesz_decompose(gpp, z1, z2);
  const MElem g2 = MElem::checked(g3.fn() + gp.fn() - v.fn());

  SplitResult out{g1, g2, false, false, false};
  out.recombines = (g1.fn() + g2.fn()) == gf;
  out.g1_in_I = in_Ifh(g1, ctx, h).member;
  out.g2_in_I = in_Ifh(g2, ctx, nh).member;
  return out;
}

PropCWitness sub_has_C(const IdealCtx& ctx, const SupFn& g, const PropCWitness& propC_g,
                       const SupFn& h, const PropCWitness& propC_h) {
  if (g.is_zero()) return propC_h;
  const SupFn diff = h - g;
  if (!nonneg_report(diff, ctx.cozero()).leq) throw PreconditionError("sub_has_C: g exceeds h on U_f");
  const Verdict<MElem> lf = in_Lf(diff, ctx);
  if (!lf) throw PreconditionError("sub_has_C: h - g is not in L_f: " + lf.rejection().reason);
  const MElem v = Rat(1, 2) * lf.value();
  return PropCWitness([ctx, propC_g, propC_h, v](const Rat& t) {
    const PropCValue zg = propC_g.at(t), wh = propC_h.at(t);
    const Rat lo = max_of(zg.lo, wh.lo), hi = min_of(zg.hi, wh.hi);
    const Rat d = room_radius(t, RSet::interval(lo, hi, false, hi == 1));
    const Localized loc = localize(t, d);
    const PwlFn wz = wh.z.fn() - zg.z.fn();
    const PwlFn r = urysohn(loc.k, loc.v, at_least_one(wz.max_value()));
    const PwlFn dpart = join(PwlFn(), meet(wz, r));
    const MElem e = MElem::checked(join(dpart, v.fn()));
    const Interval& w = loc.plateau.intervals().front();
    return PropCValue{e, w.lo, w.hi, min_of(t - d, *v.eps())};
  });
}

std::string RestrictionReport::to_json() const {
  nlohmann::ordered_json j;
  j["op"] = "restrict_interval";
  j["lf_restricts"] = lf_restricts;
  j["points"] = points;
  j["attained"] = attained;
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const Rat& t : failures) fails.push_back(to_string(t));
  j["failures"] = fails;
  return j.dump();
}

RestrictionReport restrict_interval(const IdealCtx& sub, const IdealCtx& ctx, const SupFn& h,
                                    const Rat& eps, int per_component) {
  // The restriction only needs N_{f'} inside N_f, i.e. f' <=_M n f.
  if (!in_Nf(sub.f(), ctx)) throw PreconditionError("restrict_interval: f' is not in N_f");
  const Verdict<MElem> lf = in_Lf(h, ctx);
  if (!lf) throw PreconditionError("restrict_interval: h is not in L_f");
  RestrictionReport out{h, MElem(), false, 0, 0, {}};
  const Verdict<MElem> zr = in_M(meet(lf.value().fn(), sub.f().fn()));
  if (zr) {
    out.lf_witness = zr.value();
    out.lf_restricts = !zr.value().is_zero() && in_Nf(zr.value(), sub).ok() &&
                       compare(zr.value().fn(), h, sub.cozero()).leq;
  }
  for (const Interval& comp : sub.cozero().intervals()) {
    for (int j = 1; j <= per_component; ++j) {
      const Rat t = comp.lo + (comp.hi - comp.lo) * Rat(j) / Rat(per_component + 1);
      ++out.points;
      const Rat ht = h.eval(t);
      if (ht <= 0) {
        ++out.attained;  // 0 in I_{f'}(h) already attains it
        continue;
      }
      const MElem g = realize_sup(sub, h, t, eps);
      if (g.fn().eval(t) > ht - eps) {
        ++out.attained;
      } else {
        out.failures.push_back(t);
      }
    }
  }
  return out;
}

}  // namespace locmult
