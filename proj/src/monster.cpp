#include "locmult/monster.hpp"

#include <algorithm>

#include "json.hpp"
#include "locmult/error.hpp"
#include "locmult/supfn.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

namespace {

const MElem& f0_elem() {
  static const MElem f0 = MElem::checked(PwlFn::identity());
  return f0;
}

PwlFn ramp_down(const Rat& a) {
  if (a >= 1) return PwlFn::constant(Rat(1)) - PwlFn::identity();
  return PwlFn::from_points({{Rat(0), a}, {a, Rat(0)}, {Rat(1), Rat(0)}});
}

// Hat under half of a function with positive linear germ, inside [0, reach].
PwlFn sliver_of(const PwlFn& fn, const Rat& reach) {
  const LocalForm lf = local_form_at_zero(fn);
  return sliver_below(lf.lambda, lf.mu, min_of(lf.eps, reach));
}

PwlFn positive_part(const PwlFn& fn) { return join(fn, PwlFn()); }

}  // namespace

std::string MonsterBuild::to_json() const {
  nlohmann::ordered_json j;
  const Oscillation osc = oscillation(g, g.rho());
  j["rho"] = to_string(g.rho());
  j["mu"] = to_string(g.mu());
  j["lambda_prime"] = to_string(lambda_prime);
  j["f_prime"] = f_prime.fn().to_string();
  j["g"] = nlohmann::ordered_json::parse(g.to_json());
  j["h1"] = h1.fn().to_string();
  j["liminf"] = to_string(osc.liminf);
  j["limsup"] = to_string(osc.limsup);
  j["extendable"] = osc.extendable();
  j["words_checked"] = words_checked;
  return j.dump();
}

PwlFn lattice_word(const TailFn& g, int k) {
  if (g.kind() != TailFn::Kind::Oscillating) {
    throw PreconditionError("lattice_word: needs an oscillating tail");
  }
  if (k < 1) throw PreconditionError("lattice_word: k must be at least 1");
  const Rat p = g.plateau();
  PwlFn word = g.mu() * PwlFn::identity();
  for (long n = 1; n <= k; ++n) {
    const Rat a = g.mu_seq(n);
    const Rat w = g.mu_seq(n + 1) - a;
    if (n % 2 == 1) {
      word = meet(word, urysohn(RSet::closed(Rat(0), a),
                                RSet::interval(Rat(0), a + 2 * w / 3, true, false), p));
    } else {
      word = join(word, urysohn(RSet::closed(a + w, Rat(1)),
                                RSet::interval(a + w / 3, Rat(1), false, true), p));
    }
  }
  return word;
}

MonsterBuild build_monster(const MElem& f, const MElem& h, const Rat& rho, const Rat& mu) {
  if (rho <= 0 || rho >= 1) throw PreconditionError("build_monster: rho must lie in (0,1)");
  if (f.is_zero() || f.fn().eval(Rat(0)) != 0) {
    throw PreconditionError("build_monster: f must be nonzero with f(0) = 0");
  }
  if (!RSet::open(Rat(0), rho).subset_of(cozero(f.fn()))) {
    throw PreconditionError("build_monster: f must be positive on (0, rho)");
  }
  if (h.is_zero()) throw PreconditionError("build_monster: h must be nonzero");
  const LocalForm hl = local_form_at_zero(h.fn());
  if (hl.lambda != 0) throw PreconditionError("build_monster: h must vanish at 0");
  const Rat lambda_prime = hl.mu / 2;
  if (mu <= 0 || mu >= lambda_prime) {
    throw PreconditionError("build_monster: need 0 < mu < lambda' where h = 2 lambda' t near 0");
  }

  MonsterBuild mb;
  mb.f = f;
  mb.h = h;
  mb.h1 = Rat(1, 2) * h;
  mb.lambda_prime = lambda_prime;
  mb.f_prime = MElem::checked(Rat(1, 2) * meet(f.fn(), ramp_down(rho)));
  if (cozero(mb.f_prime.fn()) != RSet::open(Rat(0), rho)) {
    throw InvariantError("build_monster: cozero(f') is not (0, rho)");
  }
  if (!alg_leq(mb.f_prime, f)) throw InvariantError("build_monster: f' <=_M f fails");
  mb.g = TailFn::oscillating(rho, mu);
  if (!dominated(mb.g, mb.h1)) {
    throw PreconditionError("build_monster: g < h/2 fails away from rho");
  }

  const SupFn gs(mb.g);
  mb.windows_ok = true;
  for (int k = 1; k <= 4; ++k) {
    const PwlFn word = lattice_word(mb.g, k);
    if (!in_M(word) || !agree_on(SupFn(word), gs, RSet::closed(Rat(0), mb.g.mu_seq(k + 1)))) {
      mb.windows_ok = false;
      break;
    }
    mb.words_checked = k;
  }
  if (!mb.windows_ok) throw InvariantError("build_monster: lattice word disagrees with g");
  return mb;
}

MonsterBuild default_monster() {
  return build_monster(f0_elem(), f0_elem(), Rat(1, 2), Rat(1, 4));
}

Oscillation oscillation(const TailFn& g, const Rat& rho) {
  switch (g.kind()) {
    case TailFn::Kind::Oscillating:
      if (rho != g.rho()) throw PreconditionError("oscillation: the tail accumulates elsewhere");
      return {min_of(Rat(0), g.plateau()), max_of(Rat(0), g.plateau())};
    case TailFn::Kind::Plain: {
      const Rat v = g.eval(rho);
      return {v, v};
    }
    case TailFn::Kind::Superlinear:
      break;
  }
  throw PreconditionError("oscillation: superlinear tails are not supported");
}

LocalWitness locally_in_M_witness(const TailFn& g, const MElem& f_prime, const Rat& t) {
  if (t <= 0) throw PreconditionError("locally_in_M_witness: t must be positive");
  if (!cozero(f_prime.fn()).contains(t)) {
    throw PreconditionError("locally_in_M_witness: t is outside U_{f'}");
  }
  if (g.kind() == TailFn::Kind::Plain) {
    const auto z = in_M(g.prefix());
    if (!z) throw PreconditionError("locally_in_M_witness: g is not in M");
    return {z.value(), Rat(0), Rat(1)};
  }
  if (g.kind() != TailFn::Kind::Oscillating) {
    throw PreconditionError("locally_in_M_witness: needs a plain or oscillating g");
  }
  const Rat& rho = g.rho();
  if (t == rho) throw PreconditionError("locally_in_M_witness: t is the accumulation point");
  if (t > rho) {
    // lattice_word(g, 1) vanishes from mu_2 on, like g.
    return {MElem::checked(lattice_word(g, 1)), (rho + t) / 2, Rat(1)};
  }
  const Rat mu1 = g.mu_seq(1);
  const long n = t < mu1 ? 0 : g.window_index(t);
  std::vector<Rat> near{Rat(0), mu1};
  for (long m = std::max(1L, n - 1); m <= n + 1; ++m) {
    for (const Point& p : g.window(m)) near.push_back(p.x);
  }
  std::optional<Rat> dist;
  for (const Rat& x : near) {
    if (x == t) continue;
    const Rat d = abs(Rat(x - t));
    if (!dist || d < *dist) dist = d;
  }
  const Rat r = *dist / 2;
  const int k = static_cast<int>(std::max(1L, n + 1));
  return {MElem::checked(lattice_word(g, k)), t - r, min_of(Rat(1), t + r)};
}

LocalPieceFn monster_local_pieces(const TailFn& g, const MElem& f_prime) {
  return [g, f_prime](const Rat& t) {
    const LocalWitness w = locally_in_M_witness(g, f_prime, t);
    return LocalPiece{w.z.fn(), w.lo, w.hi};
  };
}

bool dominated(const TailFn& g, const MElem& h1) {
  RSet s = RSet::interval(Rat(0), Rat(1), false, true);
  if (const auto sp = g.singular_point()) s = s.minus(RSet::point(*sp));
  return compare(PwlFn(), SupFn(h1.fn()) - SupFn(g), s).strict;
}

std::vector<SumCheckRow> interval_sum_check(const MonsterBuild& mb,
                                            const std::vector<MElem>& samples) {
  const IdealCtx ctx(mb.f_prime);
  const SupFn gs(mb.g);
  const SupFn hg = SupFn(mb.h1.fn()) - gs;
  const Rat& rho = mb.g.rho();
  std::vector<SumCheckRow> rows;
  rows.reserve(samples.size());

  for (const MElem& z : samples) {
    SumCheckRow row;
    row.z = z;
    auto fail = [&](std::string why) {
      row.detail = std::move(why);
      rows.push_back(row);
    };
    if (!in_Nf(z, ctx)) {
      fail("precondition: z is not in N_{f'}");
      continue;
    }
    if (!alg_leq(z, mb.h)) {
      fail("precondition: z <=_M h fails");
      continue;
    }
    if (z.is_zero()) {
      row.beta = rho / 2;
      row.passed = true;
      row.detail = "zero";
      rows.push_back(row);
      continue;
    }
    const auto [z1, z2] = riesz_decompose(z, mb.h1, mb.h1);
    const PwlFn d = mb.h1.fn() - z2.fn();

    MElem w;
    if (!z1.is_zero()) {
      const auto comp = positive_set(d - z1.fn()).component_of(rho);
      if (!comp) {
        fail("h1 - z vanishes at rho");
        continue;
      }
      const Rat beta_outer = (comp->lo + rho) / 2;
      row.beta = (beta_outer + rho) / 2;
      const PwlFn s = meet(sliver_of(z1.fn(), beta_outer / 2), sliver_of(d, beta_outer / 2));
      const PwlFn cut = urysohn(RSet::closed(row.beta, Rat(1)),
                                RSet::interval(beta_outer, Rat(1), false, true),
                                z1.fn().max_value() + 1);
      w = MElem::checked(meet(z1.fn(), s + cut));
    } else {
      row.beta = rho / 2;
    }
    const auto z1_cut = in_M(z1.fn() - w.fn());
    if (!z1_cut) {
      fail("z1 - w is not in M");
      continue;
    }
    row.z1_cut = z1_cut.value();
    row.rest = z2 + w;

    if (!support(row.z1_cut.fn()).subset_of(RSet::closed(Rat(0), row.beta))) {
      fail("z1' is not supported in [0, beta]");
      continue;
    }
    if (row.z1_cut.fn() + row.rest.fn() != z.fn()) {
      fail("z1' + rest != z");
      continue;
    }
    if (!row.rest.is_zero() && !alg_less(row.rest, mb.h1)) {
      fail("rest <_M h1 fails");
      continue;
    }
    if (!in_Nf(row.rest, ctx)) {
      fail("rest is not in N_{f'}");
      continue;
    }

    if (!row.z1_cut.is_zero()) {
      // Riesz split of z1' under slightly thinned copies of g and h1 - g,
      // both read on [0, beta] where z1' lives.
      const PwlFn g_beta = mb.g.truncation(Rat(0), row.beta);
      const PwlFn hg_beta = positive_part(mb.h1.fn() - g_beta);
      const PwlFn room = mb.h1.fn() - row.z1_cut.fn();
      const PwlFn thin = Rat(1, 2) * meet(meet(sliver_of(g_beta, row.beta), sliver_of(hg_beta, row.beta)),
                                          sliver_of(room, row.beta));
      try {
        const auto [a, b] = riesz_decompose(row.z1_cut, MElem::checked(g_beta - thin),
                                            MElem::checked(hg_beta - thin));
        row.part_g = a;
        row.part_hg = b;
      } catch (const PreconditionError& e) {
        fail(std::string("riesz split of z1' failed: ") + e.what());
        continue;
      }
    }
    if (!in_Ifh(row.part_g, ctx, gs).member) {
      fail("part in I(g) rejected");
      continue;
    }
    if (!in_Ifh(row.part_hg, ctx, hg).member) {
      fail("part in I(h1 - g) rejected");
      continue;
    }
    if (row.part_g.fn() + row.part_hg.fn() != row.z1_cut.fn()) {
      fail("parts do not add up to z1'");
      continue;
    }
    row.passed = true;
    rows.push_back(row);
  }
  return rows;
}

IdealSplit ideal_split(const MElem& g, const MElem& f, const MElem& f_prime, const RSet& k1,
                       const RSet& k, const RSet& k2) {
  if (!k1.is_closed() || !k.is_closed() || !k2.is_closed()) {
    throw PreconditionError("ideal_split: K1, K and K2 must be compact");
  }
  if (k1 == k && k == k2) throw PreconditionError("ideal_split: K1 = K = K2 leaves no slack");
  if (!k1.interior().contains(Rat(0))) {
    throw PreconditionError("ideal_split: K1 must be a neighbourhood of 0");
  }
  const RSet zero = RSet::point(Rat(0));
  const RSet up = cozero(f_prime.fn()).unite(zero);
  if (!k1.subset_of(up)) throw PreconditionError("ideal_split: K1 must lie in U_{f'} u {0}");
  if (!up.subset_of(k)) throw PreconditionError("ideal_split: U_{f'} u {0} must lie in K");
  const RSet u = k2.interior();
  if (!k.subset_of(u)) throw PreconditionError("ideal_split: K must lie in the interior of K2");
  if (!k2.subset_of(cozero(f.fn()).unite(zero))) {
    throw PreconditionError("ideal_split: K2 must lie in U_f u {0}");
  }
  if (g.is_zero()) throw PreconditionError("ideal_split: g must be nonzero");
  const LocalForm gl = local_form_at_zero(g.fn());
  if (gl.lambda != 0) throw PreconditionError("ideal_split: g must vanish at 0");

  IdealSplit out;
  out.beta = gl.mu;
  out.alpha = gl.mu / 2;

  const PwlFn r1 = urysohn(k, u, g.fn().max_value() + 1);
  out.k_prime = urysohn_plateau(k, u).complement();
  out.g1_prime = MElem::checked(meet(g.fn(), r1));
  out.remainder = g.fn() - out.g1_prime.fn();

  const Rat w = min_of(gl.eps, k1.component_of(Rat(0))->hi);
  const PwlFn r2 = urysohn(RSet::closed(Rat(0), w / 2), RSet::interval(Rat(0), w, true, false),
                           out.alpha * w);
  out.g2_prime = MElem::checked(meet(out.alpha * PwlFn::identity(), r2));

  out.g1 = MElem::checked(out.g1_prime.fn() - out.g2_prime.fn());
  out.g2 = MElem::checked(out.g2_prime.fn() + out.remainder);

  out.recombines = out.g1.fn() + out.g2.fn() == g.fn();
  out.g1_in_Nf = in_Nf(out.g1, IdealCtx(f)).ok();
  out.g2_prime_in_Nfp = in_Nf(out.g2_prime, IdealCtx(f_prime)).ok();
  out.support_ok = support(out.g2.fn()).subset_of(k1.unite(out.k_prime)) &&
                   out.k_prime.intersect(k).is_empty();
  out.remainder_vanishes = agree_on(g.fn(), out.g1_prime.fn(), k);
  return out;
}

std::string TowerStage::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["rho"] = to_string(rho);
  j["f_prime"] = f_prime.fn().to_string();
  j["g"] = nlohmann::ordered_json::parse(g.to_json());
  j["below_previous"] = below_previous;
  j["below_sequence"] = below_sequence;
  j["rho_in_previous"] = rho_in_previous;
  j["non_extendable"] = non_extendable;
  j["dominated"] = dominated;
  j["gap"] = to_string(gap);
  return j.dump();
}

std::vector<TowerStage> monster_tower(int depth, const FundamentalSeq& seq, const Rat& rho1,
                                      const Rat& mu) {
  if (depth < 1) throw PreconditionError("monster_tower: depth must be at least 1");
  if (static_cast<std::size_t>(depth) >= seq.elems.size()) {
    throw PreconditionError("monster_tower: fundamental sequence is too short for this depth");
  }
  std::vector<TowerStage> stages;
  MElem prev = f0_elem();
  for (int n = 1; n <= depth; ++n) {
    TowerStage st;
    st.n = n;
    st.rho = rho1 * pow2(1 - n);
    const MElem& fn = seq.elems[static_cast<std::size_t>(n)];
    const MElem base = Rat(1, 2) * meet(prev, fn);
    const MonsterBuild mb = build_monster(base, f0_elem(), st.rho, mu);
    st.f_prime = mb.f_prime;
    st.g = mb.g;
    st.below_previous = alg_leq(st.f_prime, prev).ok();
    st.below_sequence = alg_leq(st.f_prime, fn).ok();
    st.rho_in_previous = cozero(prev.fn()).contains(st.rho);
    const Oscillation osc = oscillation(st.g, st.rho);
    st.non_extendable = !osc.extendable();
    st.gap = osc.limsup - osc.liminf;
    st.dominated = dominated(st.g, mb.h1);
    stages.push_back(st);
    prev = st.f_prime;
  }
  return stages;
}

}  // namespace locmult
