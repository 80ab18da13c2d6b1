#include <gtest/gtest.h>

#include "locmult/error.hpp"
#include "locmult/monster.hpp"
#include "oracle.hpp"

using namespace locmult;

namespace {

Rat q(long p, long d = 1) { return ratio(p, d); }
const PwlFn f0 = PwlFn::identity();
MElem m(const PwlFn& f) { return MElem::checked(f); }

const MonsterBuild& mb() {
  static const MonsterBuild b = default_monster();
  return b;
}

}  // namespace

TEST(TailFn, OscillatingValues) {
  const TailFn& g = mb().g;
  EXPECT_EQ(g.kind(), TailFn::Kind::Oscillating);
  EXPECT_EQ(g.rho(), q(1, 2));
  EXPECT_EQ(g.mu(), q(1, 4));
  EXPECT_EQ(g.plateau(), q(1, 16));
  EXPECT_EQ(g.mu_seq(1), q(1, 4));
  EXPECT_EQ(g.mu_seq(2), q(3, 8));
  EXPECT_EQ(g.eval(q(1, 8)), q(1, 32));
  EXPECT_EQ(g.eval(q(1, 4)), q(1, 16));
  // Window 1 runs from 1/4 to 3/8: flat, ramp down, flat.
  EXPECT_EQ(g.eval(q(1, 4) + q(1, 24)), q(1, 16));
  EXPECT_EQ(g.eval(q(5, 16)), q(1, 32));
  EXPECT_EQ(g.eval(q(3, 8)), 0);
  EXPECT_EQ(g.eval(q(1, 2)), 0);
  EXPECT_EQ(g.eval(q(3, 4)), 0);
  EXPECT_EQ(g.window_index(q(5, 16)), 1);
  EXPECT_EQ(g.window_index(q(3, 8)), 2);
}

TEST(TailFn, TruncationNeedsToAvoidRho) {
  EXPECT_THROW(mb().g.truncation(Rat(0), q(1, 2)), PreconditionError);
  const PwlFn t = mb().g.truncation(Rat(0), q(7, 16));
  EXPECT_EQ(t.eval(q(7, 16)), mb().g.eval(q(7, 16)));
}

TEST(TailFn, JsonShape) {
  EXPECT_EQ(mb().g.to_json(),
            R"({"prefix":"pwl[(0,0);(1/4,1/16);(1,1/16)]","tail":{"rho":"1/2","mu":"1/4","plateau":"1/16","rule":"dyadic"}})");
}

TEST(BuildMonster, DefaultInstance) {
  const MonsterBuild& b = mb();
  EXPECT_EQ(b.lambda_prime, q(1, 2));
  EXPECT_EQ(b.h1.fn(), q(1, 2) * f0);
  EXPECT_EQ(cozero(b.f_prime.fn()), RSet::open(q(0), q(1, 2)));
  EXPECT_TRUE(oracle::leq_M(b.f_prime.fn(), f0));
  EXPECT_EQ(b.words_checked, 4);
  EXPECT_TRUE(b.windows_ok);
}

TEST(BuildMonster, Preconditions) {
  const MElem f = m(f0);
  EXPECT_THROW(build_monster(f, f, Rat(1), q(1, 4)), PreconditionError);
  EXPECT_THROW(build_monster(f, f, q(1, 2), q(1, 2)), PreconditionError);
  EXPECT_THROW(build_monster(f, f, q(1, 2), Rat(0)), PreconditionError);
  EXPECT_THROW(build_monster(m(PwlFn::constant(Rat(1))), f, q(1, 2), q(1, 4)), PreconditionError);
}

TEST(Oscillation, Examples) {
  const Oscillation o = oscillation(mb().g, q(1, 2));
  EXPECT_EQ(o.liminf, 0);
  EXPECT_EQ(o.limsup, q(1, 16));
  EXPECT_FALSE(o.extendable());

  const Oscillation plain = oscillation(TailFn::plain(f0), q(1, 2));
  EXPECT_EQ(plain.liminf, q(1, 2));
  EXPECT_EQ(plain.limsup, q(1, 2));
  EXPECT_TRUE(plain.extendable());

  const Oscillation doubled = oscillation(mb().g.scaled(Rat(2)), q(1, 2));
  EXPECT_EQ(doubled.liminf, 0);
  EXPECT_EQ(doubled.limsup, q(1, 8));
}

TEST(LatticeWords, MatchTruncations) {
  for (int k = 1; k <= 6; ++k) {
    const Rat end = mb().g.mu_seq(k + 1);
    EXPECT_TRUE(agree_on(lattice_word(mb().g, k), mb().g.truncation(Rat(0), end), RSet::closed(Rat(0), end)))
        << k;
  }
}

TEST(LocalWitness, Examples) {
  const TailFn& g = mb().g;
  const LocalWitness a = locally_in_M_witness(g, mb().f_prime, q(1, 8));
  EXPECT_LT(a.lo, q(1, 8));
  EXPECT_GT(a.hi, q(1, 8));
  EXPECT_TRUE(agree_on(a.z.fn(), q(1, 4) * f0, RSet::closed(a.lo, a.hi)));

  // On the zero plateau of window 1 near 3/8.
  const Rat t = q(3, 8) + q(1, 100);
  ASSERT_EQ(g.eval(t), 0);
  const LocalWitness b = locally_in_M_witness(g, mb().f_prime, t);
  EXPECT_TRUE(agree_on(b.z.fn(), PwlFn(), RSet::closed(b.lo, b.hi)));
  EXPECT_GT(b.z.fn().eval(q(1, 100)), 0);

  EXPECT_THROW(locally_in_M_witness(g, mb().f_prime, q(1, 2)), PreconditionError);
  EXPECT_THROW(locally_in_M_witness(g, mb().f_prime, Rat(0)), PreconditionError);
}

TEST(LocalWitness, NearRho) {
  const TailFn& g = mb().g;
  for (long k = 3; k <= 12; ++k) {
    const Rat t = q(1, 2) - pow2(-k) / 3;
    const LocalWitness w = locally_in_M_witness(g, mb().f_prime, t);
    ASSERT_TRUE(w.lo < t && t < w.hi);
    ASSERT_LT(w.hi, q(1, 2));
    EXPECT_TRUE(agree_on(w.z.fn(), g.truncation(w.lo, w.hi), RSet::closed(w.lo, w.hi))) << k;
  }
}

TEST(Dominated, Examples) {
  EXPECT_TRUE(dominated(mb().g, m(q(1, 2) * f0)));
  EXPECT_TRUE(dominated(mb().g, m(q(1, 3) * f0)));
  EXPECT_FALSE(dominated(mb().g, m(q(1, 4) * f0)));
  EXPECT_FALSE(dominated(mb().g, m(mb().g.truncation(Rat(0), q(1, 4)))));
}

TEST(PropertyC, MonsterHasLocalWitnesses) {
  const IdealCtx ctx(mb().f_prime);
  const IntervalRep rep = make_interval(ctx, SupFn(mb().g), monster_local_pieces(mb().g, mb().f_prime));
  ASSERT_TRUE(rep.propC);
  for (const Rat& t : {q(1, 8), q(1, 4), q(5, 16), Rat(q(3, 8) + q(1, 100)), q(61, 128), Rat(q(1, 2) - pow2(-10))}) {
    EXPECT_EQ(check_propC(ctx, rep.h, t, rep.propC->at(t)), "") << to_string(t);
  }
}

TEST(IntervalSum, Examples) {
  const IdealCtx ctx(mb().f_prime);
  const MElem lf = in_Lf(SupFn(mb().g), ctx).value();
  const MElem mixed = q(1, 2) * meet(m(f0), mb().f_prime);
  const std::vector<SumCheckRow> rows = interval_sum_check(mb(), {MElem(), lf, mixed});
  ASSERT_EQ(rows.size(), 3u);
  for (const SumCheckRow& r : rows) {
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_EQ(r.z1_cut.fn() + r.rest.fn(), r.z.fn());
    EXPECT_EQ(r.part_g.fn() + r.part_hg.fn(), r.z1_cut.fn());
  }
  EXPECT_TRUE(rows[0].z1_cut.is_zero());
}

TEST(IdealSplit, NestedCompacts) {
  const MElem g = m(PwlFn::parse("pwl[(0,0);(1/8,1/8);(3/4,1/2);(1,1/4)]"));
  const RSet k1 = RSet::closed(Rat(0), q(1, 4)), k = RSet::closed(Rat(0), q(5, 8)),
             k2 = RSet::closed(Rat(0), q(3, 4));
  const IdealSplit s = ideal_split(g, m(f0), mb().f_prime, k1, k, k2);
  EXPECT_TRUE(s.verified());
  EXPECT_EQ(s.g1.fn() + s.g2.fn(), g.fn());
  EXPECT_EQ(s.g2_prime.fn() + s.remainder, s.g2.fn());
  EXPECT_TRUE(support(s.g2.fn()).subset_of(k1.unite(s.k_prime)));
  EXPECT_TRUE(s.k_prime.intersect(k).is_empty());
  EXPECT_TRUE(in_Nf(s.g2_prime, IdealCtx(mb().f_prime)).ok());
}

TEST(IdealSplit, RejectsCollapsedNesting) {
  const RSet k = RSet::closed(Rat(0), q(1, 2));
  EXPECT_THROW(ideal_split(m(f0), m(f0), mb().f_prime, k, k, k), PreconditionError);
  EXPECT_THROW(ideal_split(m(f0), m(f0), mb().f_prime, RSet::closed(Rat(0), q(3, 4)),
                           RSet::closed(Rat(0), q(5, 8)), RSet::closed(Rat(0), q(7, 8))),
               PreconditionError);
}

TEST(Tower, DepthOneIsTheBuild) {
  const std::vector<TowerStage> st = monster_tower(1, fundamental_sequence(2));
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].g, mb().g);
  EXPECT_EQ(st[0].rho, q(1, 2));
  EXPECT_TRUE(st[0].verified()) << st[0].to_json();
}

TEST(Tower, DepthThree) {
  const FundamentalSeq seq = fundamental_sequence(4);
  const std::vector<TowerStage> st = monster_tower(3, seq);
  ASSERT_EQ(st.size(), 3u);
  for (std::size_t i = 0; i < st.size(); ++i) {
    const TowerStage& s = st[i];
    EXPECT_EQ(s.n, static_cast<int>(i) + 1);
    EXPECT_EQ(s.rho, pow2(-s.n));
    EXPECT_TRUE(s.verified()) << s.to_json();
    EXPECT_TRUE(oracle::leq_M(s.f_prime.fn(), seq.elems[i + 1].fn()));
    if (i > 0) EXPECT_TRUE(oracle::leq_M(s.f_prime.fn(), st[i - 1].f_prime.fn()));
    EXPECT_EQ(cozero(s.f_prime.fn()), RSet::open(Rat(0), s.rho));
  }
}

TEST(Tower, ShortSequenceThrows) {
  EXPECT_THROW(monster_tower(3, fundamental_sequence(2)), PreconditionError);
}
