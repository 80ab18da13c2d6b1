#include <gtest/gtest.h>

#include "locmult/error.hpp"
#include "locmult/intervals.hpp"
#include "locmult/random.hpp"
#include "oracle.hpp"

using namespace locmult;

namespace {

Rat q(long p, long d = 1) { return ratio(p, d); }
const PwlFn f0 = PwlFn::identity();
const PwlFn one = PwlFn::constant(Rat(1));
MElem m(const PwlFn& f) { return MElem::checked(f); }
PwlFn c(long p, long d = 1) { return PwlFn::constant(q(p, d)); }
PwlFn hat_half() { return meet(f0, join(PwlFn(), c(1, 2) - f0)); }

const IdealCtx& ctx0() {
  static const IdealCtx ctx(m(f0));
  return ctx;
}

PropCWitness witness_for(const SupFn& h, const IdealCtx& ctx = ctx0()) {
  const Verdict<PropCWitness> w = has_property_C(ctx, h);
  if (!w) throw std::runtime_error("no property (C) witness");
  return w.value();
}

}  // namespace

TEST(InLf, Examples) {
  const Verdict<MElem> a = in_Lf(SupFn(one), ctx0());
  ASSERT_TRUE(a.ok());
  EXPECT_FALSE(a.value().is_zero());
  EXPECT_TRUE(compare(a.value().fn(), one, ctx0().cozero()).leq);

  const Verdict<MElem> b = in_Lf(SupFn(f0), ctx0());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(b.value().fn(), f0);
}

TEST(InLf, SuperlinearGermIsRejected) {
  const Verdict<MElem> r = in_Lf(SupFn(TailFn::superlinear(Rat(1))), ctx0());
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(r.rejection().reason.empty());
}

TEST(InIfh, Examples) {
  EXPECT_TRUE(in_Ifh(MElem(), ctx0(), SupFn(one)).member);

  const MElem z = in_Lf(SupFn(one), ctx0()).value();
  const IfhVerdict half = in_Ifh(q(1, 2) * z, ctx0(), SupFn(one));
  EXPECT_TRUE(half.member);
  EXPECT_TRUE(half.original && half.tilde && half.prime);
  ASSERT_TRUE(half.z_prime);
  EXPECT_TRUE(alg_less(q(1, 2) * z, *half.z_prime));
  EXPECT_TRUE(oracle::ifh((q(1, 2) * z).fn(), f0, one));

  const IfhVerdict top = in_Ifh(m(f0), ctx0(), SupFn(f0));
  EXPECT_FALSE(top.member);
  EXPECT_FALSE(top.original || top.tilde || top.prime);
  EXPECT_FALSE(top.reason.empty());
  EXPECT_FALSE(oracle::ifh(f0, f0, f0));
}

TEST(InIfh, RequiresBaseVanishingAtZero) {
  EXPECT_THROW(in_Ifh(m(f0), IdealCtx(m(one)), SupFn(one)), PreconditionError);
}

TEST(UpwardDirect, Examples) {
  const SupFn h(one);
  const MElem g = m(meet(f0, c(1, 4)));
  const MElem same = upward_direct(g, g, ctx0(), h);
  EXPECT_TRUE(oracle::leq_M(g.fn(), same.fn()));
  EXPECT_TRUE(oracle::ifh(same.fn(), f0, one));

  const MElem from_zero = upward_direct(MElem(), g, ctx0(), h);
  EXPECT_TRUE(oracle::leq_M(g.fn(), from_zero.fn()));
  EXPECT_TRUE(oracle::ifh(from_zero.fn(), f0, one));

  // Neither is algebraically below the other.
  const MElem a = m(meet(f0, c(1, 2)));
  const MElem b = m(meet(Rat(2) * f0, c(1, 4)));
  ASSERT_FALSE(oracle::leq_M(a.fn(), b.fn()));
  ASSERT_FALSE(oracle::leq_M(b.fn(), a.fn()));
  const MElem up = upward_direct(a, b, ctx0(), h);
  EXPECT_TRUE(oracle::leq_M(a.fn(), up.fn()));
  EXPECT_TRUE(oracle::leq_M(b.fn(), up.fn()));
  EXPECT_TRUE(oracle::ifh(up.fn(), f0, one));
}

TEST(PropertyC, ConstantOneAtOneThird) {
  const PropCWitness w = witness_for(SupFn(one));
  const PropCValue v = w.at(q(1, 3));
  EXPECT_EQ(check_propC(ctx0(), SupFn(one), q(1, 3), v), "");
  EXPECT_TRUE(v.window().contains(q(1, 3)));
  EXPECT_EQ(v.z.fn().eval(q(1, 3)), 1);
  EXPECT_THROW(w.at(Rat(0)), PreconditionError);
}

TEST(PropertyC, BrokenWitnessIsReported) {
  const PropCWitness w = witness_for(SupFn(one));
  PropCValue v = w.at(q(1, 3));
  v.z = m(q(1, 2) * v.z.fn());
  EXPECT_NE(check_propC(ctx0(), SupFn(one), q(1, 3), v), "");
}

TEST(ApproxOnCompact, Examples) {
  const SupFn h(one);
  const PropCWitness w = witness_for(h);
  const RSet k = RSet::closed(q(1, 4), q(1, 2));
  const MElem z = approx_on_compact(ctx0(), h, w, k);
  for (const Rat& t : {q(1, 4), q(1, 3), q(1, 2)}) EXPECT_EQ(z.fn().eval(t), 1);
  EXPECT_TRUE(agree_on(z.fn(), one, k));
  EXPECT_TRUE(oracle::ifh(z.fn(), f0, one));

  const MElem single = approx_on_compact(ctx0(), h, w, RSet::point(q(1, 3)));
  EXPECT_EQ(single.fn().eval(q(1, 3)), 1);
  EXPECT_TRUE(oracle::ifh(single.fn(), f0, one));

  const MElem with_zero = approx_on_compact(ctx0(), h, w, k, MElem());
  EXPECT_TRUE(agree_on(with_zero.fn(), one, k));
  EXPECT_TRUE(oracle::ifh(with_zero.fn(), f0, one));
}

TEST(ApproxOnCompact, AugmentedByV) {
  const SupFn h(one);
  const MElem v = m(meet(q(1, 2) * f0, c(1, 2)));
  const RSet k = RSet::closed(q(1, 8), q(1, 4));
  const MElem z = approx_on_compact(ctx0(), h, witness_for(h), k, v);
  EXPECT_TRUE(agree_on(z.fn(), one, k));
  EXPECT_TRUE(oracle::leq_M(v.fn(), z.fn()));
  EXPECT_TRUE(oracle::ifh(z.fn(), f0, one));
}

TEST(RealizeSup, Examples) {
  const MElem a = realize_sup(ctx0(), SupFn(one), q(1, 2), q(1, 8));
  EXPECT_GE(a.fn().eval(q(1, 2)), q(7, 8));
  EXPECT_TRUE(oracle::ifh(a.fn(), f0, one));

  const MElem b = realize_sup(ctx0(), SupFn(f0), q(1, 64), q(1, 128));
  EXPECT_GT(b.fn().eval(q(1, 64)), q(1, 64) - q(1, 128));
  EXPECT_TRUE(oracle::ifh(b.fn(), f0, f0));

  const MElem big = realize_sup(ctx0(), SupFn(f0), q(1, 4), Rat(1));
  EXPECT_GT(big.fn().eval(q(1, 4)), q(1, 4) - 1);
  EXPECT_TRUE(oracle::ifh(big.fn(), f0, f0));
}

TEST(ComplementSplit, Examples) {
  {
    const SupFn h(c(1, 2));
    const SplitResult s = complement_split(ctx0(), h, witness_for(h), 1, q(1, 4), m(f0));
    EXPECT_TRUE(s.recombines && s.g1_in_I && s.g2_in_I);
    EXPECT_EQ(s.g1.fn() + s.g2.fn(), f0);
    EXPECT_TRUE(oracle::ifh(s.g1.fn(), f0, c(1, 2)));
    EXPECT_TRUE(oracle::ifh(s.g2.fn(), f0, c(1, 2)));
  }
  {
    const SupFn h(c(1, 2));
    const SplitResult s = complement_split(ctx0(), h, witness_for(h), 1, q(1, 4), MElem());
    EXPECT_TRUE(s.g1.is_zero());
    EXPECT_TRUE(s.g2.is_zero());
  }
  {
    const long n = 2;
    const SupFn h(one);
    const MElem g = m(Rat(n) * meet(f0, c(1, 4)));
    const SplitResult s = complement_split(ctx0(), h, witness_for(h), n, q(1, 2), g);
    EXPECT_TRUE(s.recombines && s.g1_in_I && s.g2_in_I);
    EXPECT_EQ(s.g1.fn() + s.g2.fn(), g.fn());
    EXPECT_TRUE(oracle::ifh(s.g1.fn(), f0, one));
    EXPECT_TRUE(oracle::ifh(s.g2.fn(), f0, c(2) - one));
    EXPECT_EQ(s.to_json(), R"({"op":"complement_split","recombines":true,"g1_in_I":true,"g2_in_I":true})");
  }
}

TEST(ComplementSplit, NeedsRoomAboveH) {
  const SupFn h(one);
  EXPECT_THROW(complement_split(ctx0(), h, witness_for(h), 1, q(1, 4), m(meet(f0, c(1, 4)))),
               PreconditionError);
}

TEST(SubHasC, Examples) {
  const SupFn h(one);
  const PropCWitness wh = witness_for(h);
  const PropCWitness w0 = sub_has_C(ctx0(), SupFn(), wh, h, wh);
  EXPECT_EQ(check_propC(ctx0(), h, q(1, 3), w0.at(q(1, 3))), "");

  const SupFn g(c(1, 2));
  const PropCWitness wd = sub_has_C(ctx0(), g, witness_for(g), h, wh);
  for (const Rat& t : {q(1, 3), q(1, 16), Rat(1)}) {
    EXPECT_EQ(check_propC(ctx0(), SupFn(c(1, 2)), t, wd.at(t)), "") << to_string(t);
  }
}

TEST(SubHasC, AgreesWithDirectRunForComplement) {
  const long n = 2;
  const SupFn h(meet(f0, c(1, 2)) + c(1, 4));
  const SupFn rest(c(n) - h.base());
  const PropCWitness via_sub = sub_has_C(ctx0(), h, witness_for(h), SupFn(c(n)), witness_for(SupFn(c(n))));
  const PropCWitness direct = witness_for(rest);
  for (const Rat& t : {q(1, 8), q(1, 2), q(3, 4)}) {
    EXPECT_EQ(check_propC(ctx0(), rest, t, via_sub.at(t)), "");
    EXPECT_EQ(check_propC(ctx0(), rest, t, direct.at(t)), "");
  }
}

TEST(RestrictInterval, Examples) {
  const RestrictionReport same = restrict_interval(ctx0(), ctx0(), SupFn(one), q(1, 8));
  EXPECT_TRUE(same.passed());
  EXPECT_EQ(same.h, SupFn(one));

  const IdealCtx sub(m(hat_half()));
  ASSERT_EQ(sub.cozero(), RSet::open(q(0), q(1, 2)));
  const RestrictionReport r = restrict_interval(sub, ctx0(), SupFn(one), q(1, 8));
  EXPECT_TRUE(r.passed()) << r.to_json();
  EXPECT_GT(r.points, 0u);
  EXPECT_TRUE(agree_on(r.h.base(), one, sub.cozero()));
}

TEST(MakeInterval, RejectsBadSup) {
  EXPECT_THROW(make_interval(ctx0(), SupFn(TailFn::superlinear(Rat(1)))), PreconditionError);
  EXPECT_TRUE(make_interval(ctx0(), SupFn()).is_zero());
}

// ---------------------------------------------------------------- properties

class IntervalProperties : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  void SetUp() override {
    rng_ = std::make_unique<Rng>(Rng::derive(4242, "intervals", GetParam()));
    f_ = random_m(*rng_, true);
    h_ = random_m(*rng_).fn();
  }
  std::unique_ptr<Rng> rng_;
  MElem f_;
  PwlFn h_;
};

TEST_P(IntervalProperties, MembershipAgreesWithOracle) {
  const IdealCtx ctx(f_);
  MElem g = random_nf(*rng_, f_);
  if (rng_->coin()) g = meet(g, m(h_));
  const IfhVerdict v = in_Ifh(g, ctx, SupFn(h_));
  EXPECT_EQ(v.member, oracle::ifh(g.fn(), f_.fn(), h_)) << g.fn().to_string() << " " << h_.to_string();
  EXPECT_EQ(v.original, v.member);
  EXPECT_EQ(v.tilde, v.member);
  EXPECT_EQ(v.prime, v.member);
}

TEST_P(IntervalProperties, HereditaryAndDirected) {
  const IdealCtx ctx(f_);
  const MElem g1 = q(1, 2) * meet(random_nf(*rng_, f_), m(h_));
  const MElem g2 = q(1, 2) * meet(random_nf(*rng_, f_), m(h_));
  ASSERT_TRUE(oracle::ifh(g1.fn(), f_.fn(), h_));
  const MElem below = q(1, 2) * meet(g1, random_m(*rng_));
  EXPECT_TRUE(oracle::ifh(below.fn(), f_.fn(), h_));
  const MElem up = upward_direct(g1, g2, ctx, SupFn(h_));
  EXPECT_TRUE(oracle::leq_M(g1.fn(), up.fn()));
  EXPECT_TRUE(oracle::leq_M(g2.fn(), up.fn()));
  EXPECT_TRUE(oracle::ifh(up.fn(), f_.fn(), h_));
}

TEST_P(IntervalProperties, PropertyCAtRandomPoints) {
  const IdealCtx ctx(f_);
  const PropCWitness w = witness_for(SupFn(h_), ctx);
  for (int i = 0; i < 3; ++i) {
    const Rat t = random_point_in(*rng_, ctx.cozero());
    EXPECT_EQ(check_propC(ctx, SupFn(h_), t, w.at(t)), "") << to_string(t);
  }
}

TEST_P(IntervalProperties, ApproxEqualsHOnCompact) {
  const IdealCtx ctx(f_);
  const RSet k = random_compact_in(*rng_, ctx.cozero());
  const MElem z = approx_on_compact(ctx, SupFn(h_), witness_for(SupFn(h_), ctx), k);
  EXPECT_TRUE(agree_on(z.fn(), h_, k)) << k.to_string();
  EXPECT_TRUE(oracle::ifh(z.fn(), f_.fn(), h_));
}

INSTANTIATE_TEST_SUITE_P(Random, IntervalProperties, ::testing::Range<std::uint64_t>(0, 40));
