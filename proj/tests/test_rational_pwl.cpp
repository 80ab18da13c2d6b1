#include <gtest/gtest.h>

#include "locmult/error.hpp"
#include "locmult/pwl.hpp"
#include "locmult/random.hpp"
#include "oracle.hpp"

using namespace locmult;

namespace {

PwlFn pts(std::vector<Point> p) { return PwlFn::from_points(std::move(p)); }
Rat q(long p, long d = 1) { return ratio(p, d); }
const PwlFn f0 = PwlFn::identity();
const PwlFn one = PwlFn::constant(Rat(1));

}  // namespace

TEST(Rational, LowestTermsAndText) {
  EXPECT_EQ(to_string(parse_rat("-6/8")), "-3/4");
  EXPECT_EQ(to_string(parse_rat("4/2")), "2");
  EXPECT_EQ(parse_rat("0/5"), Rat(0));
  EXPECT_THROW(parse_rat("1/0"), ParseError);
  EXPECT_THROW(parse_rat("3/-4"), ParseError);
  EXPECT_THROW(parse_rat("abc"), ParseError);
  EXPECT_THROW(parse_rat(""), ParseError);
  EXPECT_EQ(pow2(-3), q(1, 8));
  EXPECT_EQ(floor_of(q(-1, 2)), Int(-1));
  EXPECT_EQ(ceil_of(q(7, 3)), Int(3));
}

TEST(PwlEval, Examples) {
  EXPECT_EQ(f0.eval(q(1, 2)), q(1, 2));
  EXPECT_EQ(one.eval(q(3, 7)), Rat(1));
  const PwlFn g = pts({{q(0), q(0)}, {q(1, 4), q(1, 16)}, {q(1), q(1, 16)}});
  EXPECT_EQ(g.eval(q(1, 8)), oracle::interp({{q(0), q(0)}, {q(1, 4), q(1, 16)}, {q(1), q(1, 16)}}, q(1, 8)));
  EXPECT_EQ(g.eval(q(1, 8)), q(1, 32));
}

TEST(PwlEval, OutsideUnitIntervalThrows) {
  EXPECT_THROW(f0.eval(q(-1, 2)), PreconditionError);
  EXPECT_THROW(f0.eval(q(3, 2)), PreconditionError);
}

TEST(PwlArithmetic, Examples) {
  EXPECT_EQ(add(f0, sub(one, f0)), one);
  EXPECT_EQ(scale(Rat(0), pts({{q(0), q(3)}, {q(1, 3), q(-1)}, {q(1), q(2)}})), PwlFn());
  EXPECT_EQ(sub(scale(Rat(2), f0), f0), f0);
}

TEST(PwlLattice, Examples) {
  EXPECT_EQ(meet(f0, sub(one, f0)), pts({{q(0), q(0)}, {q(1, 2), q(1, 2)}, {q(1), q(0)}}));
  const PwlFn f = pts({{q(0), q(1)}, {q(1, 3), q(-1)}, {q(1), q(1, 2)}});
  EXPECT_EQ(join(f, f), f);
  EXPECT_EQ(meet(f0, PwlFn::constant(q(1, 4))), pts({{q(0), q(0)}, {q(1, 4), q(1, 4)}, {q(1), q(1, 4)}}));
}

TEST(PwlLattice, CrossingInsertedExactly) {
  // Lines t and 1/3 - t/2 cross at t = 2/9.
  const PwlFn g = pts({{q(0), q(1, 3)}, {q(1), q(-1, 6)}});
  const PwlFn m = meet(f0, g);
  EXPECT_EQ(m.points().size(), 3u);
  EXPECT_EQ(m.points()[1].x, q(2, 9));
  EXPECT_EQ(m.eval(q(2, 9)), q(2, 9));
}

TEST(Cozero, Examples) {
  EXPECT_EQ(cozero(f0), RSet::interval(q(0), q(1), false, true));
  EXPECT_TRUE(cozero(PwlFn()).is_empty());
  const PwlFn hat = meet(f0, join(PwlFn(), sub(PwlFn::constant(q(1, 2)), f0)));
  EXPECT_EQ(cozero(hat), RSet::open(q(0), q(1, 2)));
}

TEST(Cozero, NegativeInputThrows) { EXPECT_THROW(cozero(f0 - PwlFn::constant(q(1, 2))), PreconditionError); }

TEST(Compare, Examples) {
  const RSet s = RSet::interval(q(0), q(1), false, true);
  const Comparison c = compare(f0, scale(Rat(2), f0), s);
  EXPECT_TRUE(c.leq);
  EXPECT_TRUE(c.strict);
  ASSERT_TRUE(c.inf_gap);
  EXPECT_EQ(*c.inf_gap, Rat(0));

  const Comparison same = compare(f0, f0, s);
  EXPECT_TRUE(same.leq);
  EXPECT_FALSE(same.strict);

  const Comparison bad = compare(one, f0, s);
  EXPECT_FALSE(bad.leq);
  ASSERT_TRUE(bad.leq_witness);
  EXPECT_GT(one.eval(*bad.leq_witness), f0.eval(*bad.leq_witness));
  EXPECT_TRUE(s.contains(*bad.leq_witness));
}

TEST(Compare, EmptySetHasNoGap) {
  const Comparison c = compare(one, f0, RSet());
  EXPECT_TRUE(c.leq);
  EXPECT_FALSE(c.inf_gap.has_value());
}

TEST(Parse, RoundTripAndErrors) {
  const std::string text = "pwl[(0,0);(1,1)]";
  EXPECT_EQ(PwlFn::parse(text), f0);
  EXPECT_EQ(PwlFn::parse(text).to_string(), text);
  EXPECT_EQ(PwlFn::parse("pwl[(0,0);(1/2,1/2);(1,0)]").eval(q(1, 2)), q(1, 2));
  EXPECT_THROW(PwlFn::parse("pwl[(0,0);(0,1)]"), ParseError);
  EXPECT_THROW(PwlFn::parse("pwl[(0,0);(0,1);(1,1)]"), ParseError);
  EXPECT_THROW(PwlFn::parse("pwl[(0,0);(1/2,x);(1,1)]"), ParseError);
  EXPECT_THROW(PwlFn::parse("pwl[(0,0);(1/2,1)]"), ParseError);
  EXPECT_THROW(PwlFn::parse("pwl[(1/4,0);(1,1)]"), ParseError);
  EXPECT_THROW(PwlFn::parse("(0,0);(1,1)"), ParseError);
}

TEST(Parse, CanonicalFormDropsCollinearPoints) {
  EXPECT_EQ(PwlFn::parse("pwl[(0,0);(2/4,1/2);(1,1)]").to_string(), "pwl[(0,0);(1,1)]");
}

TEST(RSetOps, Topology) {
  const RSet a = RSet::open(q(0), q(1, 2)).unite(RSet::closed(q(3, 4), q(1)));
  EXPECT_EQ(a.to_string(), "(0,1/2) U [3/4,1]");
  EXPECT_EQ(RSet::parse(a.to_string()), a);
  EXPECT_EQ(a.closure(), RSet::closed(q(0), q(1, 2)).unite(RSet::closed(q(3, 4), q(1))));
  EXPECT_EQ(a.interior(), RSet::open(q(0), q(1, 2)).unite(RSet::interval(q(3, 4), q(1), false, true)));
  EXPECT_EQ(a.complement(), RSet::point(q(0)).unite(RSet::interval(q(1, 2), q(3, 4), true, false)));
  EXPECT_TRUE(RSet::interval(q(0), q(1, 2), true, false).is_open());
  EXPECT_TRUE(a.minus(a).is_empty());
  EXPECT_EQ(RSet::open(q(0), q(1, 2)).unite(RSet::closed(q(1, 2), q(1))),
            RSet::interval(q(0), q(1), false, true));
}

// ---------------------------------------------------------------- properties

class PwlProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PwlProperties, GroupModuleAndLatticeLaws) {
  Rng rng = Rng::derive(20240601, "pwl-laws", GetParam());
  const PwlFn f = random_pwl(rng), g = random_pwl(rng), h = random_pwl(rng);
  const Rat a = rng.rat(-2, 2), b = rng.rat(-2, 2);
  EXPECT_EQ((f + g) + h, f + (g + h));
  EXPECT_EQ(f + g, g + f);
  EXPECT_EQ(f - f, PwlFn());
  EXPECT_EQ(a * (f + g), a * f + a * g);
  EXPECT_EQ((a + b) * f, a * f + b * f);
  EXPECT_EQ((a * b) * f, a * (b * f));
  EXPECT_EQ(meet(f, join(f, g)), f);
  EXPECT_EQ(join(f, meet(f, g)), f);
  EXPECT_EQ(meet(meet(f, g), h), meet(f, meet(g, h)));
  EXPECT_EQ(join(f, join(g, h)), join(join(f, g), h));
}

TEST_P(PwlProperties, PointwiseAgainstInterpolation) {
  Rng rng = Rng::derive(20240601, "pwl-pointwise", GetParam());
  const PwlFn f = random_pwl(rng), g = random_pwl(rng);
  const auto rf = oracle::raw(f), rg = oracle::raw(g);
  const PwlFn m = meet(f, g), j = join(f, g), s = f + g;
  for (const Rat& t : oracle::grid({&f, &g, &m})) {
    const Rat x = oracle::interp(rf, t), y = oracle::interp(rg, t);
    EXPECT_EQ(m.eval(t), min_of(x, y)) << to_string(t);
    EXPECT_EQ(j.eval(t), max_of(x, y)) << to_string(t);
    EXPECT_EQ(s.eval(t), x + y) << to_string(t);
  }
  for (int i = 0; i < 20; ++i) {
    const Rat t = rng.unit();
    EXPECT_EQ(m.eval(t), min_of(oracle::interp(rf, t), oracle::interp(rg, t)));
  }
}

TEST_P(PwlProperties, CozeroMatchesSigns) {
  Rng rng = Rng::derive(20240601, "pwl-cozero", GetParam());
  const PwlFn f = join(random_pwl(rng), PwlFn());
  const RSet u = cozero(f);
  for (const Rat& t : oracle::grid({&f})) EXPECT_EQ(u.contains(t), oracle::interp(oracle::raw(f), t) > 0);
}

TEST_P(PwlProperties, CompareMatchesGrid) {
  Rng rng = Rng::derive(20240601, "pwl-compare", GetParam());
  const PwlFn f = random_pwl(rng), g = random_pwl(rng);
  const RSet s = RSet::full();
  const Comparison c = compare(f, g, s);
  bool leq = true, strict = true;
  Rat gap = g.eval(Rat(0)) - f.eval(Rat(0));
  const PwlFn diff = g - f;
  for (const Rat& t : oracle::grid({&f, &g, &diff})) {
    const Rat d = g.eval(t) - f.eval(t);
    leq = leq && d >= 0;
    strict = strict && d > 0;
    gap = min_of(gap, d);
  }
  EXPECT_EQ(c.leq, leq);
  EXPECT_EQ(c.strict, strict);
  EXPECT_EQ(*c.inf_gap, gap);
}

TEST_P(PwlProperties, TextRoundTrip) {
  Rng rng = Rng::derive(20240601, "pwl-text", GetParam());
  const PwlFn f = random_pwl(rng, 7);
  EXPECT_EQ(PwlFn::parse(f.to_string()), f);
  EXPECT_EQ(PwlFn::from_points(f.points()), f);
}

INSTANTIATE_TEST_SUITE_P(Random, PwlProperties, ::testing::Range<std::uint64_t>(0, 60));
