#include <gtest/gtest.h>

#include "locmult/error.hpp"
#include "locmult/localization.hpp"
#include "locmult/random.hpp"
#include "oracle.hpp"

using namespace locmult;

namespace {

Rat q(long p, long d = 1) { return ratio(p, d); }
const PwlFn f0 = PwlFn::identity();
const PwlFn one = PwlFn::constant(Rat(1));
MElem m(const PwlFn& f) { return MElem::checked(f); }
PwlFn hat_half() { return meet(f0, join(PwlFn(), PwlFn::constant(q(1, 2)) - f0)); }

LocalClass cls(const PwlFn& base, const PwlFn& h) { return make_class(IdealCtx(m(base)), SupFn(h)); }

// Least n with f0 < n g pointwise on the open set s, by direct search.
long least_dominating(const PwlFn& g, const RSet& s, long limit) {
  for (long n = 1; n <= limit; ++n) {
    bool ok = true;
    for (const Interval& iv : s.intervals()) {
      for (const Rat& t : oracle::grid({&g, &f0})) {
        if (t > iv.lo && t < iv.hi && !(t < Rat(n) * g.eval(t))) ok = false;
      }
      const Rat mid = (iv.lo + iv.hi) / 2;
      if (!(mid < Rat(n) * g.eval(mid))) ok = false;
    }
    if (ok) return n;
  }
  return 0;
}

}  // namespace

TEST(Equivalent, Examples) {
  const LocalClass a = cls(f0, one);
  EXPECT_TRUE(equivalent(a, a));
  EXPECT_TRUE(equivalent(a, cls(hat_half(), one)));
  EXPECT_FALSE(equivalent(a, cls(f0, f0)));
  EXPECT_TRUE(equivalent(zero_class(), cls(f0, PwlFn())));
}

TEST(Refine, LiesInBothIdeals) {
  const MElem r = refine(m(f0), m(hat_half()));
  EXPECT_TRUE(in_Nf(r, IdealCtx(m(f0))).ok());
  EXPECT_TRUE(in_Nf(r, IdealCtx(m(hat_half()))).ok());
  EXPECT_TRUE(oracle::leq_M(r.fn(), f0));
}

TEST(AddClasses, Examples) {
  const LocalClass a = cls(f0, one), b = cls(hat_half(), f0);
  EXPECT_TRUE(equivalent(add_classes(a, a), cls(f0, PwlFn::constant(Rat(2)))));
  EXPECT_TRUE(equivalent(add_classes(a, b), add_classes(b, a)));
  EXPECT_TRUE(equivalent(add_classes(a, b), cls(hat_half(), one + f0)));
  EXPECT_TRUE(equivalent(add_classes(a, zero_class()), a));
}

TEST(MinimalIdeal, Examples) {
  const MinIdealReport a = minimal_ideal_dominates(cls(f0, f0));
  EXPECT_EQ(a.mu, 1);
  EXPECT_EQ(a.n, 2);
  EXPECT_TRUE(a.verified()) << a.to_json();

  const MinIdealReport b = minimal_ideal_dominates(cls(f0, one));
  EXPECT_EQ(b.n, 2);
  EXPECT_TRUE(b.verified()) << b.to_json();

  const MinIdealReport c = minimal_ideal_dominates(cls(f0, meet(q(1, 4) * f0, PwlFn::constant(q(1, 8)))));
  EXPECT_EQ(c.mu, q(1, 4));
  EXPECT_EQ(c.n, 5);
  EXPECT_TRUE(c.verified()) << c.to_json();
  EXPECT_EQ(least_dominating(c.g.fn(), cozero(c.f_prime.fn()), 20), 5);
}

TEST(MinimalIdeal, ZeroClassThrows) { EXPECT_THROW(minimal_ideal_dominates(zero_class()), PreconditionError); }

TEST(MakeClass, Preconditions) {
  EXPECT_THROW(cls(one, one), PreconditionError);
  EXPECT_THROW(make_class(IdealCtx(m(f0)), SupFn(TailFn::superlinear(Rat(1)))), PreconditionError);
  EXPECT_EQ(cls(f0, one).to_json(), R"({"class":{"base":"pwl[(0,0);(1,1)]","sup":"pwl[(0,1);(1,1)]"}})");
}

TEST(FundamentalSequence, FirstElements) {
  const FundamentalSeq s = fundamental_sequence(4);
  ASSERT_EQ(s.elems.size(), 5u);
  EXPECT_EQ(s.elems[0].fn(), f0);
  EXPECT_EQ(cozero(s.elems[1].fn()), RSet::open(q(0), q(1, 2)));
  EXPECT_TRUE(oracle::leq_M(s.elems[1].fn(), f0));
  for (std::size_t n = 1; n < s.elems.size(); ++n) {
    EXPECT_EQ(cozero(s.elems[n].fn()), RSet::open(q(0), ratio(1, static_cast<long>(n) + 1)));
    EXPECT_TRUE(oracle::leq_M(s.elems[n].fn(), s.elems[n - 1].fn()));
    EXPECT_NE(s.elems[n], s.elems[n - 1]);
  }
}

// ---------------------------------------------------------------- properties

class LocalizationProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LocalizationProperties, EquivalenceAndRestriction) {
  Rng rng = Rng::derive(515, "localization", GetParam());
  const MElem f = random_m(rng, true);
  const PwlFn h = random_m(rng).fn();
  const LocalClass a = make_class(IdealCtx(f), SupFn(h));
  const Rat edge = *f.eps() * rng.unit();
  const PwlFn cut = PwlFn::from_points({{Rat(0), edge}, {edge, Rat(0)}, {Rat(1), Rat(0)}});
  const LocalClass b = make_class(IdealCtx(m(q(1, 2) * meet(f.fn(), cut))), SupFn(h));
  EXPECT_TRUE(equivalent(a, b));
  EXPECT_TRUE(equivalent(b, a));
  // A further restriction stays in the same class as the original.
  const MElem& fb = b.rep.ctx.f();
  const Rat edge2 = *fb.eps() * rng.unit();
  const PwlFn cut2 = PwlFn::from_points({{Rat(0), edge2}, {edge2, Rat(0)}, {Rat(1), Rat(0)}});
  const LocalClass c = make_class(IdealCtx(m(q(1, 2) * meet(fb.fn(), cut2))), SupFn(h));
  EXPECT_TRUE(equivalent(b, c));
  EXPECT_TRUE(equivalent(a, c));
}

TEST_P(LocalizationProperties, MinimalIdealAgainstSearch) {
  Rng rng = Rng::derive(515, "min-ideal", GetParam());
  const MElem f = random_m(rng, true);
  const PwlFn h = rng.unit() * random_m(rng).fn();
  const MinIdealReport r = minimal_ideal_dominates(make_class(IdealCtx(f), SupFn(h)));
  ASSERT_TRUE(r.verified()) << r.to_json();
  const auto germ = oracle::germ(h);
  EXPECT_EQ(r.mu, germ.first > 0 ? Rat(1) : germ.second);
  const long limit = static_cast<long>(ceil_of(1 / r.mu).get_si()) + 2;
  EXPECT_EQ(Int(least_dominating(r.g.fn(), cozero(r.f_prime.fn()), limit)), r.n);
}

TEST_P(LocalizationProperties, AdditionIsCommutativeAndAssociative) {
  Rng rng = Rng::derive(515, "add", GetParam());
  auto draw = [&] { return make_class(IdealCtx(random_m(rng, true)), SupFn(random_m(rng).fn())); };
  const LocalClass a = draw(), b = draw(), c = draw();
  EXPECT_TRUE(equivalent(add_classes(a, b), add_classes(b, a)));
  EXPECT_TRUE(equivalent(add_classes(add_classes(a, b), c), add_classes(a, add_classes(b, c))));
}

INSTANTIATE_TEST_SUITE_P(Random, LocalizationProperties, ::testing::Range<std::uint64_t>(0, 30));
