#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mmerge/mmerge.hpp"
#include "oracle.hpp"

using namespace mmerge;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Variable X(const char* s) { return Variable(s); }

Universe universe_of(const std::vector<std::string>& names) {
  Universe u;
  for (const auto& n : names) u.add(Variable(n));
  return u;
}

// Restricted similarity computed from projected model sets.
double restricted_oracle(const Formula& k1, const Formula& k2, const std::vector<std::string>& x) {
  const std::size_t n = x.size();
  double total = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> y;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) y.push_back(x[i]);
    }
    const auto m1 = oracle::projected_models(k1, x, y);
    const auto m2 = oracle::projected_models(k2, x, y);
    long agree = 0;
    for (const auto& a : oracle::assignments(y)) agree += m1.contains(a) == m2.contains(a);
    const long delta = 2 * agree - (1L << y.size());
    total += static_cast<double>(delta) / static_cast<double>(n - y.size() + 1);
  }
  return total;
}

const double kLog3 = std::log2(3.0);

}  // namespace

TEST(DeltaLinear, Examples) {
  EXPECT_EQ(delta_linear(P("a"), P("a"), universe_of({"a"})), 2);
  EXPECT_EQ(delta_linear(P("a"), P("!a"), universe_of({"a"})), -2);
  const long agree = static_cast<long>(oracle::agreement(P("a"), P("b"), {"a", "b"}));
  EXPECT_EQ(delta_linear(P("a"), P("b"), universe_of({"a", "b"})), 2 * agree - 4);
  EXPECT_EQ(delta_linear(P("a"), P("b"), universe_of({"a", "b"})), 0);
}

TEST(DeltaQuotient, Examples) {
  EXPECT_EQ(delta_quotient(P("a"), P("!a"), universe_of({"a"})), 0.0);
  EXPECT_EQ(delta_quotient(P("a"), P("b"), universe_of({"a", "b"})), 1.0);
  EXPECT_TRUE(std::isinf(delta_quotient(P("a"), P("a"), universe_of({"a"}))));
  EXPECT_GT(delta_quotient(P("a"), P("a"), universe_of({"a"})), 0.0);
}

TEST(DeltaRestricted, Examples) {
  EXPECT_EQ(delta_restricted(P("a"), P("a"), universe_of({"a"})), 2.0);

  // Y={a}: 2 with weight 1/2; Y={b}: -2 with weight 1/2; Y={a,b}: the
  // formulas agree on the two models with a=0, so 2*2-4 = 0.
  const Formula k1 = P("a & b");
  const Formula k2 = P("a & !b");
  EXPECT_DOUBLE_EQ(restricted_oracle(k1, k2, {"a", "b"}), 0.0);
  EXPECT_DOUBLE_EQ(delta_restricted(k1, k2, universe_of({"a", "b"})), 0.0);

  const Formula d1 = P("a | c");
  const Formula d2 = P("!b");
  const double expected = restricted_oracle(d1, d2, {"a", "c", "b"});
  EXPECT_DOUBLE_EQ(expected, 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(delta_restricted(d1, d2, universe_of({"a", "c", "b"})), expected);
}

TEST(DeltaRestricted, CapOnSubsetEnumeration) {
  Universe big;
  for (int i = 0; i < 11; ++i) big.add(Variable("v" + std::to_string(i)));
  EXPECT_THROW(delta_restricted(P("v0"), P("v1"), big), CapExceeded);
}

TEST(DeltaMode, Parsing) {
  EXPECT_EQ(parse_delta_mode("linear"), DeltaMode::kLinear);
  EXPECT_EQ(parse_delta_mode("quotient"), DeltaMode::kQuotient);
  EXPECT_EQ(parse_delta_mode("restricted"), DeltaMode::kRestricted);
  EXPECT_THROW(parse_delta_mode("cosine"), Error);
  EXPECT_EQ(to_string(DeltaMode::kRestricted), "restricted");
}

TEST(RankTuple, Examples) {
  const Universe a = universe_of({"a"});
  const std::vector<Formula> same{P("a"), P("a")};
  EXPECT_NEAR(rank_tuple(TransformationTuple(2), same, a), -kLog3, 1e-12);
  EXPECT_NEAR(rank_tuple(TransformationTuple(2), same, a), -1.585, 1e-3);

  // Renaming a variable the base does not mention leaves it equivalent.
  const TransformationTuple one({TransformationSet{Renaming(X("b"), X("c"))}, TransformationSet{}});
  EXPECT_NEAR(rank_tuple(one, same, a), 1.0 - kLog3, 1e-12);

  const std::vector<Formula> opposite{P("a"), P("!a")};
  EXPECT_DOUBLE_EQ(rank_tuple(TransformationTuple(2), opposite, a), 0.0);
  EXPECT_THROW(rank_tuple(TransformationTuple(3), opposite, a), TransformError);
}

TEST(RankRenamingPair, Examples) {
  const Universe a = universe_of({"a"});
  EXPECT_NEAR(rank_renaming_pair(Substitution{}, Substitution{}, P("a"), P("a"), a), -kLog3, 1e-12);

  const Universe w = universe_of({"a", "b", "a'", "b'"});
  const Substitution y = Substitution::parse("a->b");
  const Substitution z = Substitution::parse("b->b'");
  const std::size_t agree = oracle::agreement(P("b"), P("b'"), {"a", "b", "a'", "b'"});
  EXPECT_NEAR(rank_renaming_pair(y, z, P("a"), P("b"), w), 2.0 - std::log2(static_cast<double>(agree) + 1), 1e-12);

  const Substitution to_prime = Substitution::parse("a->a'");
  EXPECT_DOUBLE_EQ(rank_renaming_pair(Substitution{}, to_prime, P("!a'"), P("a"), w), 1.0);
}

TEST(Substitution, ParseAndPrint) {
  const Substitution s = Substitution::parse("a->b, c -> c'");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(to_string(s), "ren a->b, ren c->c'");
  EXPECT_TRUE(Substitution::parse("-").empty());
  EXPECT_TRUE(Substitution::parse("").empty());
  EXPECT_TRUE(Substitution::parse("a->a").empty());
  EXPECT_THROW(Substitution::parse("a->b, a->c"), Error);
  EXPECT_THROW(Substitution::parse("a=>b"), Error);
}

TEST(Substitution, Permitted) {
  const Universe x = universe_of({"a", "b"});
  const std::map<Variable, Variable> primes{{X("a"), X("a'")}, {X("b"), X("b'")}};
  EXPECT_TRUE(Substitution::parse("a->b, b->a").permitted(x, primes));
  EXPECT_TRUE(Substitution::parse("a->a'").permitted(x, primes));
  EXPECT_FALSE(Substitution::parse("a->b'").permitted(x, primes));
  EXPECT_FALSE(Substitution::parse("a->q").permitted(x, primes));
  EXPECT_FALSE(Substitution::parse("q->a").permitted(x, primes));
}

class DeltaProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{99};
  std::vector<std::string> names = oracle::names(5);
  Universe u = universe_of(names);
  Formula random() { return oracle::random_formula(rng, names, 4); }
};

TEST_F(DeltaProperties, LinearMatchesOracle) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    const Formula g = random();
    const auto agree = static_cast<std::int64_t>(oracle::agreement(f, g, names));
    EXPECT_EQ(delta_linear(f, g, u), 2 * agree - 32);
  }
}

TEST_F(DeltaProperties, SymmetryInvarianceMaximumPartition) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    const Formula g = random();
    const std::int64_t d = delta_linear(f, g, u);
    EXPECT_EQ(d, delta_linear(g, f, u));
    EXPECT_EQ(d, delta_linear(Formula::Not(Formula::Not(f)), simplify(g), u));
    EXPECT_EQ(delta_linear(f, f, u), 32);
    EXPECT_LE(d, 32);
    EXPECT_EQ(d + delta_linear(f, Formula::Not(g), u), 0);
  }
}

TEST_F(DeltaProperties, RestrictedMatchesOracleAndReducesAtOneVariable) {
  for (int i = 0; i < 60; ++i) {
    const Formula f = oracle::random_formula(rng, {"v0", "v1", "v2"}, 3);
    const Formula g = oracle::random_formula(rng, {"v0", "v1", "v2"}, 3);
    EXPECT_NEAR(delta_restricted(f, g, universe_of({"v0", "v1", "v2"})), restricted_oracle(f, g, {"v0", "v1", "v2"}),
                1e-9);
    const Formula h = oracle::random_formula(rng, {"v0"}, 3);
    const Formula k = oracle::random_formula(rng, {"v0"}, 3);
    const Universe one = universe_of({"v0"});
    EXPECT_DOUBLE_EQ(delta_restricted(h, k, one), static_cast<double>(delta_linear(h, k, one)));
  }
}

TEST_F(DeltaProperties, NeutralTransformationCostsExactlyOne) {
  for (int i = 0; i < 100; ++i) {
    const std::vector<Formula> bases{random(), random()};
    const TransformationTuple none(2);
    // Renaming a variable the base does not mention changes nothing.
    const TransformationTuple one({TransformationSet{Renaming(X("zz"), X("zy"))}, TransformationSet{}});
    EXPECT_NEAR(rank_tuple(one, bases, u), rank_tuple(none, bases, u) + 1.0, 1e-12);
  }
}

TEST_F(DeltaProperties, SimilarityModes) {
  for (int i = 0; i < 100; ++i) {
    const Formula f = random();
    const Formula g = random();
    EXPECT_EQ(similarity_value(f, g, u, DeltaMode::kLinear), static_cast<double>(oracle::agreement(f, g, names)));
    const double q = similarity_value(f, g, u, DeltaMode::kQuotient);
    EXPECT_TRUE(std::isfinite(q));
    EXPECT_GE(q, 0.0);
  }
  EXPECT_EQ(similarity_value(P("v0"), P("v0"), u, DeltaMode::kQuotient), 32.0);
}
