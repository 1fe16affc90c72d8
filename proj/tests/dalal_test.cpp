#include <gtest/gtest.h>

#include <random>

#include "mmerge/mmerge.hpp"
#include "oracle.hpp"

using namespace mmerge;

namespace {

Formula P(const char* s) { return parse_formula(s); }

Universe universe_of(const std::vector<std::string>& names) {
  Universe u;
  for (const auto& n : names) u.add(Variable(n));
  return u;
}

}  // namespace

TEST(Dalal, Examples) {
  const Universe ab = universe_of({"a", "b"});
  const Formula r = dalal_revise(P("!a & !b"), P("a | b"), ab);
  EXPECT_EQ(oracle::model_set(r, {"a", "b"}), oracle::dalal(P("!a & !b"), P("a | b"), {"a", "b"}));
  EXPECT_TRUE(equivalent(r, P("(a & !b) | (!a & b)"), ab));

  EXPECT_TRUE(equivalent(dalal_revise(P("a | b"), P("!a | !b"), ab), P("(a | b) & (!a | !b)"), ab));
  EXPECT_TRUE(equivalent(dalal_revise(P("a"), P("!a"), universe_of({"a"})), P("!a"), universe_of({"a"})));
}

TEST(Dalal, Errors) {
  const Universe a = universe_of({"a"});
  EXPECT_THROW(dalal_revise(P("a"), P("a & !a"), a), ProfileError);
  EXPECT_EQ(dalal_revise(P("a & !a"), P("a"), a), P("a"));
}

TEST(Dalal, ExhaustiveTwoVariables) {
  const std::vector<std::string> names{"a", "b"};
  const Universe u = universe_of(names);
  for (std::uint32_t kt = 0; kt < 16; ++kt) {
    for (std::uint32_t pt = 1; pt < 16; ++pt) {
      TruthTable ktab(2, false), ptab(2, false);
      for (std::size_t r = 0; r < 4; ++r) {
        ktab.set(r, (kt >> r) & 1u);
        ptab.set(r, (pt >> r) & 1u);
      }
      const Formula k = formula_from_models(ktab, u);
      const Formula p = formula_from_models(ptab, u);
      EXPECT_EQ(oracle::model_set(dalal_revise(k, p, u), names), oracle::dalal(k, p, names))
          << to_string(k) << " * " << to_string(p);
    }
  }
}

TEST(Dalal, RandomFiveVariables) {
  std::mt19937_64 rng(55);
  const auto names = oracle::names(5);
  const Universe u = universe_of(names);
  int checked = 0;
  while (checked < 200) {
    const Formula k = oracle::random_formula(rng, names, 3);
    const Formula p = oracle::random_formula(rng, names, 3);
    if (!oracle::satisfiable(p, names)) continue;
    const Formula r = dalal_revise(k, p, u);
    EXPECT_EQ(oracle::model_set(r, names), oracle::dalal(k, p, names));
    EXPECT_TRUE(oracle::entails(r, p, names));
    ++checked;
  }
}
