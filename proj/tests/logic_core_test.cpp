#include <gtest/gtest.h>

#include <random>

#include "mmerge/mmerge.hpp"
#include "oracle.hpp"

using namespace mmerge;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Formula V(const char* s) { return Formula::Var(s); }

std::vector<std::string> names_of(const Universe& u) {
  std::vector<std::string> out;
  for (const auto& v : u) out.push_back(v.name());
  return out;
}

}  // namespace

TEST(Variable, AcceptsIdentifiersWithPrimes) {
  EXPECT_NO_THROW(Variable("x1"));
  EXPECT_NO_THROW(Variable("_tmp"));
  EXPECT_NO_THROW(Variable("a''"));
  EXPECT_EQ(Variable("a").primed().name(), "a'");
}

TEST(Variable, RejectsMalformedNames) {
  EXPECT_THROW(Variable(""), Error);
  EXPECT_THROW(Variable("1a"), Error);
  EXPECT_THROW(Variable("a'b"), Error);
  EXPECT_THROW(Variable("a-b"), Error);
}

TEST(Parser, GrammarExamples) {
  EXPECT_EQ(P("x1 -> y"), Formula::Implies(V("x1"), V("y")));
  EXPECT_EQ(P("!(a & b) | true"), Formula::Or(Formula::Not(Formula::And(V("a"), V("b"))), Formula::True()));
  EXPECT_EQ(P("a <-> a'"), Formula::Iff(V("a"), V("a'")));
}

TEST(Parser, Precedence) {
  EXPECT_EQ(P("a | b & c"), Formula::Or(V("a"), Formula::And(V("b"), V("c"))));
  EXPECT_EQ(P("!a & b"), Formula::And(Formula::Not(V("a")), V("b")));
  EXPECT_EQ(P("a -> b | c"), Formula::Implies(V("a"), Formula::Or(V("b"), V("c"))));
  EXPECT_EQ(P("a <-> b -> c"), Formula::Iff(V("a"), Formula::Implies(V("b"), V("c"))));
  EXPECT_EQ(P("a -> b -> c"), Formula::Implies(V("a"), Formula::Implies(V("b"), V("c"))));
  EXPECT_EQ(P("a & b & c"), Formula::And({V("a"), V("b"), V("c")}));
  EXPECT_EQ(P("!!a"), Formula::Not(Formula::Not(V("a"))));
}

TEST(Parser, ReportsLineAndColumn) {
  try {
    P("a &\n  (b | )");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
  try {
    P("(a | b");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.message(), "expected ')'");
  }
}

TEST(Parser, RejectsEmptyInput) {
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("   \n "), ParseError);
  try {
    P("");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.message(), "empty formula");
  }
}

TEST(Parser, RejectsTrailingInput) {
  EXPECT_THROW(P("a b"), ParseError);
  EXPECT_THROW(P("a & & b"), ParseError);
  EXPECT_THROW(P("a -"), ParseError);
}

TEST(Printer, CanonicalForms) {
  EXPECT_EQ(to_string(P("x1 -> y")), "x1 -> y");
  EXPECT_EQ(to_string(P("!(a & b) | true")), "!(a & b) | true");
  EXPECT_EQ(to_string(P("(a -> b) -> c")), "(a -> b) -> c");
  EXPECT_EQ(to_string(P("a & (b & c)")), "a & (b & c)");
  EXPECT_EQ(to_string(P("  a<->a'  ")), "a <-> a'");
}

TEST(Printer, ParseOfPrintIsStructuralIdentity) {
  std::mt19937_64 rng(11);
  const auto vars = oracle::names(4);
  for (int i = 0; i < 300; ++i) {
    const Formula f = oracle::random_formula(rng, vars, 4);
    const Formula g = parse_formula(to_string(f));
    EXPECT_EQ(g, f) << to_string(f);
    EXPECT_EQ(to_string(g), to_string(f));
  }
}

TEST(Universe, InsertionOrderAndCap) {
  Universe u;
  u.add(Variable("b"));
  u.add(Variable("a"));
  EXPECT_FALSE(u.add(Variable("b")));
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0].name(), "b");
  EXPECT_EQ(*u.index_of(Variable("a")), 1u);

  Universe small(2);
  small.add(Variable("a"));
  small.add(Variable("b"));
  EXPECT_THROW(small.add(Variable("c")), CapExceeded);
}

TEST(Universe, OfCollectsInOccurrenceOrder) {
  const Universe u = Universe::of({P("c & a"), P("b | a")});
  EXPECT_EQ(names_of(u), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(Models, Examples) {
  const Universe a{Variable("a")};
  const auto all = models(Formula::True(), a);
  EXPECT_EQ(all.size(), 2u);
  EXPECT_TRUE(all.contains(Model::from_string("0")));
  EXPECT_TRUE(all.contains(Model::from_string("1")));

  const Universe ab{Variable("a"), Variable("b")};
  const auto one = models(P("a & !b"), ab);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.to_vector().front(), Model::from_string("10"));

  EXPECT_EQ(models(P("a | b"), ab).size(), oracle::count_models(P("a | b"), {"a", "b"}));
  EXPECT_EQ(models(P("a | b"), ab).size(), 3u);
}

TEST(Models, MissingVariableAndCap) {
  const Universe a{Variable("a")};
  EXPECT_THROW(models(P("a & b"), a), UniverseError);
  Universe big(TruthTable::kMaxVars);
  for (int i = 0; i < 17; ++i) big.add(Variable("v" + std::to_string(i)));
  EXPECT_NO_THROW(Universe(std::vector<Variable>(big.vars().begin(), big.vars().begin() + 16)));
  EXPECT_THROW(Universe(big.vars()), CapExceeded);
}

TEST(Entails, Examples) {
  const Universe ab{Variable("a"), Variable("b")};
  EXPECT_TRUE(entails(P("a & b"), P("a"), ab));
  EXPECT_FALSE(entails(P("a"), P("a & b"), ab));

  const Formula f = P("!x1' & !x2");
  const Formula g = P("x1");
  const Universe u = Universe::of({f, g});
  EXPECT_EQ(entails(f, g, u), oracle::entails(f, g, names_of(u)));
  EXPECT_FALSE(entails(f, g, u));
}

TEST(ConsistentWith, Examples) {
  const Universe ab{Variable("a"), Variable("b")};
  EXPECT_FALSE(consistent_with(P("a"), P("!a"), ab));
  EXPECT_TRUE(consistent_with(P("a"), P("b"), ab));
  const Formula f = P("a' & !a");
  const Universe u = Universe::of({f});
  EXPECT_EQ(consistent_with(f, Formula::True(), u), oracle::satisfiable(f, names_of(u)));
  EXPECT_TRUE(consistent_with(f, Formula::True(), u));
}

TEST(Substitute, Examples) {
  const Formula g = substitute(P("x -> y"), Variable("x"), true);
  EXPECT_EQ(g, P("true -> y"));
  EXPECT_TRUE(equivalent(g, P("y"), Universe{Variable("y")}));
  EXPECT_EQ(substitute(P("x | y"), Variable("x"), Variable("z")), P("z | y"));
  const Formula a = P("a");
  EXPECT_TRUE(substitute(a, Variable("b"), Variable("c")).same_node(a));
}

TEST(SimultaneousSubstitute, Examples) {
  const std::vector<std::pair<Variable, Variable>> swap{{Variable("a"), Variable("b")},
                                                        {Variable("b"), Variable("a")}};
  EXPECT_EQ(simultaneous_substitute(P("a & b"), swap), P("b & a"));
  const std::vector<std::pair<Variable, Variable>> prime{{Variable("x1"), Variable("x1'")}};
  EXPECT_EQ(simultaneous_substitute(P("x1 & a"), prime), P("x1' & a"));
  const Formula f = P("a -> b | c");
  EXPECT_EQ(simultaneous_substitute(f, {}), f);
}

TEST(SimultaneousSubstitute, RejectsDuplicateKeys) {
  const std::vector<std::pair<Variable, Variable>> dup{{Variable("a"), Variable("b")},
                                                       {Variable("a"), Variable("c")}};
  EXPECT_THROW(simultaneous_substitute(P("a"), dup), Error);
}

TEST(Forget, Examples) {
  const Universe a{Variable("a")};
  EXPECT_TRUE(equivalent(forget(P("a & b"), {Variable("a")}), P("a"), a));
  EXPECT_EQ(forget(P("a | b"), {Variable("a")}), Formula::True());
  const Formula f = P("(a -> b) & !c");
  EXPECT_EQ(forget(f, variables_in_order(f)), f);
}

TEST(Forget, RejectsKeepOutsideUniverse) {
  const Universe u{Variable("a"), Variable("b")};
  EXPECT_THROW(forget(P("a"), Universe{Variable("z")}, u), UniverseError);
  EXPECT_THROW(forget(P("a & q"), Universe{Variable("a")}, u), UniverseError);
  EXPECT_NO_THROW(forget(P("a & b"), Universe{Variable("a")}, u));
}

TEST(Forget, MatchesProjectionOracle) {
  std::mt19937_64 rng(5);
  const auto vars = oracle::names(5);
  std::vector<Variable> all;
  for (const auto& n : vars) all.emplace_back(n);
  for (int i = 0; i < 200; ++i) {
    const Formula f = oracle::random_formula(rng, vars, 4);
    std::vector<Variable> keep;
    std::vector<std::string> keep_names;
    for (const auto& v : all) {
      if (rng() % 2) {
        keep.push_back(v);
        keep_names.push_back(v.name());
      }
    }
    const Formula g = forget(f, keep);
    for (const auto& v : variables(g)) {
      EXPECT_TRUE(std::find(keep.begin(), keep.end(), v) != keep.end()) << to_string(g);
    }
    EXPECT_EQ(oracle::model_set(g, keep_names), oracle::projected_models(f, vars, keep_names)) << to_string(f);
  }
}

// Properties, checked against the recursive evaluator.

class LogicProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2024};
  std::vector<std::string> vars = oracle::names(6);
  Universe u = [this] {
    Universe out;
    for (const auto& n : vars) out.add(Variable(n));
    return out;
  }();
  Formula random() { return oracle::random_formula(rng, vars, 4); }
};

TEST_F(LogicProperties, TabulationMatchesOracle) {
  for (int i = 0; i < 300; ++i) {
    const Formula f = random();
    const TruthTable t = tabulate(f, u);
    const auto rows = oracle::assignments(vars);
    for (std::size_t r = 0; r < rows.size(); ++r) ASSERT_EQ(t.test(r), oracle::eval(f, rows[r])) << to_string(f);
  }
}

TEST_F(LogicProperties, EntailmentReflexiveAndFalseEntailsAll) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    EXPECT_TRUE(entails(f, f, u));
    EXPECT_TRUE(entails(Formula::False(), f, u));
  }
}

TEST_F(LogicProperties, ModelsOfConnectives) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    const Formula g = random();
    const auto mf = oracle::model_set(f, vars);
    const auto mg = oracle::model_set(g, vars);
    std::set<oracle::Assignment> inter, uni;
    std::set_intersection(mf.begin(), mf.end(), mg.begin(), mg.end(), std::inserter(inter, inter.end()));
    std::set_union(mf.begin(), mf.end(), mg.begin(), mg.end(), std::inserter(uni, uni.end()));
    EXPECT_EQ(models(Formula::And(f, g), u).size(), inter.size());
    EXPECT_EQ(models(Formula::Or(f, g), u).size(), uni.size());
    EXPECT_EQ(tabulate(Formula::And(f, g), u), tabulate(f, u) & tabulate(g, u));
    EXPECT_EQ(tabulate(Formula::Or(f, g), u), tabulate(f, u) | tabulate(g, u));
  }
}

TEST_F(LogicProperties, RenamingToFreshVariableIsInvertible) {
  const Variable fresh("fresh");
  Universe wide = u;
  wide.add(fresh);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    const Variable x(vars[rng() % vars.size()]);
    const Formula back = substitute(substitute(f, x, fresh), fresh, x);
    EXPECT_TRUE(equivalent(back, f, wide));
  }
}

TEST_F(LogicProperties, ForgetComposes) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    std::vector<Variable> y, z;
    for (const auto& v : u) {
      if (rng() % 3 != 0) {
        y.push_back(v);
        if (rng() % 2) z.push_back(v);
      }
    }
    EXPECT_TRUE(equivalent(forget(forget(f, y), z), forget(f, z), u));
  }
}

TEST_F(LogicProperties, ParsePrintIsSemanticIdentity) {
  for (int i = 0; i < 200; ++i) {
    const Formula f = random();
    EXPECT_TRUE(equivalent(parse_formula(to_string(f)), f, u));
  }
}

TEST_F(LogicProperties, SimplifyPreservesModels) {
  for (int i = 0; i < 300; ++i) {
    const Formula f = random();
    const Formula s = simplify(f);
    EXPECT_TRUE(equivalent(s, f, u)) << to_string(f) << " => " << to_string(s);
    if (!s.is_const()) {
      std::function<bool(const Formula&)> has_const = [&](const Formula& g) {
        if (g.is_const()) return true;
        return std::ranges::any_of(g.children(), has_const);
      };
      EXPECT_FALSE(has_const(s)) << to_string(s);
    }
  }
}

TEST(FormulaFromModels, RoundTrips) {
  const Universe u{Variable("a"), Variable("b"), Variable("c")};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Formula f = oracle::random_formula(rng, {"a", "b", "c"}, 3);
    const TruthTable t = tabulate(f, u);
    EXPECT_EQ(tabulate(formula_from_models(t, u), u), t);
  }
  EXPECT_EQ(formula_from_models(TruthTable(3, false), u), Formula::False());
  EXPECT_EQ(formula_from_models(TruthTable(3, true), u), Formula::True());
}

TEST(KnowledgeProfile, Violations) {
  EXPECT_EQ(profile_violations({}, Formula::True(), Formula::True(), 16),
            std::vector<std::string>{"no knowledge bases"});
  EXPECT_EQ(profile_violations({P("a")}, P("a"), P("!a"), 16), std::vector<std::string>{"A and B contradict"});
  EXPECT_EQ(profile_violations({P("a")}, P("a & !a"), Formula::True(), 16).front(),
            "upper bound A is unsatisfiable");
  EXPECT_TRUE(profile_violations({P("a"), P("!a")}, Formula::True(), Formula::True(), 16).empty());
  EXPECT_THROW(KnowledgeProfile({P("a")}, P("b"), P("!b")), ProfileError);
}
