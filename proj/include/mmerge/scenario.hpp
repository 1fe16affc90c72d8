#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/merge.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

enum class Operator { kRmel, kRm, kGeneral };

inline Operator parse_operator(const std::string& s) {
  if (s == "rmel") return Operator::kRmel;
  if (s == "rm") return Operator::kRm;
  if (s == "general") return Operator::kGeneral;
  throw Error("unknown operator '" + s + "' (expected rmel, rm or general)");
}

inline std::string to_string(Operator op) {
  switch (op) {
    case Operator::kRmel: return "rmel";
    case Operator::kRm: return "rm";
    case Operator::kGeneral: return "general";
  }
  return "?";
}

// Runs the chosen operator; rmel and rm take exactly two bases.
inline MergeOutcome run_operator(Operator op, const std::vector<Formula>& bases, const Formula& upper,
                                 const Formula& lower, const MergeConfig& cfg) {
  if (op != Operator::kGeneral && bases.size() != 2) {
    throw Error("operator " + to_string(op) + " needs exactly 2 knowledge bases, got " +
                std::to_string(bases.size()));
  }
  switch (op) {
    case Operator::kRmel: return rmel_merge(bases[0], bases[1], upper, lower, cfg);
    case Operator::kRm: return rm_merge(bases[0], bases[1], upper, lower, cfg);
    case Operator::kGeneral: break;
  }
  return general_merge(KnowledgeProfile(bases, upper, lower, cfg.max_universe), cfg);
}

// One source: the correct base s, the mistakes it made and what it delivered.
struct Source {
  Formula s;
  TransformationSet injected;
  Formula k;
};

struct Scenario {
  std::uint64_t seed = 0;
  Universe universe;
  std::vector<Source> sources;
  Formula upper;
  Formula lower;

  // Builds a scenario from correct bases and mistakes; each k is derived.
  // Throws ProfileError unless the correct bases jointly entail `upper` and
  // are consistent with `lower`.
  static Scenario make(std::uint64_t seed, std::vector<std::pair<Formula, TransformationSet>> parts, Formula upper,
                       Formula lower) {
    Scenario sc;
    sc.seed = seed;
    sc.upper = std::move(upper);
    sc.lower = std::move(lower);
    std::vector<Formula> all;
    for (auto& [s, t] : parts) {
      Formula k = apply_set(t, s);
      all.push_back(s);
      all.push_back(k);
      sc.sources.push_back(Source{std::move(s), std::move(t), std::move(k)});
    }
    all.push_back(sc.upper);
    all.push_back(sc.lower);
    sc.universe = Universe::of(all);
    if (!entails(sc.correct(), sc.upper, sc.universe)) {
      throw ProfileError("correct bases do not entail the upper bound");
    }
    if (!consistent_with(sc.correct(), sc.lower, sc.universe)) {
      throw ProfileError("correct bases contradict the lower bound");
    }
    return sc;
  }

  // Conjunction of the correct bases.
  Formula correct() const {
    std::vector<Formula> fs;
    for (const auto& src : sources) fs.push_back(src.s);
    return conjoin(std::move(fs));
  }

  std::vector<Formula> delivered() const {
    std::vector<Formula> fs;
    for (const auto& src : sources) fs.push_back(src.k);
    return fs;
  }
};

namespace detail {

class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<Formula> random_literals(ScenarioRng& rng, const std::vector<Variable>& vars, std::size_t count) {
  std::vector<Variable> pool = vars;
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < count && !pool.empty(); ++i) {
    const std::size_t j = rng.below(pool.size());
    Formula v = Formula::Var(pool[j]);
    lits.push_back(rng.coin() ? Formula::Not(v) : v);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return lits;
}

// 1-3 clauses of 1-3 literals, as CNF or DNF.
inline Formula random_formula(ScenarioRng& rng, const std::vector<Variable>& vars) {
  const bool cnf = rng.coin();
  const std::size_t clauses = 1 + rng.below(3);
  std::vector<Formula> outer;
  for (std::size_t c = 0; c < clauses; ++c) {
    auto lits = random_literals(rng, vars, 1 + rng.below(3));
    outer.push_back(cnf ? disjoin(std::move(lits)) : conjoin(std::move(lits)));
  }
  return cnf ? conjoin(std::move(outer)) : disjoin(std::move(outer));
}

}  // namespace detail

inline constexpr std::size_t kMaxScenarioVars = 8;
inline constexpr std::size_t kMaxScenarioBudget = 2;
inline constexpr std::size_t kMaxResamples = 1000;

// Draws correct bases over x1..x<n_vars>, bounds they satisfy, and up to
// `mistake_budget` mistakes per source of the allowed kinds. Renamings move a
// variable to a name that no correct base or bound uses and that no other
// mistake targets, so every renaming is injective.
inline Scenario generate(std::uint64_t seed, std::size_t n_vars, std::size_t n_sources, std::size_t mistake_budget,
                         const MistakeKinds& kinds) {
  if (n_vars == 0 || n_vars > kMaxScenarioVars) {
    throw CapExceeded("scenario variables must be in 1.." + std::to_string(kMaxScenarioVars));
  }
  if (mistake_budget > kMaxScenarioBudget) {
    throw CapExceeded("mistake budget must be at most " + std::to_string(kMaxScenarioBudget));
  }
  if (n_sources == 0) throw Error("a scenario needs at least one source");

  detail::ScenarioRng rng(seed);
  std::vector<Variable> vars;
  for (std::size_t i = 1; i <= n_vars; ++i) vars.emplace_back("x" + std::to_string(i));
  const Universe u(vars);

  for (std::size_t attempt = 0; attempt < kMaxResamples; ++attempt) {
    std::vector<Formula> correct;
    for (std::size_t i = 0; i < n_sources; ++i) correct.push_back(detail::random_formula(rng, vars));
    const Formula all = conjoin(correct);
    const TruthTable all_table = tabulate(all, u);
    if (all_table.none()) continue;

    Formula upper = Formula::True();
    if (rng.coin()) {
      Formula clause = disjoin(detail::random_literals(rng, vars, 1 + rng.below(2)));
      if (all_table.subset_of(tabulate(clause, u))) upper = clause;
    }
    Formula lower = Formula::True();
    if (rng.coin()) {
      Formula lit = detail::random_literals(rng, vars, 1).front();
      if (all_table.intersects(tabulate(lit, u))) lower = lit;
    }

    std::set<Variable> used;
    for (const auto& f : correct) {
      for (const auto& v : variables(f)) used.insert(v);
    }
    for (const auto& v : variables(upper)) used.insert(v);
    for (const auto& v : variables(lower)) used.insert(v);

    std::vector<std::pair<Formula, TransformationSet>> parts;
    for (const auto& s : correct) {
      TransformationSet injected;
      const std::size_t count = mistake_budget == 0 ? 0 : rng.below(mistake_budget + 1);
      for (std::size_t m = 0; m < count; ++m) {
        std::vector<int> allowed;
        if (kinds.renaming) allowed.push_back(0);
        if (kinds.generalization) allowed.push_back(1);
        if (kinds.particularization) allowed.push_back(2);
        if (allowed.empty()) break;
        const int kind = allowed[rng.below(allowed.size())];
        if (kind == 0) {
          std::vector<Variable> from;
          for (const auto& v : variables(s)) {
            if (!injected.renames(v)) from.push_back(v);
          }
          std::vector<Variable> to;
          for (const auto& v : vars) {
            if (!used.contains(v)) to.push_back(v);
          }
          if (from.empty() || to.empty()) continue;
          const Variable target = to[rng.below(to.size())];
          injected.insert(Renaming(from[rng.below(from.size())], target));
          used.insert(target);
        } else if (kind == 1) {
          const auto in_s = variables(apply_set(injected, s));
          if (in_s.empty()) continue;
          std::vector<Variable> pick(in_s.begin(), in_s.end());
          injected.insert(Generalization{pick[rng.below(pick.size())]});
        } else {
          injected.insert(Particularization{vars[rng.below(vars.size())]});
        }
      }
      parts.emplace_back(s, std::move(injected));
    }
    Scenario sc = Scenario::make(seed, std::move(parts), upper, lower);
    sc.universe = Universe(vars);
    for (const auto& src : sc.sources) sc.universe.add_all(src.k);
    return sc;
  }
  throw CapExceeded("scenario resampling limit exceeded");
}

struct RecoveryReport {
  bool admissible = false;
  // The result entails no clause of at most two literals that the correct
  // bases do not entail.
  bool sound_wrt_S = false;
  // The result entails the conjunction of the correct bases.
  bool complete_wrt_S = false;
  // Full equivalence with the correct bases; only computed for scenario
  // universes of at most six variables.
  std::optional<bool> equivalent_to_S;
  std::size_t disjuncts = 0;
  std::size_t level = 0;
  double best_score = 0.0;
  std::size_t clauses_checked = 0;
  std::size_t unsound_clauses = 0;
  std::size_t evaluations = 0;
};

inline RecoveryReport evaluate(const Scenario& sc, Operator op, const MergeConfig& cfg) {
  const MergeOutcome outcome = run_operator(op, sc.delivered(), sc.upper, sc.lower, cfg);
  RecoveryReport r;
  r.admissible = outcome.admissible();
  r.disjuncts = outcome.disjuncts.size();
  r.evaluations = outcome.evaluations;
  if (r.admissible) {
    r.level = outcome.disjuncts.front().size;
    r.best_score = outcome.disjuncts.front().score;
  }

  Universe u(sc.universe.vars(), TruthTable::kMaxVars);
  for (const auto& v : outcome.universe) u.add(v);
  const TruthTable result = tabulate(outcome.result, u);
  const TruthTable correct = tabulate(sc.correct(), u);
  r.complete_wrt_S = result.subset_of(correct);
  if (sc.universe.size() <= 6) r.equivalent_to_S = result == correct;

  // Every clause of one or two literals over the scenario universe.
  std::vector<TruthTable> literals;
  for (std::size_t i = 0; i < sc.universe.size(); ++i) {
    const TruthTable v = tabulate(Formula::Var(sc.universe[i]), u);
    literals.push_back(v);
    literals.push_back(~v);
  }
  auto check = [&](const TruthTable& clause) {
    ++r.clauses_checked;
    if (!correct.subset_of(clause) && result.subset_of(clause)) ++r.unsound_clauses;
  };
  for (std::size_t i = 0; i < literals.size(); ++i) {
    check(literals[i]);
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      if (j == i + 1 && i % 2 == 0) continue;  // x | !x
      check(literals[i] | literals[j]);
    }
  }
  r.sound_wrt_S = r.unsound_clauses == 0;
  return r;
}

// "admissible=1 sound=1 complete=0 ..." on one line.
inline std::string to_record(const RecoveryReport& r) {
  char score[64];
  std::snprintf(score, sizeof score, "%.6f", r.best_score);
  std::string out = "admissible=" + std::to_string(r.admissible) + " sound=" + std::to_string(r.sound_wrt_S) +
                    " complete=" + std::to_string(r.complete_wrt_S) + " equivalent=" +
                    (r.equivalent_to_S ? std::to_string(*r.equivalent_to_S) : std::string("-")) +
                    " disjuncts=" + std::to_string(r.disjuncts) + " level=" + std::to_string(r.level) +
                    " score=" + (r.admissible ? std::string(score) : std::string("-")) +
                    " unsound_clauses=" + std::to_string(r.unsound_clauses);
  return out;
}

}  // namespace mmerge
