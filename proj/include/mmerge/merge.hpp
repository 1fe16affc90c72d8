#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/profile.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/similarity.hpp"
#include "mmerge/substitution.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/truth_table.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

enum class Ranking {
  kEqualLikeliness,  // fewest transformations
  kHeuristic,        // rank_tuple / rank_renaming_pair
  kTable,            // explicit scores keyed by provenance print form
};

// Whether ranking compares only tuples of the minimal admissible size, or
// every admissible tuple within the budget.
enum class RankScope { kMinimalSize, kAllSizes };

// Where renamings may send a variable y of a base:
//   kPermitted: any other problem variable, or y's own fresh name(s);
//   kRelation:  any problem variable or fresh name not occurring in the base.
enum class RenamingTargets { kPermitted, kRelation };

struct MistakeKinds {
  bool renaming = true;
  bool generalization = true;
  bool particularization = true;

  static MistakeKinds renaming_only() { return {true, false, false}; }
  static MistakeKinds parse(const std::string& csv);
};

inline MistakeKinds MistakeKinds::parse(const std::string& csv) {
  MistakeKinds k{false, false, false};
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    if (item == "renaming" || item == "ren") {
      k.renaming = true;
    } else if (item == "generalization" || item == "gen") {
      k.generalization = true;
    } else if (item == "particularization" || item == "par") {
      k.particularization = true;
    } else {
      throw Error("unknown mistake kind '" + item + "'");
    }
    item.clear();
  };
  for (char c : csv) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      item += c;
    }
  }
  flush();
  return k;
}

inline std::string to_string(const MistakeKinds& k) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(k.renaming, "renaming");
  add(k.generalization, "generalization");
  add(k.particularization, "particularization");
  return out.empty() ? "none" : out;
}

struct MergeConfig {
  std::size_t budget_per_base = 2;
  DeltaMode delta_mode = DeltaMode::kLinear;
  Ranking ranking = Ranking::kHeuristic;
  std::size_t max_fresh_primes = 1;
  MistakeKinds kinds;
  RankScope rank_scope = RankScope::kMinimalSize;
  RenamingTargets renaming_targets = RenamingTargets::kPermitted;
  std::map<std::string, double> score_table;  // used with Ranking::kTable
  std::size_t max_universe = Universe::kDefaultMaxVars;
  std::size_t max_evaluations = 50'000'000;
};

struct Disjunct {
  Formula formula;
  // Every transformation tuple that yields this disjunct (up to
  // equivalence), sorted by print form.
  std::vector<TransformationTuple> provenance;
  RankScore score = 0.0;
  std::size_t size = 0;
};

struct MergeOutcome {
  std::vector<Disjunct> disjuncts;
  Formula result = Formula::False();
  // Problem variables plus the fresh names the search could introduce.
  Universe universe;
  std::size_t evaluations = 0;

  // False means no mistake hypothesis met both bounds; result is `false`.
  bool admissible() const { return !disjuncts.empty(); }
};

// The merge problem: bases and bounds, their alphabet X and the working
// universe W = X plus fresh names.
class MergeProblem {
 public:
  MergeProblem(std::vector<Formula> bases, Formula upper, Formula lower, std::size_t fresh_per_var,
               std::size_t max_universe)
      : profile_(std::move(bases), std::move(upper), std::move(lower), max_universe) {
    const Universe& x = profile_.universe();
    primes_ = fresh_primes(x, fresh_per_var);
    working_ = Universe(x.vars(), TruthTable::kMaxVars);
    for (const auto& v : x) {
      for (const auto& p : primes_.at(v)) working_.add(p);
    }
    if (working_.size() > max_universe) {
      throw CapExceeded("merge universe with fresh names has " + std::to_string(working_.size()) +
                        " variables (limit " + std::to_string(max_universe) + ")");
    }
    upper_table_ = tabulate(profile_.upper(), working_);
    lower_table_ = tabulate(profile_.lower(), working_);
  }

  const KnowledgeProfile& profile() const { return profile_; }
  const std::vector<Formula>& bases() const { return profile_.bases(); }
  const Universe& alphabet() const { return profile_.universe(); }
  const Universe& working() const { return working_; }
  const std::vector<Variable>& primes_of(const Variable& v) const { return primes_.at(v); }
  const TruthTable& upper_table() const { return upper_table_; }
  const TruthTable& lower_table() const { return lower_table_; }

  // First fresh name of each problem variable.
  std::map<Variable, Variable> designated_primes() const {
    std::map<Variable, Variable> out;
    for (const auto& [v, ps] : primes_) out.emplace(v, ps.front());
    return out;
  }

 private:
  KnowledgeProfile profile_;
  std::map<Variable, std::vector<Variable>> primes_;
  Universe working_;
  TruthTable upper_table_;
  TruthTable lower_table_;
};

namespace detail {

struct TableHash {
  std::size_t operator()(const TruthTable& t) const noexcept {
    std::size_t h = t.num_vars();
    for (auto w : t.words()) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 7));
    return h;
  }
};

// Transformed versions of one base sharing a truth table.
struct Variant {
  Formula formula;
  TruthTable table;
  std::vector<TransformationSet> sets;
};

// Candidate transformation sets for one base, generated level by level
// (level = set size). A set picks at most one option from each group.
// Tables first reached at an earlier level are dropped: a larger set with
// the same effect can never be preferred.
class BaseSpace {
 public:
  BaseSpace(Formula base, std::vector<std::vector<Transformation>> groups, const Universe& working,
            const TruthTable& lower, std::size_t max_level, bool dedup_across_levels, std::size_t& evaluations,
            std::size_t max_evaluations)
      : base_(std::move(base)),
        groups_(std::move(groups)),
        working_(working),
        lower_(lower),
        max_level_(std::min(max_level, groups_.size())),
        dedup_(dedup_across_levels),
        evaluations_(evaluations),
        max_evaluations_(max_evaluations) {}

  std::size_t max_level() const { return max_level_; }

  const std::vector<Variant>& level(std::size_t s) {
    while (levels_.size() <= s) build_next();
    return levels_[s];
  }

 private:
  void build_next() {
    const std::size_t s = levels_.size();
    std::vector<Variant> out;
    std::unordered_map<TruthTable, std::size_t, TableHash> index;
    std::vector<Transformation> picked;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (picked.size() == s) {
        add(TransformationSet(picked), out, index);
        return;
      }
      for (std::size_t g = start; g < groups_.size(); ++g) {
        if (groups_.size() - g < s - picked.size()) break;
        for (const auto& opt : groups_[g]) {
          picked.push_back(opt);
          rec(g + 1);
          picked.pop_back();
        }
      }
    };
    rec(0);
    for (auto& v : out) {
      if (dedup_) seen_.emplace(v.table, true);
    }
    // Variants inconsistent with the lower bound cannot take part in any
    // admissible tuple.
    std::erase_if(out, [&](const Variant& v) { return !v.table.intersects(lower_); });
    levels_.push_back(std::move(out));
  }

  void add(TransformationSet set, std::vector<Variant>& out,
           std::unordered_map<TruthTable, std::size_t, TableHash>& index) {
    if (++evaluations_ > max_evaluations_) {
      throw CapExceeded("merge search exceeded " + std::to_string(max_evaluations_) + " evaluations");
    }
    Formula f = apply_set(set, base_);
    TruthTable t = tabulate(f, working_);
    if (dedup_ && seen_.contains(t)) return;
    auto [it, fresh] = index.emplace(t, out.size());
    if (fresh) {
      out.push_back(Variant{std::move(f), std::move(t), {std::move(set)}});
    } else {
      out[it->second].sets.push_back(std::move(set));
    }
  }

  Formula base_;
  std::vector<std::vector<Transformation>> groups_;
  const Universe& working_;
  const TruthTable& lower_;
  std::size_t max_level_;
  bool dedup_;
  std::size_t& evaluations_;
  std::size_t max_evaluations_;
  std::vector<std::vector<Variant>> levels_;
  std::unordered_map<TruthTable, bool, TableHash> seen_;
};

struct Admissible {
  std::vector<const Variant*> parts;
  TruthTable conj;
  std::size_t size;
};

// Breadth-first over the total size. Stops after the first level with an
// admissible tuple unless `all_levels` is set.
inline std::vector<Admissible> search(std::vector<BaseSpace>& spaces, const MergeProblem& problem, bool all_levels,
                                      std::size_t& evaluations, std::size_t max_evaluations) {
  const std::size_t n = spaces.size();
  std::size_t max_total = 0;
  for (auto& sp : spaces) max_total += sp.max_level();
  std::vector<Admissible> found;
  const TruthTable& upper = problem.upper_table();
  const TruthTable& lower = problem.lower_table();

  std::vector<std::size_t> sizes(n);
  std::vector<const Variant*> parts(n);
  for (std::size_t total = 0; total <= max_total; ++total) {
    // Levels are built up front so no level grows while it is iterated.
    for (auto& sp : spaces) sp.level(std::min(total, sp.max_level()));
    // Enumerate size compositions, then the product of variants.
    std::function<void(std::size_t, std::size_t, const TruthTable&)> pick = [&](std::size_t i, std::size_t left,
                                                                                 const TruthTable& prefix) {
      if (i == n) {
        if (left != 0) return;
        if (++evaluations > max_evaluations) {
          throw CapExceeded("merge search exceeded " + std::to_string(max_evaluations) + " evaluations");
        }
        if (prefix.subset_of(upper)) found.push_back(Admissible{parts, prefix, total});
        return;
      }
      const std::size_t lo = (i + 1 == n) ? left : 0;
      const std::size_t hi = std::min(left, spaces[i].max_level());
      for (std::size_t s = lo; s <= hi; ++s) {
        for (const auto& v : spaces[i].level(s)) {
          TruthTable next = prefix & v.table;
          if (!next.intersects(lower)) continue;
          parts[i] = &v;
          pick(i + 1, left - s, next);
        }
      }
    };
    pick(0, total, TruthTable(problem.working().size(), true));
    if (!found.empty() && !all_levels) break;
  }
  return found;
}

inline void expand_tuples(const Admissible& a, std::size_t i, std::vector<TransformationSet>& acc,
                          std::vector<TransformationTuple>& out) {
  if (i == a.parts.size()) {
    out.emplace_back(acc);
    return;
  }
  for (const auto& s : a.parts[i]->sets) {
    acc.push_back(s);
    expand_tuples(a, i + 1, acc, out);
    acc.pop_back();
  }
}

inline double heuristic_score(const Admissible& a, const MergeProblem& problem, DeltaMode mode) {
  double score = static_cast<double>(a.size);
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < a.parts.size(); ++j) {
      double sim = mode == DeltaMode::kLinear
                       ? static_cast<double>(a.parts[i]->table.agreement(a.parts[j]->table))
                       : similarity_value(a.parts[i]->formula, a.parts[j]->formula, problem.working(), mode);
      score -= similarity_term(sim);
    }
  }
  return score;
}

inline MergeOutcome finish(const std::vector<Admissible>& found, const MergeProblem& problem,
                           const MergeConfig& cfg, std::size_t evaluations) {
  constexpr double kEps = 1e-9;
  struct Scored {
    const Admissible* source;
    TransformationTuple tuple;
    std::string key;
    double score;
  };
  std::vector<Scored> scored;
  for (const auto& a : found) {
    std::vector<TransformationTuple> tuples;
    std::vector<TransformationSet> acc;
    expand_tuples(a, 0, acc, tuples);
    const double common = cfg.ranking == Ranking::kHeuristic ? heuristic_score(a, problem, cfg.delta_mode)
                                                             : static_cast<double>(a.size);
    for (auto& t : tuples) {
      std::string key = to_string(t);
      double score = common;
      if (cfg.ranking == Ranking::kTable) {
        auto it = cfg.score_table.find(key);
        if (it != cfg.score_table.end()) score = it->second;
      }
      scored.push_back(Scored{&a, std::move(t), std::move(key), score});
    }
  }

  MergeOutcome out;
  out.universe = problem.working();
  out.evaluations = evaluations;
  if (scored.empty()) return out;

  double best = scored.front().score;
  for (const auto& s : scored) best = std::min(best, s.score);
  std::erase_if(scored, [&](const Scored& s) { return s.score > best + kEps; });
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) { return a.key < b.key; });

  // Group by the merged models; the representative is the tuple with the
  // smallest print form.
  std::vector<std::pair<TruthTable, Disjunct>> groups;
  for (auto& s : scored) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == s.source->conj; });
    if (it == groups.end()) {
      std::vector<Formula> parts;
      for (const auto* v : s.source->parts) parts.push_back(v->formula);
      Disjunct d;
      d.formula = simplify(conjoin(std::move(parts)));
      d.score = s.score;
      d.size = s.tuple.total_size();
      d.provenance.push_back(std::move(s.tuple));
      groups.emplace_back(s.source->conj, std::move(d));
    } else {
      it->second.provenance.push_back(std::move(s.tuple));
    }
  }
  std::vector<Formula> fs;
  for (auto& [table, d] : groups) {
    fs.push_back(d.formula);
    out.disjuncts.push_back(std::move(d));
  }
  out.result = disjoin(std::move(fs));
  return out;
}

inline std::vector<std::vector<Transformation>> general_groups(const Formula& base, const MergeProblem& problem,
                                                               const MergeConfig& cfg) {
  const auto in_base = variables(base);
  std::vector<std::vector<Transformation>> groups;
  if (cfg.kinds.renaming) {
    for (const auto& y : problem.alphabet()) {
      if (!in_base.contains(y)) continue;
      std::vector<Transformation> options;
      if (cfg.renaming_targets == RenamingTargets::kPermitted) {
        for (const auto& z : problem.alphabet()) {
          if (z != y) options.emplace_back(Renaming(y, z));
        }
        for (const auto& p : problem.primes_of(y)) options.emplace_back(Renaming(y, p));
      } else {
        for (const auto& z : problem.working()) {
          if (!in_base.contains(z)) options.emplace_back(Renaming(y, z));
        }
      }
      if (!options.empty()) groups.push_back(std::move(options));
    }
  }
  if (cfg.kinds.generalization) {
    // Undoes a particularization: x -> F became the base, so !x |= base.
    for (const auto& x : problem.alphabet()) {
      if (in_base.contains(x) && entails(Formula::Not(Formula::Var(x)), base, problem.working())) {
        groups.push_back({Generalization{x}});
      }
    }
  }
  if (cfg.kinds.particularization) {
    // Undoes a generalization by restoring an assumption absent from the base.
    for (const auto& y : problem.working()) {
      if (!in_base.contains(y)) groups.push_back({Particularization{y}});
    }
  }
  return groups;
}

inline std::vector<std::vector<Transformation>> permitted_groups(const Formula& base, const MergeProblem& problem) {
  const auto in_base = variables(base);
  const auto primes = problem.designated_primes();
  std::vector<std::vector<Transformation>> groups;
  for (const auto& y : problem.alphabet()) {
    if (!in_base.contains(y)) continue;
    std::vector<Transformation> options;
    for (const auto& z : problem.alphabet()) {
      if (z != y) options.emplace_back(Renaming(y, z));
    }
    options.emplace_back(Renaming(y, primes.at(y)));
    groups.push_back(std::move(options));
  }
  return groups;
}

inline MergeOutcome run(const MergeProblem& problem, std::vector<std::vector<std::vector<Transformation>>> groups,
                        std::size_t budget, const MergeConfig& cfg) {
  std::size_t evaluations = 0;
  const bool all_levels = cfg.ranking != Ranking::kEqualLikeliness && cfg.rank_scope == RankScope::kAllSizes;
  // An explicit table may prefer a larger tuple with the same effect.
  const bool dedup = !(all_levels && cfg.ranking == Ranking::kTable);
  std::vector<BaseSpace> spaces;
  spaces.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    spaces.emplace_back(problem.bases()[i], std::move(groups[i]), problem.working(), problem.lower_table(), budget,
                        dedup, evaluations, cfg.max_evaluations);
  }
  auto found = search(spaces, problem, all_levels, evaluations, cfg.max_evaluations);
  return finish(found, problem, cfg, evaluations);
}

}  // namespace detail

// Bounded merge over ranked transformation tuples: every tuple with at most
// cfg.budget_per_base transformations per base whose result entails the
// upper bound and is consistent with the lower bound is a candidate; the
// best-ranked candidates are disjoined.
inline MergeOutcome general_merge(const KnowledgeProfile& profile, const MergeConfig& cfg = {}) {
  const MergeProblem problem(profile.bases(), profile.upper(), profile.lower(), cfg.max_fresh_primes,
                             cfg.max_universe);
  std::vector<std::vector<std::vector<Transformation>>> groups;
  for (const auto& k : problem.bases()) groups.push_back(detail::general_groups(k, problem, cfg));
  return detail::run(problem, std::move(groups), cfg.budget_per_base, cfg);
}

namespace detail {

inline MergeOutcome renaming_merge(const Formula& k1, const Formula& k2, const Formula& a, const Formula& b,
                                   MergeConfig cfg) {
  const MergeProblem problem({k1, k2}, a, b, 1, cfg.max_universe);
  std::vector<std::vector<std::vector<Transformation>>> groups{permitted_groups(k1, problem),
                                                               permitted_groups(k2, problem)};
  cfg.max_fresh_primes = 1;
  return run(problem, std::move(groups), problem.alphabet().size(), cfg);
}

}  // namespace detail

// Renaming merge with equal likeliness: disjunction of K1[X/Y] & K2[X/Z] over
// the permitted substitution pairs of minimal combined size that meet both
// bounds. X is every variable of K1, K2, A and B.
inline MergeOutcome rmel_merge(const Formula& k1, const Formula& k2, const Formula& a = Formula::True(),
                               const Formula& b = Formula::True(), MergeConfig cfg = {}) {
  cfg.ranking = Ranking::kEqualLikeliness;
  return detail::renaming_merge(k1, k2, a, b, cfg);
}

// Renaming merge with the similarity ranking. With RankScope::kMinimalSize
// the ranking only separates pairs of the minimal combined size.
inline MergeOutcome rm_merge(const Formula& k1, const Formula& k2, const Formula& a = Formula::True(),
                             const Formula& b = Formula::True(), MergeConfig cfg = {}) {
  if (cfg.ranking == Ranking::kEqualLikeliness) cfg.ranking = Ranking::kHeuristic;
  return detail::renaming_merge(k1, k2, a, b, cfg);
}

}  // namespace mmerge
