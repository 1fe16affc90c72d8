#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/truth_table.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

namespace detail {

inline TruthTable tabulate_rec(const Formula& f, const Universe& u) {
  using K = Formula::Kind;
  const std::size_t n = u.size();
  switch (f.kind()) {
    case K::kConst:
      return TruthTable(n, f.value());
    case K::kVar: {
      auto idx = u.index_of(f.var());
      if (!idx) throw UniverseError("variable '" + f.var().name() + "' is not in the universe");
      return TruthTable::variable(n, *idx);
    }
    case K::kNot:
      return ~tabulate_rec(f.children()[0], u);
    case K::kAnd: {
      TruthTable t(n, true);
      for (const auto& c : f.children()) t &= tabulate_rec(c, u);
      return t;
    }
    case K::kOr: {
      TruthTable t(n, false);
      for (const auto& c : f.children()) t |= tabulate_rec(c, u);
      return t;
    }
    case K::kImplies:
      return ~tabulate_rec(f.children()[0], u) | tabulate_rec(f.children()[1], u);
    case K::kIff:
      return ~(tabulate_rec(f.children()[0], u) ^ tabulate_rec(f.children()[1], u));
  }
  return TruthTable(n, false);
}

}  // namespace detail

// Truth table of f over u. Throws UniverseError if f mentions a variable
// outside u, CapExceeded if u is over its cap.
inline TruthTable tabulate(const Formula& f, const Universe& u) {
  if (u.size() > u.max_vars() || u.size() > TruthTable::kMaxVars) {
    throw CapExceeded("universe of " + std::to_string(u.size()) + " variables exceeds the enumeration cap");
  }
  return detail::tabulate_rec(f, u);
}

// The set of models of a formula over an explicit universe.
class ModelSet {
 public:
  ModelSet(Universe u, TruthTable table) : universe_(std::move(u)), table_(std::move(table)) {}

  const Universe& universe() const { return universe_; }
  const TruthTable& table() const { return table_; }
  std::size_t size() const { return table_.count(); }
  bool empty() const { return table_.none(); }

  bool contains(const Model& m) const {
    if (m.width() != universe_.size()) return false;
    return table_.test(m.bits());
  }

  std::vector<Model> to_vector() const {
    std::vector<Model> out;
    for (auto r : table_.rows()) out.emplace_back(universe_.size(), static_cast<std::uint32_t>(r));
    return out;
  }

  friend bool operator==(const ModelSet& a, const ModelSet& b) {
    return a.universe_ == b.universe_ && a.table_ == b.table_;
  }

 private:
  Universe universe_;
  TruthTable table_;
};

inline ModelSet models(const Formula& f, const Universe& u) { return ModelSet(u, tabulate(f, u)); }

inline bool satisfiable(const Formula& f, const Universe& u) { return tabulate(f, u).any(); }

// models(f) ⊆ models(g)
inline bool entails(const Formula& f, const Formula& g, const Universe& u) {
  return tabulate(f, u).subset_of(tabulate(g, u));
}

// f ∧ g has a model.
inline bool consistent_with(const Formula& f, const Formula& g, const Universe& u) {
  return tabulate(f, u).intersects(tabulate(g, u));
}

inline bool equivalent(const Formula& f, const Formula& g, const Universe& u) {
  return tabulate(f, u) == tabulate(g, u);
}

// |models(f <-> g)| over u.
inline std::size_t agreement_count(const Formula& f, const Formula& g, const Universe& u) {
  return tabulate(f, u).agreement(tabulate(g, u));
}

// Conjunction of literals fixing every variable of u to its value in m.
inline Formula minterm(const Model& m, const Universe& u) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < u.size(); ++i) {
    Formula v = Formula::Var(u[i]);
    lits.push_back(m[i] ? v : Formula::Not(v));
  }
  return conjoin(std::move(lits));
}

// Canonical DNF: one minterm per model, in ascending row order.
inline Formula formula_from_models(const TruthTable& table, const Universe& u) {
  if (table.none()) return Formula::False();
  if (table.all()) return Formula::True();
  std::vector<Formula> terms;
  for (auto r : table.rows()) terms.push_back(minterm(Model(u.size(), static_cast<std::uint32_t>(r)), u));
  return disjoin(std::move(terms));
}

inline Formula formula_from_models(const ModelSet& ms) { return formula_from_models(ms.table(), ms.universe()); }

// Existential projection onto `keep`: Shannon expansion f[x/true] | f[x/false]
// over every variable of f outside `keep`, constant-folded after each step.
inline Formula forget(const Formula& f, const std::vector<Variable>& keep) {
  Formula out = f;
  for (const auto& x : variables_in_order(f)) {
    if (std::find(keep.begin(), keep.end(), x) != keep.end()) continue;
    out = simplify(Formula::Or(substitute(out, x, true), substitute(out, x, false)));
  }
  return out;
}

// As above; `keep` must be a subset of u and f must live over u.
inline Formula forget(const Formula& f, const Universe& keep, const Universe& u) {
  for (const auto& v : keep) {
    if (!u.contains(v)) throw UniverseError("forget: '" + v.name() + "' is not in the universe");
  }
  if (!u.contains_all(f)) throw UniverseError("forget: formula mentions variables outside the universe");
  return forget(f, keep.vars());
}

}  // namespace mmerge
