#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

// ---------------------------------------------------------------------------
// Mistake transformations.

// F[from/to]: the source used the name `to` for what was `from`.
struct Renaming {
  Renaming(Variable from_, Variable to_) : from(std::move(from_)), to(std::move(to_)) {
    if (from == to) throw TransformError("renaming of '" + from.name() + "' onto itself");
  }
  Variable from;
  Variable to;
  friend bool operator==(const Renaming&, const Renaming&) = default;
  friend auto operator<=>(const Renaming&, const Renaming&) = default;
};

// F[var/true]: an assumption was dropped.
struct Generalization {
  Variable var;
  friend bool operator==(const Generalization&, const Generalization&) = default;
  friend auto operator<=>(const Generalization&, const Generalization&) = default;
};

// var -> F: a spurious assumption was added.
struct Particularization {
  Variable var;
  friend bool operator==(const Particularization&, const Particularization&) = default;
  friend auto operator<=>(const Particularization&, const Particularization&) = default;
};

// Replaces `model` by the model with `var` flipped (mistake of value).
struct ValueFlip {
  Model model;
  Variable var;
  friend bool operator==(const ValueFlip&, const ValueFlip&) = default;
  friend auto operator<=>(const ValueFlip&, const ValueFlip&) = default;
};

// The variant order is also the canonical application order.
using Transformation = std::variant<Renaming, Generalization, Particularization, ValueFlip>;

inline std::string to_string(const Transformation& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Renaming>) {
          return "ren " + x.from.name() + "->" + x.to.name();
        } else if constexpr (std::is_same_v<T, Generalization>) {
          return "gen " + x.var.name();
        } else if constexpr (std::is_same_v<T, Particularization>) {
          return "par " + x.var.name();
        } else {
          return "flip " + x.model.to_string() + " " + x.var.name();
        }
      },
      t);
}

// Applies one non-flip transformation. ValueFlip needs a universe; use the
// three-argument overload.
inline Formula apply(const Transformation& t, const Formula& f) {
  if (const auto* r = std::get_if<Renaming>(&t)) {
    const std::pair<Variable, Variable> entry{r->from, r->to};
    return simultaneous_substitute(f, std::span(&entry, 1));
  }
  if (const auto* g = std::get_if<Generalization>(&t)) return substitute(f, g->var, true);
  if (const auto* p = std::get_if<Particularization>(&t)) return Formula::Implies(Formula::Var(p->var), f);
  throw TransformError("value flip requires an explicit universe");
}

// The universe fixes the model space for ValueFlip. The result of a flip is
// (f & !m(M)) | m(M') where m(.) is the minterm of a model.
inline Formula apply(const Transformation& t, const Formula& f, const Universe& u) {
  const auto* flip = std::get_if<ValueFlip>(&t);
  if (!flip) return mmerge::apply(t, f);
  if (flip->model.width() != u.size()) throw TransformError("value flip model does not match the universe");
  auto idx = u.index_of(flip->var);
  if (!idx) throw TransformError("value flip variable '" + flip->var.name() + "' is not in the universe");
  if (!tabulate(f, u).test(flip->model.bits())) {
    throw TransformError("value flip of model " + flip->model.to_string() + " which is not a model of the formula");
  }
  const Model target = flip->model.flipped(*idx);
  return Formula::Or(Formula::And(f, Formula::Not(minterm(flip->model, u))), minterm(target, u));
}

// ---------------------------------------------------------------------------
// Sets and tuples.

// Transformations hypothesized for one knowledge base. Members are kept in
// canonical order without duplicates; renamings must have distinct sources.
class TransformationSet {
 public:
  TransformationSet() = default;
  TransformationSet(std::initializer_list<Transformation> items) {
    for (const auto& t : items) insert(t);
  }
  explicit TransformationSet(const std::vector<Transformation>& items) {
    for (const auto& t : items) insert(t);
  }

  // Returns false (and leaves the set unchanged) if t is already present.
  // Throws if t is a renaming whose source is already renamed.
  bool insert(const Transformation& t) {
    auto it = std::lower_bound(items_.begin(), items_.end(), t);
    if (it != items_.end() && *it == t) return false;
    if (const auto* r = std::get_if<Renaming>(&t)) {
      if (renames(r->from)) throw TransformError("two renamings of '" + r->from.name() + "' in one set");
    }
    items_.insert(it, t);
    return true;
  }

  bool renames(const Variable& v) const {
    return std::ranges::any_of(items_, [&](const Transformation& t) {
      const auto* r = std::get_if<Renaming>(&t);
      return r && r->from == v;
    });
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Transformation>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  // No member renames onto a variable that another member renames away.
  // When this holds, sequential application in any order agrees with the
  // simultaneous one.
  bool renamings_unchained() const {
    for (const auto& t : items_) {
      const auto* r = std::get_if<Renaming>(&t);
      if (r && renames(r->to)) return false;
    }
    return true;
  }

  bool has_value_flips() const {
    return std::ranges::any_of(items_, [](const Transformation& t) { return std::holds_alternative<ValueFlip>(t); });
  }

  friend bool operator==(const TransformationSet&, const TransformationSet&) = default;

 private:
  std::vector<Transformation> items_;
};

inline std::string to_string(const TransformationSet& s) {
  if (s.empty()) return "-";
  std::string out;
  for (const auto& t : s) {
    if (!out.empty()) out += ", ";
    out += to_string(t);
  }
  return out;
}

namespace detail {

inline Formula apply_set_impl(const TransformationSet& s, const Formula& f, const Universe* u) {
  std::vector<std::pair<Variable, Variable>> renames;
  for (const auto& t : s) {
    if (const auto* r = std::get_if<Renaming>(&t)) renames.emplace_back(r->from, r->to);
  }
  Formula out = simultaneous_substitute(f, renames);
  // Items are sorted: generalizations, then particularizations, then flips,
  // each by variable name.
  for (const auto& t : s) {
    if (std::holds_alternative<Renaming>(t)) continue;
    if (std::holds_alternative<ValueFlip>(t)) {
      if (!u) throw TransformError("value flip requires an explicit universe");
      out = mmerge::apply(t, out, *u);
    } else {
      out = mmerge::apply(t, out);
    }
  }
  return out;
}

}  // namespace detail

// Renamings (simultaneously), then generalizations, then
// particularizations, each group in name order.
inline Formula apply_set(const TransformationSet& s, const Formula& f) { return detail::apply_set_impl(s, f, nullptr); }

// As above; value flips are applied last against universe u.
inline Formula apply_set(const TransformationSet& s, const Formula& f, const Universe& u) {
  return detail::apply_set_impl(s, f, &u);
}

// One transformation set per knowledge base, in profile order.
class TransformationTuple {
 public:
  TransformationTuple() = default;
  explicit TransformationTuple(std::size_t n) : per_base_(n) {}
  explicit TransformationTuple(std::vector<TransformationSet> per_base) : per_base_(std::move(per_base)) {}

  std::size_t size() const { return per_base_.size(); }
  const TransformationSet& operator[](std::size_t i) const { return per_base_[i]; }
  TransformationSet& operator[](std::size_t i) { return per_base_[i]; }
  const std::vector<TransformationSet>& per_base() const { return per_base_; }

  // Total number of transformations over all bases.
  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& s : per_base_) n += s.size();
    return n;
  }

  friend bool operator==(const TransformationTuple&, const TransformationTuple&) = default;

 private:
  std::vector<TransformationSet> per_base_;
};

// "kb1: ren a->a' | kb2: -"
inline std::string to_string(const TransformationTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += " | ";
    out += "kb" + std::to_string(i + 1) + ": " + to_string(t[i]);
  }
  return out;
}

// Conjunction of apply_set(L_i, K_i).
inline Formula apply_tuple(const TransformationTuple& t, const std::vector<Formula>& bases) {
  if (t.size() != bases.size()) {
    throw TransformError("transformation tuple has " + std::to_string(t.size()) + " sets for " +
                         std::to_string(bases.size()) + " knowledge bases");
  }
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < bases.size(); ++i) parts.push_back(apply_set(t[i], bases[i]));
  return conjoin(std::move(parts));
}

// ---------------------------------------------------------------------------
// Candidate mistakes.

// Fresh names for the variables of x: each variable gets `per_var` primed
// names (x', x'', ...) that collide neither with x nor with each other.
// Assignment follows x's order.
inline std::map<Variable, std::vector<Variable>> fresh_primes(const Universe& x, std::size_t per_var = 1) {
  std::map<Variable, std::vector<Variable>> out;
  std::set<Variable> taken(x.begin(), x.end());
  for (const auto& v : x) {
    Variable candidate = v;
    auto& list = out[v];
    while (list.size() < per_var) {
      candidate = candidate.primed();
      if (taken.insert(candidate).second) list.push_back(candidate);
    }
  }
  return out;
}

namespace detail {

inline std::vector<Variable> outside(const std::vector<Variable>& pool, const std::set<Variable>& vars) {
  std::vector<Variable> out;
  for (const auto& v : pool) {
    if (!vars.contains(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// !x |= k, decided over vars(k) ∪ {x}.
inline bool negation_entails(const Variable& x, const Formula& k) {
  Universe u(TruthTable::kMaxVars);
  u.add(x);
  u.add_all(k);
  return entails(Formula::Not(Formula::Var(x)), k, u);
}

}  // namespace detail

// The mistakes that may have turned some S into k:
//   renamings x->y with y in k and x in pool but not in k,
//   generalizations of pool variables not in k,
//   particularizations x with !x |= k (x from k or pool).
// `pool` holds the variables of the other bases and bounds plus fresh names.
// Output is canonical (sorted, deduplicated) and truncated to `limit` items.
inline std::vector<Transformation> forward_candidates(const Formula& k, const std::vector<Variable>& pool,
                                                      std::optional<std::size_t> limit = std::nullopt) {
  const auto in_k = variables(k);
  const auto absent = detail::outside(pool, in_k);
  std::set<Transformation> out;
  for (const auto& y : in_k) {
    for (const auto& x : absent) out.insert(Renaming(x, y));
  }
  for (const auto& x : absent) out.insert(Generalization{x});
  std::set<Variable> par_vars(in_k);
  par_vars.insert(pool.begin(), pool.end());
  for (const auto& x : par_vars) {
    if (detail::negation_entails(x, k)) out.insert(Particularization{x});
  }
  std::vector<Transformation> v(out.begin(), out.end());
  if (limit && v.size() > *limit) v.erase(v.begin() + static_cast<std::ptrdiff_t>(*limit), v.end());
  return v;
}

// Pairs (forward mistake, transformation undoing it on k):
//   (ren x->y, ren y->z)  for ren x->y a candidate and z from pool, not in k
//   (gen x,    par y)     for gen x a candidate and y from pool, not in k
//   (par x,    gen x)     for par x a candidate
// The last row undoes a particularization by generalizing the same variable,
// since gen x (par x (F)) is equivalent to F.
inline std::vector<std::pair<Transformation, Transformation>> inverse_candidates(const Formula& k,
                                                                                 const std::vector<Variable>& pool) {
  const auto in_k = variables(k);
  const auto absent = detail::outside(pool, in_k);
  std::vector<std::pair<Transformation, Transformation>> out;
  for (const auto& fwd : forward_candidates(k, pool)) {
    if (const auto* r = std::get_if<Renaming>(&fwd)) {
      for (const auto& z : absent) {
        if (z != r->to) out.emplace_back(fwd, Renaming(r->to, z));
      }
    } else if (std::holds_alternative<Generalization>(fwd)) {
      for (const auto& y : absent) out.emplace_back(fwd, Particularization{y});
    } else if (const auto* p = std::get_if<Particularization>(&fwd)) {
      out.emplace_back(fwd, Generalization{p->var});
    }
  }
  return out;
}

}  // namespace mmerge
