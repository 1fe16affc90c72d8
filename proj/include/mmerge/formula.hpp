#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmerge/errors.hpp"

namespace mmerge {

// A propositional variable. Names match [A-Za-z_][A-Za-z0-9_]*'* and the
// keywords `true`/`false` are reserved.
class Variable {
 public:
  explicit Variable(std::string name) : name_(std::move(name)) {
    if (!is_valid_name(name_)) {
      throw Error("invalid variable name '" + name_ + "'");
    }
  }

  const std::string& name() const { return name_; }

  // The name with one more prime mark appended: x -> x'.
  Variable primed() const { return Variable(name_ + "'"); }

  static bool is_valid_name(std::string_view s) {
    if (s.empty() || s == "true" || s == "false") return false;
    auto is_alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!is_alpha(s[0])) return false;
    std::size_t i = 1;
    while (i < s.size() && (is_alpha(s[i]) || is_digit(s[i]))) ++i;
    while (i < s.size() && s[i] == '\'') ++i;
    return i == s.size();
  }

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;

 private:
  std::string name_;
};

inline std::ostream& operator<<(std::ostream& os, const Variable& v) {
  return os << v.name();
}

class Formula;

namespace detail {
struct Node;
}

// Immutable propositional formula with value semantics; subtrees are shared.
class Formula {
 public:
  enum class Kind { kConst, kVar, kNot, kAnd, kOr, kImplies, kIff };

  // Default-constructed formula is `true`.
  Formula();

  static Formula True();
  static Formula False();
  static Formula Const(bool value);
  static Formula Var(Variable v);
  static Formula Var(std::string name) { return Var(Variable(std::move(name))); }
  static Formula Not(Formula f);
  // And/Or require at least two children.
  static Formula And(std::vector<Formula> children);
  static Formula Or(std::vector<Formula> children);
  static Formula And(Formula a, Formula b) { return And(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula Or(Formula a, Formula b) { return Or(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula Implies(Formula lhs, Formula rhs);
  static Formula Iff(Formula lhs, Formula rhs);

  Kind kind() const;
  bool is_const() const { return kind() == Kind::kConst; }
  bool is_var() const { return kind() == Kind::kVar; }
  // Only meaningful for kConst.
  bool value() const;
  // Only meaningful for kVar.
  const Variable& var() const;
  std::span<const Formula> children() const;

  bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Formula::Kind kind = Formula::Kind::kConst;
  bool value = true;
  std::vector<Variable> var;  // holds exactly one element for kVar
  std::vector<Formula> children;
};
}  // namespace detail

inline Formula::Formula() : Formula(True()) {}

inline Formula Formula::True() {
  static const Formula t(std::make_shared<const detail::Node>(detail::Node{Kind::kConst, true, {}, {}}));
  return t;
}

inline Formula Formula::False() {
  static const Formula f(std::make_shared<const detail::Node>(detail::Node{Kind::kConst, false, {}, {}}));
  return f;
}

inline Formula Formula::Const(bool value) { return value ? True() : False(); }

inline Formula Formula::Var(Variable v) {
  return Formula(std::make_shared<const detail::Node>(detail::Node{Kind::kVar, false, {std::move(v)}, {}}));
}

inline Formula Formula::Not(Formula f) {
  return Formula(std::make_shared<const detail::Node>(detail::Node{Kind::kNot, false, {}, {std::move(f)}}));
}

inline Formula Formula::And(std::vector<Formula> children) {
  if (children.size() < 2) throw Error("And requires at least two children");
  return Formula(std::make_shared<const detail::Node>(detail::Node{Kind::kAnd, false, {}, std::move(children)}));
}

inline Formula Formula::Or(std::vector<Formula> children) {
  if (children.size() < 2) throw Error("Or requires at least two children");
  return Formula(std::make_shared<const detail::Node>(detail::Node{Kind::kOr, false, {}, std::move(children)}));
}

inline Formula Formula::Implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::Node>(
      detail::Node{Kind::kImplies, false, {}, {std::move(lhs), std::move(rhs)}}));
}

inline Formula Formula::Iff(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::Node>(
      detail::Node{Kind::kIff, false, {}, {std::move(lhs), std::move(rhs)}}));
}

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline bool Formula::value() const { return node_->value; }
inline const Variable& Formula::var() const { return node_->var.front(); }
inline std::span<const Formula> Formula::children() const { return node_->children; }

// Structural equality.
inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kConst:
      return a.value() == b.value();
    case Formula::Kind::kVar:
      return a.var() == b.var();
    default:
      return std::ranges::equal(a.children(), b.children());
  }
}

// Conjunction/disjunction of any number of formulas: empty gives the unit,
// a single formula is returned unchanged.
inline Formula conjoin(std::vector<Formula> fs) {
  if (fs.empty()) return Formula::True();
  if (fs.size() == 1) return fs.front();
  return Formula::And(std::move(fs));
}

inline Formula disjoin(std::vector<Formula> fs) {
  if (fs.empty()) return Formula::False();
  if (fs.size() == 1) return fs.front();
  return Formula::Or(std::move(fs));
}

// ---------------------------------------------------------------------------
// Printing. Precedence: ! > & > | > -> > <->; -> and <-> associate right.

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kIff: return 1;
    case Formula::Kind::kImplies: return 2;
    case Formula::Kind::kOr: return 3;
    case Formula::Kind::kAnd: return 4;
    case Formula::Kind::kNot: return 5;
    default: return 6;
  }
}

inline void print(std::string& out, const Formula& f, int min_prec) {
  const int prec = precedence(f.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::kConst:
      out += f.value() ? "true" : "false";
      break;
    case Formula::Kind::kVar:
      out += f.var().name();
      break;
    case Formula::Kind::kNot:
      out += '!';
      print(out, f.children()[0], 5);
      break;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      const char* sep = f.kind() == Formula::Kind::kAnd ? " & " : " | ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += sep;
        first = false;
        // A nested node of the same operator keeps its parentheses.
        print(out, c, prec + 1);
      }
      break;
    }
    case Formula::Kind::kImplies:
    case Formula::Kind::kIff:
      print(out, f.children()[0], prec + 1);
      out += f.kind() == Formula::Kind::kImplies ? " -> " : " <-> ";
      print(out, f.children()[1], prec);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(out, f, 0);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Variables.

// Variables of f in order of first occurrence (left to right).
inline void collect_variables(const Formula& f, std::vector<Variable>& out) {
  if (f.is_var()) {
    if (std::find(out.begin(), out.end(), f.var()) == out.end()) out.push_back(f.var());
    return;
  }
  for (const auto& c : f.children()) collect_variables(c, out);
}

inline std::vector<Variable> variables_in_order(const Formula& f) {
  std::vector<Variable> out;
  collect_variables(f, out);
  return out;
}

inline std::set<Variable> variables(const Formula& f) {
  auto v = variables_in_order(f);
  return {v.begin(), v.end()};
}

inline bool mentions(const Formula& f, const Variable& x) {
  if (f.is_var()) return f.var() == x;
  return std::ranges::any_of(f.children(), [&](const Formula& c) { return mentions(c, x); });
}

// ---------------------------------------------------------------------------
// Substitution.

namespace detail {

// Rebuilds f bottom-up with `leaf` applied to every variable node. Untouched
// subtrees are shared with the input.
template <typename LeafFn>
Formula map_leaves(const Formula& f, const LeafFn& leaf) {
  switch (f.kind()) {
    case Formula::Kind::kConst:
      return f;
    case Formula::Kind::kVar:
      return leaf(f);
    default:
      break;
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const auto& c : f.children()) {
    kids.push_back(map_leaves(c, leaf));
    if (!kids.back().same_node(c)) changed = true;
  }
  if (!changed) return f;
  switch (f.kind()) {
    case Formula::Kind::kNot: return Formula::Not(std::move(kids[0]));
    case Formula::Kind::kAnd: return Formula::And(std::move(kids));
    case Formula::Kind::kOr: return Formula::Or(std::move(kids));
    case Formula::Kind::kImplies: return Formula::Implies(std::move(kids[0]), std::move(kids[1]));
    case Formula::Kind::kIff: return Formula::Iff(std::move(kids[0]), std::move(kids[1]));
    default: return f;
  }
}

}  // namespace detail

// f[from/to]. Absent `from` leaves f unchanged.
inline Formula substitute(const Formula& f, const Variable& from, const Variable& to) {
  const Formula replacement = Formula::Var(to);
  return detail::map_leaves(f, [&](const Formula& leaf) { return leaf.var() == from ? replacement : leaf; });
}

inline Formula substitute(const Formula& f, const Variable& from, bool to) {
  const Formula replacement = Formula::Const(to);
  return detail::map_leaves(f, [&](const Formula& leaf) { return leaf.var() == from ? replacement : leaf; });
}

// All replacements happen at once: a variable introduced by one entry is
// never replaced by another entry. Throws on duplicate keys.
inline Formula simultaneous_substitute(const Formula& f, std::span<const std::pair<Variable, Variable>> map) {
  std::map<Variable, Formula> table;
  for (const auto& [from, to] : map) {
    if (!table.emplace(from, Formula::Var(to)).second) {
      throw Error("duplicate substitution key '" + from.name() + "'");
    }
  }
  if (table.empty()) return f;
  return detail::map_leaves(f, [&](const Formula& leaf) {
    auto it = table.find(leaf.var());
    return it == table.end() ? leaf : it->second;
  });
}

// ---------------------------------------------------------------------------
// Constant folding. The result is equivalent to f and contains no constant
// unless it is itself a constant.
inline Formula simplify(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kConst:
    case K::kVar:
      return f;
    case K::kNot: {
      Formula c = simplify(f.children()[0]);
      if (c.is_const()) return Formula::Const(!c.value());
      if (c.kind() == K::kNot) return c.children()[0];
      return c.same_node(f.children()[0]) ? f : Formula::Not(c);
    }
    case K::kAnd:
    case K::kOr: {
      const bool absorbing = f.kind() == K::kOr;  // true absorbs Or, false absorbs And
      // Nested nodes of the same operator are flattened and repeated
      // children dropped.
      std::vector<Formula> kids;
      auto push = [&](Formula s) {
        if (std::find(kids.begin(), kids.end(), s) == kids.end()) kids.push_back(std::move(s));
      };
      for (const auto& c : f.children()) {
        Formula s = simplify(c);
        if (s.is_const()) {
          if (s.value() == absorbing) return Formula::Const(absorbing);
          continue;
        }
        if (s.kind() == f.kind()) {
          for (const auto& g : s.children()) push(g);
        } else {
          push(std::move(s));
        }
      }
      if (kids.empty()) return Formula::Const(!absorbing);
      if (kids.size() == 1) return kids.front();
      return f.kind() == K::kAnd ? Formula::And(std::move(kids)) : Formula::Or(std::move(kids));
    }
    case K::kImplies: {
      Formula a = simplify(f.children()[0]);
      Formula b = simplify(f.children()[1]);
      if (a.is_const()) return a.value() ? b : Formula::True();
      if (b.is_const()) return b.value() ? Formula::True() : simplify(Formula::Not(a));
      return Formula::Implies(a, b);
    }
    case K::kIff: {
      Formula a = simplify(f.children()[0]);
      Formula b = simplify(f.children()[1]);
      if (a.is_const()) return a.value() ? b : simplify(Formula::Not(b));
      if (b.is_const()) return b.value() ? a : simplify(Formula::Not(a));
      return Formula::Iff(a, b);
    }
  }
  return f;
}

}  // namespace mmerge

template <>
struct std::hash<mmerge::Variable> {
  std::size_t operator()(const mmerge::Variable& v) const noexcept { return std::hash<std::string>{}(v.name()); }
};
