#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

// Simultaneous variable-to-variable substitution X/Y. Identity entries are
// dropped on construction, so size() counts actual renamings.
class Substitution {
 public:
  Substitution() = default;

  explicit Substitution(const std::vector<std::pair<Variable, Variable>>& entries) {
    std::set<Variable> keys;
    for (const auto& [from, to] : entries) {
      if (!keys.insert(from).second) throw Error("duplicate substitution key '" + from.name() + "'");
      if (from != to) map_.emplace(from, to);
    }
  }

  // Parses "a->b, c->c'" (empty or "-" gives the identity).
  static Substitution parse(const std::string& text) {
    std::vector<std::pair<Variable, Variable>> entries;
    std::string item;
    auto flush = [&] {
      auto first = item.find_first_not_of(" \t");
      auto last = item.find_last_not_of(" \t");
      std::string s = first == std::string::npos ? "" : item.substr(first, last - first + 1);
      item.clear();
      if (s.empty() || s == "-") return;
      auto arrow = s.find("->");
      if (arrow == std::string::npos) throw Error("expected 'x->y' in substitution, got '" + s + "'");
      auto trim = [](std::string t) {
        auto a = t.find_first_not_of(" \t");
        auto b = t.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
      };
      entries.emplace_back(Variable(trim(s.substr(0, arrow))), Variable(trim(s.substr(arrow + 2))));
    };
    for (char c : text) {
      if (c == ',') {
        flush();
      } else {
        item += c;
      }
    }
    flush();
    return Substitution(entries);
  }

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  const std::map<Variable, Variable>& map() const { return map_; }

  Formula apply(const Formula& f) const {
    std::vector<std::pair<Variable, Variable>> entries(map_.begin(), map_.end());
    return simultaneous_substitute(f, entries);
  }

  // Every key maps to another variable of x or to its own designated fresh
  // name in `primes`.
  bool permitted(const Universe& x, const std::map<Variable, Variable>& primes) const {
    for (const auto& [from, to] : map_) {
      if (!x.contains(from)) return false;
      auto p = primes.find(from);
      const bool to_prime = p != primes.end() && p->second == to;
      if (!x.contains(to) && !to_prime) return false;
    }
    return true;
  }

  // The same renamings as a transformation set.
  TransformationSet as_set() const {
    TransformationSet s;
    for (const auto& [from, to] : map_) s.insert(Renaming(from, to));
    return s;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Variable, Variable> map_;
};

inline std::string to_string(const Substitution& s) { return to_string(s.as_set()); }

}  // namespace mmerge
