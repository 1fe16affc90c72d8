#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"

namespace mmerge {

// Ordered set of distinct variables; fixes the model space 2^size().
class Universe {
 public:
  static constexpr std::size_t kDefaultMaxVars = 16;

  explicit Universe(std::size_t max_vars = kDefaultMaxVars) : max_vars_(max_vars) {}

  Universe(std::initializer_list<Variable> vars, std::size_t max_vars = kDefaultMaxVars) : max_vars_(max_vars) {
    for (const auto& v : vars) add(v);
  }

  explicit Universe(const std::vector<Variable>& vars, std::size_t max_vars = kDefaultMaxVars)
      : max_vars_(max_vars) {
    for (const auto& v : vars) add(v);
  }

  // Variables of the given formulas in order of first occurrence.
  static Universe of(const std::vector<Formula>& formulas, std::size_t max_vars = kDefaultMaxVars) {
    Universe u(max_vars);
    for (const auto& f : formulas) u.add_all(f);
    return u;
  }

  // Appends v unless present. Returns true if v was new.
  bool add(const Variable& v) {
    if (contains(v)) return false;
    if (vars_.size() >= max_vars_) {
      throw CapExceeded("universe exceeds " + std::to_string(max_vars_) + " variables (adding '" + v.name() + "')");
    }
    index_.emplace(v, vars_.size());
    vars_.push_back(v);
    return true;
  }

  void add_all(const Formula& f) {
    for (const auto& v : variables_in_order(f)) add(v);
  }

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  std::size_t max_vars() const { return max_vars_; }
  const std::vector<Variable>& vars() const { return vars_; }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  bool contains(const Variable& v) const { return index_.contains(v); }

  std::optional<std::size_t> index_of(const Variable& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains_all(const Formula& f) const {
    for (const auto& v : variables_in_order(f)) {
      if (!contains(v)) return false;
    }
    return true;
  }

  bool subset_of(const Universe& other) const {
    for (const auto& v : vars_) {
      if (!other.contains(v)) return false;
    }
    return true;
  }

  friend bool operator==(const Universe& a, const Universe& b) { return a.vars_ == b.vars_; }

 private:
  std::size_t max_vars_;
  std::vector<Variable> vars_;
  std::unordered_map<Variable, std::size_t> index_;
};

// Total assignment over a universe, bit i holding the value of variable i.
class Model {
 public:
  Model() = default;
  Model(std::size_t width, std::uint32_t bits) : width_(width), bits_(bits) {}

  // Parses a bit string such as "0110" (first character is variable 0).
  static Model from_string(const std::string& s) {
    if (s.size() > 32) throw Error("model bit string too long");
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        bits |= std::uint32_t{1} << i;
      } else if (s[i] != '0') {
        throw Error("invalid model bit string '" + s + "'");
      }
    }
    return Model(s.size(), bits);
  }

  std::size_t width() const { return width_; }
  std::uint32_t bits() const { return bits_; }
  bool operator[](std::size_t i) const { return (bits_ >> i) & 1u; }

  Model flipped(std::size_t i) const { return Model(width_, bits_ ^ (std::uint32_t{1} << i)); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < width_; ++i) s += (*this)[i] ? '1' : '0';
    return s;
  }

  friend bool operator==(const Model&, const Model&) = default;
  friend auto operator<=>(const Model&, const Model&) = default;

 private:
  std::size_t width_ = 0;
  std::uint32_t bits_ = 0;
};

}  // namespace mmerge
