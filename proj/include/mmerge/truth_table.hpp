#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmerge {

// Bit vector of 2^n rows; row r assigns variable i the value (r >> i) & 1.
class TruthTable {
 public:
  static constexpr std::size_t kMaxVars = 20;

  TruthTable() : TruthTable(0, false) {}

  TruthTable(std::size_t num_vars, bool value)
      : num_vars_(num_vars), words_(word_count(num_vars), value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  // The table of the i-th variable.
  static TruthTable variable(std::size_t num_vars, std::size_t index) {
    static constexpr std::array<std::uint64_t, 6> kPatterns = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    TruthTable t(num_vars, false);
    if (index < 6) {
      for (auto& w : t.words_) w = kPatterns[index];
    } else {
      for (std::size_t w = 0; w < t.words_.size(); ++w) {
        if ((w >> (index - 6)) & 1u) t.words_[w] = ~std::uint64_t{0};
      }
    }
    t.trim();
    return t;
  }

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_rows() const { return std::size_t{1} << num_vars_; }

  bool test(std::size_t row) const { return (words_[row >> 6] >> (row & 63)) & 1u; }

  void set(std::size_t row, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (row & 63);
    if (value) {
      words_[row >> 6] |= bit;
    } else {
      words_[row >> 6] &= ~bit;
    }
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == num_rows(); }

  // Every row set here is also set in `other`.
  bool subset_of(const TruthTable& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const TruthTable& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  // Number of rows on which both tables agree.
  std::size_t agreement(const TruthTable& other) const {
    std::size_t diff = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      diff += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
    }
    return num_rows() - diff;
  }

  // Rows set in this table, ascending.
  std::vector<std::size_t> rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) {
        out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
    return out;
  }

  TruthTable& operator&=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  TruthTable& operator|=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  TruthTable& operator^=(const TruthTable& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  TruthTable operator~() const {
    TruthTable t = *this;
    for (auto& w : t.words_) w = ~w;
    t.trim();
    return t;
  }
  friend TruthTable operator&(TruthTable a, const TruthTable& b) { return a &= b; }
  friend TruthTable operator|(TruthTable a, const TruthTable& b) { return a |= b; }
  friend TruthTable operator^(TruthTable a, const TruthTable& b) { return a ^= b; }
  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable&, const TruthTable&) = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static std::size_t word_count(std::size_t n) { return n <= 6 ? 1 : std::size_t{1} << (n - 6); }

  void trim() {
    if (num_vars_ < 6) words_[0] &= (std::uint64_t{1} << (std::size_t{1} << num_vars_)) - 1;
  }

  std::size_t num_vars_;
  std::vector<std::uint64_t> words_;
};

}  // namespace mmerge
