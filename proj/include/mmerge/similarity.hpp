#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/substitution.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

enum class DeltaMode { kLinear, kQuotient, kRestricted };

inline DeltaMode parse_delta_mode(const std::string& s) {
  if (s == "linear") return DeltaMode::kLinear;
  if (s == "quotient") return DeltaMode::kQuotient;
  if (s == "restricted") return DeltaMode::kRestricted;
  throw Error("unknown delta mode '" + s + "' (expected linear, quotient or restricted)");
}

inline std::string to_string(DeltaMode m) {
  switch (m) {
    case DeltaMode::kLinear: return "linear";
    case DeltaMode::kQuotient: return "quotient";
    case DeltaMode::kRestricted: return "restricted";
  }
  return "?";
}

// Lower is more plausible.
using RankScore = double;

inline constexpr std::size_t kMaxRestrictedVars = 10;

// |Mod(k1 <-> k2)| - |Mod(k1 xor k2)| = 2 |Mod(k1 <-> k2)| - 2^|u|
inline std::int64_t delta_linear(const Formula& k1, const Formula& k2, const Universe& u) {
  const auto agree = static_cast<std::int64_t>(agreement_count(k1, k2, u));
  return 2 * agree - (std::int64_t{1} << u.size());
}

// |Mod(k1 <-> k2)| / |Mod(k1 xor k2)|; +infinity when the formulas agree on
// every model.
inline double delta_quotient(const Formula& k1, const Formula& k2, const Universe& u) {
  const auto agree = agreement_count(k1, k2, u);
  const auto disagree = (std::size_t{1} << u.size()) - agree;
  if (disagree == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(agree) / static_cast<double>(disagree);
}

// Sum over nonempty Y ⊆ x of delta_linear(k1^Y, k2^Y, Y) / (|x| - |Y| + 1),
// where k^Y forgets every variable outside Y.
inline double delta_restricted(const Formula& k1, const Formula& k2, const Universe& x) {
  if (x.size() > kMaxRestrictedVars) {
    throw CapExceeded("restricted similarity over " + std::to_string(x.size()) + " variables (limit " +
                      std::to_string(kMaxRestrictedVars) + ")");
  }
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<Variable> keep;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) keep.push_back(x[i]);
    }
    const Universe y(keep);
    const auto d = delta_linear(forget(k1, keep), forget(k2, keep), y);
    total += static_cast<double>(d) / static_cast<double>(n - keep.size() + 1);
  }
  return total;
}

// The quantity inside the logarithm of the ranking: a nonnegative similarity
// of two formulas over u under the given mode.
inline double similarity_value(const Formula& f, const Formula& g, const Universe& u, DeltaMode mode) {
  switch (mode) {
    case DeltaMode::kLinear:
      return static_cast<double>(agreement_count(f, g, u));
    case DeltaMode::kQuotient: {
      const double q = delta_quotient(f, g, u);
      // Equivalent formulas: the agreement count bounds every finite quotient.
      return std::isinf(q) ? static_cast<double>(std::size_t{1} << u.size()) : q;
    }
    case DeltaMode::kRestricted:
      return std::max(delta_restricted(f, g, u), 0.0);
  }
  return 0.0;
}

inline double similarity_term(double similarity) { return std::log2(std::max(similarity, 0.0) + 1.0); }

// sum_i |L_i| - sum_{i<j} log2(sim(I_{L_i}(K_i), I_{L_j}(K_j)) + 1)
inline RankScore rank_tuple(const TransformationTuple& t, const std::vector<Formula>& bases, const Universe& u,
                            DeltaMode mode = DeltaMode::kLinear) {
  if (t.size() != bases.size()) throw TransformError("transformation tuple does not match the bases");
  std::vector<Formula> transformed;
  for (std::size_t i = 0; i < bases.size(); ++i) transformed.push_back(apply_set(t[i], bases[i]));
  double score = static_cast<double>(t.total_size());
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    for (std::size_t j = i + 1; j < transformed.size(); ++j) {
      score -= similarity_term(similarity_value(transformed[i], transformed[j], u, mode));
    }
  }
  return score;
}

// |Y| + |Z| - log2(sim(K1[X/Y], K2[X/Z]) + 1)
inline RankScore rank_renaming_pair(const Substitution& y, const Substitution& z, const Formula& k1,
                                    const Formula& k2, const Universe& u, DeltaMode mode = DeltaMode::kLinear) {
  const double sim = similarity_value(y.apply(k1), z.apply(k2), u, mode);
  return static_cast<double>(y.size() + z.size()) - similarity_term(sim);
}

}  // namespace mmerge
