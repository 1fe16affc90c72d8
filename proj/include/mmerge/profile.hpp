#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

// Precondition violations of a merge problem, in a fixed order. Empty means
// the bases can be merged under the bounds.
inline std::vector<std::string> profile_violations(const std::vector<Formula>& bases, const Formula& upper,
                                                   const Formula& lower,
                                                   std::size_t max_vars = Universe::kDefaultMaxVars) {
  std::vector<std::string> out;
  if (bases.empty()) out.emplace_back("no knowledge bases");
  std::vector<Formula> all = bases;
  all.push_back(upper);
  all.push_back(lower);
  const Universe u = Universe::of(all, max_vars);
  const TruthTable a = tabulate(upper, u);
  const TruthTable b = tabulate(lower, u);
  if (a.none()) out.emplace_back("upper bound A is unsatisfiable");
  if (b.none()) out.emplace_back("lower bound B is unsatisfiable");
  if (a.any() && b.any() && !a.intersects(b)) out.emplace_back("A and B contradict");
  return out;
}

// Knowledge bases K_1..K_n with upper bound A (must be entailed by the merge)
// and lower bound B (must be consistent with the merge).
class KnowledgeProfile {
 public:
  KnowledgeProfile(std::vector<Formula> bases, Formula upper = Formula::True(), Formula lower = Formula::True(),
                   std::size_t max_vars = Universe::kDefaultMaxVars)
      : bases_(std::move(bases)), upper_(std::move(upper)), lower_(std::move(lower)) {
    auto violations = profile_violations(bases_, upper_, lower_, max_vars);
    if (!violations.empty()) {
      std::string msg = "invalid profile: ";
      for (std::size_t i = 0; i < violations.size(); ++i) msg += (i ? "; " : "") + violations[i];
      throw ProfileError(msg);
    }
    std::vector<Formula> all = bases_;
    all.push_back(upper_);
    all.push_back(lower_);
    universe_ = Universe::of(all, max_vars);
  }

  const std::vector<Formula>& bases() const { return bases_; }
  std::size_t size() const { return bases_.size(); }
  const Formula& upper() const { return upper_; }
  const Formula& lower() const { return lower_; }
  // Variables of the bases and bounds, in order of first occurrence.
  const Universe& universe() const { return universe_; }

 private:
  std::vector<Formula> bases_;
  Formula upper_;
  Formula lower_;
  Universe universe_;
};

}  // namespace mmerge
