#pragma once

#include <cstddef>
#include <vector>

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/universe.hpp"

namespace mmerge {

// Dalal revision of k by p as the correction of a minimal number of value
// mistakes: models of k are flipped one variable at a time until some reach
// p; the p-models reached at that distance form the result. An inconsistent
// k is treated as carrying no information and yields p.
inline Formula dalal_revise(const Formula& k, const Formula& p, const Universe& u) {
  const TruthTable target = tabulate(p, u);
  if (target.none()) throw ProfileError("revision by an unsatisfiable formula");
  TruthTable reached = tabulate(k, u);
  if (reached.none()) return p;
  for (std::size_t distance = 0; distance <= u.size(); ++distance) {
    const TruthTable hit = reached & target;
    if (hit.any()) return formula_from_models(hit, u);
    TruthTable next = reached;
    for (auto row : reached.rows()) {
      const Model m(u.size(), static_cast<std::uint32_t>(row));
      for (std::size_t x = 0; x < u.size(); ++x) next.set(m.flipped(x).bits());
    }
    reached = next;
  }
  // Unreachable: after |u| rounds every model has been reached.
  return p;
}

}  // namespace mmerge
