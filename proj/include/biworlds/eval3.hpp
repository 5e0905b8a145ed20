// Three-valued valuation of formulas on finite-level biworlds.
//
// Atoms read the objective interpretation; conjunction is the truth-order
// glb; negation the inverse. K and M are unknown at level 0 and glb over the
// agent's poss / inverted imp members one level down. E is the glb of the
// group's K values. C is computed by a bounded probe: evaluate E^k for
// k = 1..level+1 and aggregate (f dominates, then u, else t) — accessibility
// strictly decreases level, so no deeper probe can change the verdict.
// O evaluates as K and M conjoined.
#pragma once

#include <unordered_map>

#include "biworlds/biworld.hpp"
#include "biworlds/formula.hpp"
#include "biworlds/truth.hpp"

namespace biworlds {

class EvalContext {
 public:
  EvalContext(const Universe& universe, FormulaArena& arena)
      : universe_(&universe), arena_(&arena) {}

  [[nodiscard]] const Universe& universe() const { return *universe_; }
  [[nodiscard]] FormulaArena& arena() { return *arena_; }

  // write-once memo keyed on (formula id, level, biworld id)
  std::unordered_map<uint64_t, Tv3>& memo() { return memo_; }

 private:
  const Universe* universe_;
  FormulaArena* arena_;
  std::unordered_map<uint64_t, Tv3> memo_;
};

// Valuation of f at w. Throws ForeignBiworldError when w does not belong to
// the context universe.
Tv3 eval3(EvalContext& ctx, FormulaId f, const BiworldData& w);

// Convenience for registered biworlds.
Tv3 eval3(EvalContext& ctx, FormulaId f, int level, uint32_t id);

inline bool resolves(EvalContext& ctx, FormulaId f, const BiworldData& w) {
  return eval3(ctx, f, w) != Tv3::U;
}

// Same probe as the C clause but with an explicit probe bound; used by the
// consistency tests that extend the range beyond level+1.
Tv3 eval3_c_probed(EvalContext& ctx, GroupId g, FormulaId body, const BiworldData& w,
                   int max_probe);

}  // namespace biworlds
