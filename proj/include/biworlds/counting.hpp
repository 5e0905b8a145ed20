// Exact closed-form counts of biworld registries per level.
//
// With n_0 = 2^|Sigma| interpretations, every level-0 biworld is incompleted
// (agents present), and per level:
//   n_{k+1} = n_0 * (2^{c_k} * 3^{i_k})^{|A|}   (each completed lower biworld
//             sits in exactly poss or imp; each incompleted one has a third
//             "both" option)
//   c_{k+1} = n_0 * 2^{n_k * |A|}               (disjoint poss/imp splits)
//   i_{k+1} = n_{k+1} - c_{k+1}
#pragma once

#include <cstddef>
#include <vector>

#include "biworlds/errors.hpp"

namespace biworlds {

struct LevelCount {
  BigInt total;
  BigInt completed;
  BigInt incompleted;
};

std::vector<LevelCount> count_levels(std::size_t atom_count, std::size_t agent_count,
                                     int max_level);

}  // namespace biworlds
