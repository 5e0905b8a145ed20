#include "biworlds/counting.hpp"

namespace biworlds {

namespace {

BigInt pow_big(BigInt base, const BigInt& exp) {
  BigInt r = 1, e = exp, b = std::move(base);
  while (e > 0) {
    if ((e & 1) != 0) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<LevelCount> count_levels(std::size_t atom_count, std::size_t agent_count,
                                     int max_level) {
  if (agent_count == 0) throw Error("count_levels: agent set must be non-empty");
  if (max_level < 0) throw Error("count_levels: max_level must be >= 0");
  std::vector<LevelCount> out;
  BigInt n0 = pow_big(2, BigInt(atom_count));
  out.push_back({n0, 0, n0});
  for (int k = 0; k < max_level; ++k) {
    const LevelCount& prev = out.back();
    BigInt per_agent = pow_big(2, prev.completed) * pow_big(3, prev.incompleted);
    BigInt total = n0 * pow_big(per_agent, BigInt(agent_count));
    BigInt completed = n0 * pow_big(2, prev.total * BigInt(agent_count));
    out.push_back({total, completed, total - completed});
  }
  return out;
}

}  // namespace biworlds
