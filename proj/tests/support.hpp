// Shared fixtures and generators for the test suites.
#pragma once

#include <random>
#include <vector>

#include "biworlds/biworld.hpp"
#include "biworlds/formula.hpp"

namespace biworlds::testsupport {

inline Session session_p() { return Session({"p"}, {"a"}); }
inline Session session_pq() { return Session({"p", "q"}, {"a"}); }
inline Session session_p_ab() { return Session({"p"}, {"a", "b"}); }

// ({p}, {{p}}, {{p},{emptyset}}) from the worked single-atom example.
// Level-0 ids coincide with interpretation bits: id 0 = {}, id 1 = {p}.
inline BiworldData v1(const Universe& u) {
  uint32_t nb = static_cast<uint32_t>(u.level_size(0));
  BiworldData w;
  w.level = 1;
  w.obj = 1;
  IdSet poss(nb), imp(nb);
  poss.set(1);
  imp.set(0);
  imp.set(1);
  w.poss.push_back(poss);
  w.imp.push_back(imp);
  return w;
}

// ({p}, {{p}}, {{emptyset}}): the completed 1-biworld used throughout.
inline BiworldData u10(const Universe& u) {
  uint32_t nb = static_cast<uint32_t>(u.level_size(0));
  BiworldData w;
  w.level = 1;
  w.obj = 1;
  IdSet poss(nb), imp(nb);
  poss.set(1);
  imp.set(0);
  w.poss.push_back(poss);
  w.imp.push_back(imp);
  return w;
}

inline BiworldData level1(uint32_t obj, std::vector<uint32_t> poss_ids,
                          std::vector<uint32_t> imp_ids, uint32_t nb = 2) {
  BiworldData w;
  w.level = 1;
  w.obj = obj;
  IdSet poss(nb), imp(nb);
  for (uint32_t x : poss_ids) poss.set(x);
  for (uint32_t x : imp_ids) imp.set(x);
  w.poss.push_back(std::move(poss));
  w.imp.push_back(std::move(imp));
  return w;
}

// Random formula over the session, C-free by default, bounded operator depth.
class FormulaGen {
 public:
  FormulaGen(FormulaArena& arena, uint64_t seed, bool allow_c = false)
      : arena_(arena), rng_(seed), allow_c_(allow_c) {}

  FormulaId gen(int max_modal_depth, int size_budget = 8) {
    return gen_rec(max_modal_depth, size_budget);
  }

 private:
  FormulaId gen_rec(int md, int budget) {
    const Session& s = arena_.session();
    std::uniform_int_distribution<int> pick(0, budget <= 1 ? 2 : (md > 0 ? 9 : 5));
    switch (pick(rng_)) {
      case 0:
      case 1:
        return arena_.atom(static_cast<AtomId>(rng_() % s.atom_count()));
      case 2:
        return rng_() % 4 == 0 ? (rng_() % 2 ? arena_.truth() : arena_.falsity())
                               : arena_.atom(static_cast<AtomId>(rng_() % s.atom_count()));
      case 3:
        return arena_.negation(gen_rec(md, budget - 1));
      case 4:
        return arena_.conjunction(gen_rec(md, budget / 2), gen_rec(md, budget / 2));
      case 5:
        return rng_() % 2 ? arena_.disjunction(gen_rec(md, budget / 2), gen_rec(md, budget / 2))
                          : arena_.implication(gen_rec(md, budget / 2), gen_rec(md, budget / 2));
      case 6:
        return arena_.knows(random_agent(), gen_rec(md - 1, budget - 1));
      case 7:
        return arena_.knows_at_most(random_agent(), gen_rec(md - 1, budget - 1));
      case 8:
        return rng_() % 2 ? arena_.only_knows(random_agent(), gen_rec(md - 1, budget - 1))
                          : arena_.everybody_knows(random_group(), gen_rec(md - 1, budget - 1));
      default:
        if (allow_c_ && rng_() % 3 == 0)
          return arena_.common_knowledge(random_group(), gen_rec(0, budget - 1));
        return arena_.knows(random_agent(), gen_rec(md - 1, budget - 1));
    }
  }

  AgentId random_agent() {
    return static_cast<AgentId>(rng_() % arena_.session().agent_count());
  }

  GroupId random_group() {
    std::size_t n = arena_.session().agent_count();
    std::vector<AgentId> members;
    for (std::size_t a = 0; a < n; ++a)
      if (members.empty() || rng_() % 2) members.push_back(static_cast<AgentId>(a));
    if (members.empty()) members.push_back(0);
    return arena_.intern_group(std::move(members));
  }

  FormulaArena& arena_;
  std::mt19937_64 rng_;
  bool allow_c_;
};

}  // namespace biworlds::testsupport
