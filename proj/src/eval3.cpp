#include "biworlds/eval3.hpp"

#include <optional>

namespace biworlds {

namespace {

uint64_t memo_key(FormulaId f, int level, uint32_t id) {
  return (static_cast<uint64_t>(f) << 36) | (static_cast<uint64_t>(level) << 32) |
         static_cast<uint64_t>(id);
}

Tv3 eval_registered(EvalContext& ctx, FormulaId f, int level, uint32_t id);

// Evaluate one node at w; `id` is w's registry id when registered, so the
// same-world recursion can stay on the memoized path.
Tv3 eval_node(EvalContext& ctx, FormulaId f, const BiworldData& w,
              std::optional<uint32_t> id) {
  FormulaArena& arena = ctx.arena();
  auto same = [&](FormulaId g) {
    return id ? eval_registered(ctx, g, w.level, *id) : eval_node(ctx, g, w, std::nullopt);
  };
  const FormulaNode& n = arena.node(f);
  switch (n.op) {
    case Op::Atom:
      return (w.obj >> n.sym) & 1u ? Tv3::T : Tv3::F;
    case Op::True:
      return Tv3::T;
    case Op::False:
      return Tv3::F;
    case Op::Not:
      return inverse(same(n.lhs));
    case Op::And:
      return glb_t(same(n.lhs), same(n.rhs));
    case Op::Or:
      return lub_t(same(n.lhs), same(n.rhs));
    case Op::Implies:
      return lub_t(inverse(same(n.lhs)), same(n.rhs));
    case Op::K: {
      if (w.level == 0) return Tv3::U;
      Tv3 acc = Tv3::T;
      w.poss[n.sym].for_each([&](uint32_t x) {
        acc = glb_t(acc, eval_registered(ctx, n.lhs, w.level - 1, x));
      });
      return acc;
    }
    case Op::M: {
      if (w.level == 0) return Tv3::U;
      Tv3 acc = Tv3::T;
      w.imp[n.sym].for_each([&](uint32_t x) {
        acc = glb_t(acc, inverse(eval_registered(ctx, n.lhs, w.level - 1, x)));
      });
      return acc;
    }
    case Op::E: {
      Tv3 acc = Tv3::T;
      for (AgentId a : arena.group(n.sym)) acc = glb_t(acc, same(arena.knows(a, n.lhs)));
      return acc;
    }
    case Op::C: {
      bool any_u = false;
      FormulaId iter = n.lhs;
      for (int k = 1; k <= w.level + 1; ++k) {
        iter = arena.everybody_knows(n.sym, iter);
        Tv3 v = same(iter);
        if (v == Tv3::F) return Tv3::F;
        if (v == Tv3::U) any_u = true;
      }
      return any_u ? Tv3::U : Tv3::T;
    }
    case Op::O:
      return glb_t(same(arena.knows(n.sym, n.lhs)), same(arena.knows_at_most(n.sym, n.lhs)));
  }
  return Tv3::U;
}

Tv3 eval_registered(EvalContext& ctx, FormulaId f, int level, uint32_t id) {
  uint64_t key = memo_key(f, level, id);
  auto it = ctx.memo().find(key);
  if (it != ctx.memo().end()) return it->second;
  Tv3 v = eval_node(ctx, f, ctx.universe().biworld(level, id), id);
  ctx.memo().emplace(key, v);
  return v;
}

}  // namespace

Tv3 eval3_c_probed(EvalContext& ctx, GroupId g, FormulaId body, const BiworldData& w,
                   int max_probe) {
  FormulaArena& arena = ctx.arena();
  auto id = ctx.universe().find(w);
  bool any_u = false;
  FormulaId iter = body;
  for (int k = 1; k <= max_probe; ++k) {
    iter = arena.everybody_knows(g, iter);  // E_G^k body
    Tv3 v = eval_node(ctx, iter, w, id);
    if (v == Tv3::F) return Tv3::F;
    if (v == Tv3::U) any_u = true;
  }
  return any_u ? Tv3::U : Tv3::T;
}

Tv3 eval3(EvalContext& ctx, FormulaId f, const BiworldData& w) {
  const Universe& u = ctx.universe();
  if (!u.admits(w)) throw ForeignBiworldError("biworld does not belong to this universe");
  if (auto id = u.find(w)) return eval_registered(ctx, f, w.level, *id);
  return eval_node(ctx, f, w, std::nullopt);
}

Tv3 eval3(EvalContext& ctx, FormulaId f, int level, uint32_t id) {
  return eval_registered(ctx, f, level, id);
}

}  // namespace biworlds
