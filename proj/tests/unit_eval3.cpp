#include <doctest.h>

#include <random>

#include "biworlds/eval3.hpp"
#include "support.hpp"

using namespace biworlds;
using namespace biworlds::testsupport;

namespace {

struct Fixture {
  Universe u{session_p(), 1, 1'000'000};
  FormulaArena arena{u.session()};
  EvalContext ctx{u, arena};
  FormulaId p = arena.atom(std::string("p"));
  AgentId a = 0;
  GroupId ga = arena.intern_group({0});
};

}  // namespace

TEST_CASE("valuation worked examples") {
  Fixture f;
  BiworldData p0{0, 1, {}, {}};
  CHECK(eval3(f.ctx, f.p, p0) == Tv3::T);

  BiworldData v = v1(f.u);
  CHECK(eval3(f.ctx, f.arena.knows(f.a, f.p), v) == Tv3::T);
  // glb over imp {{p},{}} of inverted p-values: glb{f, t} = f
  CHECK(eval3(f.ctx, f.arena.knows_at_most(f.a, f.p), v) == Tv3::F);

  CHECK(eval3(f.ctx, f.arena.knows(f.a, f.p), p0) == Tv3::U);

  // vacuous accessibility: every E-iterate is an empty glb
  BiworldData vac = level1(1, {}, {0, 1});
  CHECK(eval3(f.ctx, f.arena.common_knowledge(f.ga, f.p), vac) == Tv3::T);

  // E^1 = t but E^2 = u at depth 1
  CHECK(eval3(f.ctx, f.arena.common_knowledge(f.ga, f.p), v) == Tv3::U);
}

TEST_CASE("resolves") {
  Fixture f;
  FormulaId kp = f.arena.knows(f.a, f.p);
  for (uint32_t id = 0; id < f.u.level_size(1); ++id)
    CHECK(resolves(f.ctx, kp, f.u.biworld(1, id)));

  CHECK_FALSE(resolves(f.ctx, f.arena.knows(f.a, kp), v1(f.u)));

  FormulaId contradiction = f.arena.conjunction(f.p, f.arena.negation(f.p));
  CHECK(resolves(f.ctx, contradiction, BiworldData{0, 1, {}, {}}));
}

TEST_CASE("foreign biworld rejected") {
  Fixture f;
  Universe other(session_pq(), 1, 1'000'000);
  BiworldData lvl1 = other.biworld(1, 0);  // id domain differs
  CHECK_THROWS_AS(eval3(f.ctx, f.p, lvl1), ForeignBiworldError);
  BiworldData q0{0, 2, {}, {}};  // {q} interpretation, unknown here
  CHECK_THROWS_AS(eval3(f.ctx, f.p, q0), ForeignBiworldError);
}

TEST_CASE("precision monotonicity on sampled chains") {
  Fixture f;
  FormulaGen gen(f.arena, 1234);
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    FormulaId phi = gen.gen(2, 8);
    uint32_t lo = static_cast<uint32_t>(rng() % f.u.level_size(0));
    BiworldData w0{0, lo, {}, {}};
    auto exts1 = extensions(f.u, w0, 9);
    const BiworldData& w1 = exts1.items[rng() % exts1.items.size()];
    auto exts2 = extensions(f.u, w1, 40);
    const BiworldData& w2 = exts2.items[rng() % exts2.items.size()];
    Tv3 a0 = eval3(f.ctx, phi, w0);
    Tv3 a1 = eval3(f.ctx, phi, w1);
    Tv3 a2 = eval3(f.ctx, phi, w2);
    CHECK(leq_p(a0, a1));
    CHECK(leq_p(a1, a2));
    ++checked;
  }
  CHECK(checked == 1500);
}

TEST_CASE("resolution for C-free formulas at sufficient depth") {
  Fixture f;
  FormulaGen gen(f.arena, 555);
  // exhaustive at level 1 with MD <= 1 formulas
  for (int i = 0; i < 300; ++i) {
    FormulaId phi = gen.gen(1, 8);
    for (uint32_t id = 0; id < f.u.level_size(1); ++id)
      CHECK(eval3(f.ctx, phi, 1, id) != Tv3::U);
  }
  // sampled at level 2 with MD <= 2 formulas
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    FormulaId phi = gen.gen(2, 8);
    uint32_t id = static_cast<uint32_t>(rng() % f.u.level_size(1));
    auto exts = extensions(f.u, f.u.biworld(1, id), 25);
    const BiworldData& w2 = exts.items[rng() % exts.items.size()];
    CHECK(eval3(f.ctx, phi, w2) != Tv3::U);
  }
}

TEST_CASE("sugar coherence") {
  Fixture f;
  FormulaGen gen(f.arena, 31337);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 400; ++i) {
    FormulaId phi = gen.gen(1, 6);
    uint32_t id = static_cast<uint32_t>(rng() % f.u.level_size(1));
    BiworldData w = f.u.biworld(1, id);

    Tv3 o = eval3(f.ctx, f.arena.only_knows(f.a, phi), w);
    Tv3 expanded = glb_t(eval3(f.ctx, f.arena.knows(f.a, phi), w),
                         eval3(f.ctx, f.arena.knows_at_most(f.a, phi), w));
    CHECK(o == expanded);

    FormulaId psi = gen.gen(1, 6);
    // or / implies / true / false match their not-and expansions
    Tv3 orv = eval3(f.ctx, f.arena.disjunction(phi, psi), w);
    Tv3 or_exp = eval3(
        f.ctx,
        f.arena.negation(f.arena.conjunction(f.arena.negation(phi), f.arena.negation(psi))), w);
    CHECK(orv == or_exp);
    Tv3 impv = eval3(f.ctx, f.arena.implication(phi, psi), w);
    Tv3 imp_exp =
        eval3(f.ctx, f.arena.negation(f.arena.conjunction(phi, f.arena.negation(psi))), w);
    CHECK(impv == imp_exp);
    CHECK(eval3(f.ctx, f.arena.truth(), w) == Tv3::T);
    CHECK(eval3(f.ctx, f.arena.falsity(), w) == Tv3::F);
    CHECK(eval3(f.ctx, f.arena.falsity(), w) ==
          eval3(f.ctx, f.arena.conjunction(f.p, f.arena.negation(f.p)),
                BiworldData{0, 1, {}, {}}));
  }
}

TEST_CASE("bounded C probe is stable under extended ranges") {
  Fixture f;
  FormulaGen gen(f.arena, 2024);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 250; ++i) {
    FormulaId body = gen.gen(1, 5);
    // level-1 worlds and sampled level-2 worlds
    uint32_t id = static_cast<uint32_t>(rng() % f.u.level_size(1));
    BiworldData w1 = f.u.biworld(1, id);
    Tv3 probe1 = eval3_c_probed(f.ctx, f.ga, body, w1, w1.level + 1);
    Tv3 probe1x = eval3_c_probed(f.ctx, f.ga, body, w1, 2 * (w1.level + 1));
    CHECK(probe1 == probe1x);
    CHECK(probe1 == eval3(f.ctx, f.arena.common_knowledge(f.ga, body), w1));

    auto exts = extensions(f.u, w1, 12);
    const BiworldData& w2 = exts.items[rng() % exts.items.size()];
    Tv3 probe2 = eval3_c_probed(f.ctx, f.ga, body, w2, w2.level + 1);
    Tv3 probe2x = eval3_c_probed(f.ctx, f.ga, body, w2, 2 * (w2.level + 1));
    CHECK(probe2 == probe2x);
  }
}

TEST_CASE("de morgan and double negation hold value-wise") {
  Fixture f;
  FormulaGen gen(f.arena, 808);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 400; ++i) {
    FormulaId phi = gen.gen(1, 6), psi = gen.gen(1, 6);
    uint32_t id = static_cast<uint32_t>(rng() % f.u.level_size(1));
    BiworldData w = f.u.biworld(1, id);
    Tv3 lhs = eval3(f.ctx, f.arena.negation(f.arena.conjunction(phi, psi)), w);
    Tv3 rhs = eval3(
        f.ctx, f.arena.disjunction(f.arena.negation(phi), f.arena.negation(psi)), w);
    CHECK(lhs == rhs);
    CHECK(eval3(f.ctx, f.arena.negation(f.arena.negation(phi)), w) == eval3(f.ctx, phi, w));
  }
}

TEST_CASE("multi-agent E and K") {
  Universe u(session_p_ab(), 1, 1'000'000);
  FormulaArena arena(u.session());
  EvalContext ctx(u, arena);
  FormulaId p = arena.atom(std::string("p"));
  GroupId gab = arena.intern_group({0, 1});

  // E_{a,b} p = glb(K_a p, K_b p) on every level-1 biworld
  for (uint32_t id = 0; id < u.level_size(1); ++id) {
    Tv3 e = eval3(ctx, arena.everybody_knows(gab, p), 1, id);
    Tv3 k = glb_t(eval3(ctx, arena.knows(0, p), 1, id), eval3(ctx, arena.knows(1, p), 1, id));
    CHECK(e == k);
  }
}
