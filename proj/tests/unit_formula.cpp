#include <doctest.h>
#include <functional>

#include "biworlds/formula.hpp"
#include "biworlds/truth.hpp"
#include "support.hpp"

using namespace biworlds;
using namespace biworlds::testsupport;

TEST_CASE("truth lattice tables") {
  CHECK(glb_t({Tv3::T, Tv3::U}) == Tv3::U);
  CHECK(glb_t(std::initializer_list<Tv3>{}) == Tv3::T);
  CHECK(glb_t({Tv3::U, Tv3::F}) == Tv3::F);

  CHECK(lub_p({Tv3::U, Tv3::T}) == Tv3::T);
  CHECK(lub_p({Tv3::U}) == Tv3::U);
  CHECK_THROWS_AS(lub_p({Tv3::T, Tv3::F}), PrecisionConflictError);

  CHECK(inverse(Tv3::T) == Tv3::F);
  CHECK(inverse(Tv3::U) == Tv3::U);
  CHECK(inverse(Tv3::F) == Tv3::T);
}

TEST_CASE("lattice laws") {
  const Tv3 all[] = {Tv3::F, Tv3::U, Tv3::T};
  for (Tv3 a : all) {
    CHECK(glb_t(a, a) == a);
    CHECK(glb_t(a, Tv3::T) == a);  // unit
    CHECK(inverse(inverse(a)) == a);
    for (Tv3 b : all) {
      CHECK(glb_t(a, b) == glb_t(b, a));
      // inverse is order-reversing on <=_t and order-preserving on <=_p
      if (leq_t(a, b)) CHECK(leq_t(inverse(b), inverse(a)));
      if (leq_p(a, b)) CHECK(leq_p(inverse(a), inverse(b)));
      for (Tv3 c : all) CHECK(glb_t(glb_t(a, b), c) == glb_t(a, glb_t(b, c)));
    }
  }
}

TEST_CASE("ordinal order and arithmetic") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    OrdinalW2 a{static_cast<uint32_t>(rng() % 5), static_cast<uint32_t>(rng() % 7)};
    OrdinalW2 b{static_cast<uint32_t>(rng() % 5), static_cast<uint32_t>(rng() % 7)};
    OrdinalW2 c{static_cast<uint32_t>(rng() % 5), static_cast<uint32_t>(rng() % 7)};
    // total order
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    if (a < b && b < c) CHECK(a < c);
    CHECK(a < a.succ());
    CHECK(a < a.plus_omega());  // strictly increasing
    if (a < b) CHECK(a.plus_omega() <= b.plus_omega());  // weakly monotone
  }
  CHECK(OrdinalW2{0, 3}.plus_omega() == OrdinalW2{1, 0});
}

TEST_CASE("parse examples") {
  Session s({"p", "q"}, {"a", "b"});
  FormulaArena arena(s);
  FormulaId f = parse(arena, "K[a] p & ~q");
  const FormulaNode& n = arena.node(f);
  REQUIRE(n.op == Op::And);
  CHECK(arena.node(n.lhs).op == Op::K);
  CHECK(arena.node(arena.node(n.lhs).lhs).op == Op::Atom);
  CHECK(arena.node(n.rhs).op == Op::Not);

  FormulaId o = parse(arena, "O[a] p");
  CHECK(arena.node(o).op == Op::O);

  CHECK_THROWS_AS(parse(arena, "C[{}] p"), EmptyGroupError);
  CHECK_THROWS_AS(parse(arena, "K[a] r"), UndeclaredSymbolError);
  CHECK_THROWS_AS(parse(arena, "K[c] p"), UndeclaredSymbolError);
  CHECK_THROWS_AS(parse(arena, "p & & q"), ParseError);
}

TEST_CASE("render examples") {
  Session s({"p", "q"}, {"a", "b"});
  FormulaArena arena(s);
  CHECK(render(arena, arena.knows(0, arena.atom(std::string("p")))) == "K[a] p");
  CHECK(render(arena, arena.conjunction(arena.atom(std::string("p")),
                                        arena.negation(arena.atom(std::string("q"))))) ==
        "(p & ~q)");
  GroupId g = arena.intern_group({1, 0});  // sorted on intern
  CHECK(render(arena, arena.common_knowledge(g, arena.atom(std::string("p")))) == "C[{a,b}] p");
}

TEST_CASE("parse/render round trip on random formulas") {
  Session s({"p", "q"}, {"a", "b"});
  FormulaArena arena(s);
  FormulaGen gen(arena, 42, /*allow_c=*/true);
  for (int i = 0; i < 500; ++i) {
    FormulaId f = gen.gen(3, 12);
    FormulaId g = parse(arena, render(arena, f));
    CHECK(g == f);  // interning makes equality id equality
  }
}

TEST_CASE("modal depth") {
  Session s({"p"}, {"a"});
  FormulaArena arena(s);
  FormulaId p = arena.atom(std::string("p"));
  CHECK(modal_depth(arena, p) == OrdinalW2{0, 0});
  GroupId ga = arena.intern_group({0});
  FormulaId cp = arena.common_knowledge(ga, p);
  CHECK(modal_depth(arena, cp) == OrdinalW2{1, 0});
  CHECK(modal_depth(arena, arena.knows(0, cp)) == OrdinalW2{1, 1});
}

TEST_CASE("modal depth properties") {
  Session s({"p", "q"}, {"a", "b"});
  FormulaArena arena(s);
  FormulaGen gen(arena, 99, /*allow_c=*/true);
  for (int i = 0; i < 400; ++i) {
    FormulaId f = gen.gen(3, 10);
    // O depth agrees with its K & M expansion
    FormulaId of = arena.only_knows(0, f);
    FormulaId expand = arena.conjunction(arena.knows(0, f), arena.knows_at_most(0, f));
    CHECK(modal_depth(arena, of) == modal_depth(arena, expand));
    // depth strictly below omega^2, coefficient bounded by C nesting
    OrdinalW2 d = modal_depth(arena, f);
    std::function<uint32_t(FormulaId)> cnest = [&](FormulaId id) -> uint32_t {
      const FormulaNode& n = arena.node(id);
      switch (n.op) {
        case Op::Atom:
        case Op::True:
        case Op::False: return 0;
        case Op::And:
        case Op::Or:
        case Op::Implies: return std::max(cnest(n.lhs), cnest(n.rhs));
        case Op::C: return 1 + cnest(n.lhs);
        default: return cnest(n.lhs);
      }
    };
    CHECK(d.omega_coeff <= cnest(f));
  }
}
