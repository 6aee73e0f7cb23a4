#include "doctest.h"
#include "hsens/compose.hpp"
#include "hsens/group.hpp"
#include "hsens/minterm_function.hpp"

using namespace hsens;

namespace {

PartialAssignment random_part(unsigned m, SplitMix64& rng) {
  std::vector<PartialAssignment::Entry> entries;
  while (entries.empty()) {
    entries.clear();
    for (unsigned v = 0; v < m; ++v) {
      uint64_t r = rng.next() % 3;
      if (r < 2) entries.emplace_back(v, static_cast<uint8_t>(r));
    }
  }
  return PartialAssignment(m, std::move(entries));
}

}  // namespace

TEST_CASE("single part composes to itself") {
  PartialAssignment p(5, {{0, 1}, {3, 0}});
  CHECK(xor_compose_minterms({p}) == p);
}

TEST_CASE("star absorbs and support factorizes") {
  PartialAssignment a(2, {{0, 1}});          // star at 1
  PartialAssignment b(3, {{0, 0}, {2, 1}});  // star at 1
  PartialAssignment c = xor_compose_minterms({a, b});
  CHECK(c.n_vars() == 6);
  CHECK(c.size() == a.size() * b.size());
  // (i, j) with first coordinate most significant: var = i*3 + j
  CHECK(c.at(0 * 3 + 0) == 1);  // 1 xor 0
  CHECK(c.at(0 * 3 + 2) == 0);  // 1 xor 1
  CHECK(!c.at(0 * 3 + 1).has_value());
  CHECK(!c.at(1 * 3 + 0).has_value());  // a star at i=1
}

TEST_CASE("product law and xor values on random pairs") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    unsigned m1 = 2 + rng.next() % 10;
    unsigned m2 = 2 + rng.next() % 10;
    PartialAssignment p1 = random_part(m1, rng);
    PartialAssignment p2 = random_part(m2, rng);
    PartialAssignment c = xor_compose_minterms({p1, p2});
    CHECK(c.size() == p1.size() * p2.size());
    for (auto [var, bit] : c.entries()) {
      uint64_t i = var / m2, j = var % m2;
      auto v1 = p1.at(i), v2 = p2.at(j);
      REQUIRE(v1.has_value());
      REQUIRE(v2.has_value());
      CHECK(bit == (*v1 ^ *v2));
    }
  }
}

TEST_CASE("three factors compose associatively in size") {
  SplitMix64 rng(7);
  PartialAssignment p1 = random_part(3, rng);
  PartialAssignment p2 = random_part(4, rng);
  PartialAssignment p3 = random_part(5, rng);
  PartialAssignment c = xor_compose_minterms({p1, p2, p3});
  CHECK(c.n_vars() == 60);
  CHECK(c.size() == p1.size() * p2.size() * p3.size());
}

TEST_CASE("reference cyclic minterm has a cube-root block") {
  PartialAssignment p = reference_cyclic_minterm(27);
  CHECK(p.n_vars() == 27);
  CHECK(p.size() == 3);
  CHECK(p.at(0) == 1);
  CHECK(p.at(1) == 0);
  CHECK(p.at(2) == 0);
  CHECK(reference_cyclic_minterm(1).size() == 1);
  CHECK(reference_cyclic_minterm(63).size() == 3);
  CHECK(reference_cyclic_minterm(64).size() == 4);
}

TEST_CASE("composed minterm function is invariant under the abelian group") {
  GroupSpec g = GroupSpec::abelian_product({2, 3});
  PartialAssignment c =
      xor_compose_minterms({reference_cyclic_minterm(2), reference_cyclic_minterm(3)});
  VarIndexer ix = VarIndexer::uniform(6, 1);  // plain variables over [6]
  MintermFunction f = MintermFunction::from_explicit(c, g, ix);
  TruthTable t = f.materialize();
  CHECK(is_invariant(t, g, ix));
  CHECK(!t.is_constant());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(xor_compose_minterms({}), Error);
  CHECK_THROWS_AS(xor_compose_minterms({PartialAssignment::empty(3)}), Error);
}
