#include <set>

#include "doctest.h"
#include "hsens/group.hpp"

using namespace hsens;

TEST_CASE("apply_perm on edges follows the definition") {
  VarIndexer ix = VarIndexer::uniform(4, 2);
  PartialAssignment p(6, {{ix.rank_edge(0b0011), 1}});  // edge {1,2}

  VertexPerm id = VertexPerm::identity_uniform(4);
  CHECK(apply_perm(id, p, ix) == p);

  // transposition (1 3): sigma(p) at {2,3} equals p at sigma({2,3}) = {1,2}
  VertexPerm t = VertexPerm::identity_uniform(4);
  std::swap(t.images[0][0], t.images[0][2]);
  PartialAssignment q = apply_perm(t, p, ix);
  CHECK(q.size() == 1);
  CHECK(q.at(ix.rank_edge(0b0110)) == 1);

  CHECK(apply_perm(t.inverse(), q, ix) == p);
}

TEST_CASE("apply_perm composes contravariantly") {
  VarIndexer ix = VarIndexer::uniform(5, 2);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PartialAssignment::Entry> entries;
    for (uint64_t v = 0; v < ix.num_vars(); ++v) {
      uint64_t r = rng.next() % 3;
      if (r < 2) entries.emplace_back(v, static_cast<uint8_t>(r));
    }
    PartialAssignment p(ix.num_vars(), std::move(entries));
    auto random_perm = [&] {
      VertexPerm s = VertexPerm::identity_uniform(5);
      for (unsigned i = 4; i > 0; --i)
        std::swap(s.images[0][i], s.images[0][rng.next() % (i + 1)]);
      return s;
    };
    VertexPerm sigma = random_perm(), tau = random_perm();
    CHECK(apply_perm(sigma.compose(tau), p, ix) ==
          apply_perm(tau, apply_perm(sigma, p, ix), ix));
  }
}

TEST_CASE("group orders and element enumeration") {
  CHECK(GroupSpec::symmetric(4).order() == 24);
  CHECK(GroupSpec::partite_product(3, 2).order() == 36);
  CHECK(GroupSpec::partite_product(3, 3).order() == 216);
  CHECK(GroupSpec::abelian_product({2, 3}).order() == 6);
  CHECK(GroupSpec::trivial(9).order() == 1);

  // enumerated elements are distinct and complete
  std::set<std::vector<std::vector<uint8_t>>> seen;
  GroupSpec::symmetric(4).for_each_element(
      1000, [&](const VertexPerm& p) { seen.insert(p.images); });
  CHECK(seen.size() == 24);

  seen.clear();
  GroupSpec::partite_product(3, 2).for_each_element(
      1000, [&](const VertexPerm& p) { seen.insert(p.images); });
  CHECK(seen.size() == 36);

  CHECK_THROWS_AS(GroupSpec::symmetric(10).for_each_element(100, [](const VertexPerm&) {}),
                  BudgetExceeded);
}

TEST_CASE("generators generate the declared group") {
  // closure from the generators alone (test-local BFS)
  auto closure_size = [](const GroupSpec& g) {
    std::set<std::vector<std::vector<uint8_t>>> seen;
    std::vector<VertexPerm> frontier;
    VertexPerm id = g.kind == GroupSpec::Kind::PartiteProduct
                        ? VertexPerm::identity_partite(g.n, g.k)
                        : VertexPerm::identity_uniform(g.n);
    seen.insert(id.images);
    frontier.push_back(id);
    auto gens = g.generators();
    while (!frontier.empty()) {
      VertexPerm cur = frontier.back();
      frontier.pop_back();
      for (const auto& gen : gens) {
        VertexPerm next = gen.compose(cur);
        if (seen.insert(next.images).second) frontier.push_back(next);
      }
    }
    return seen.size();
  };
  CHECK(closure_size(GroupSpec::symmetric(4)) == 24);
  CHECK(closure_size(GroupSpec::symmetric(5)) == 120);
  CHECK(closure_size(GroupSpec::partite_product(3, 2)) == 36);
  CHECK(closure_size(GroupSpec::abelian_product({2, 3})) == 6);
}

TEST_CASE("group spec parsing round trips") {
  for (const char* text : {"sym:9", "partite:3:3", "abelian:2x3x4", "trivial:5"}) {
    GroupSpec g = GroupSpec::parse(text);
    CHECK(g.to_string() == text);
  }
  CHECK_THROWS_AS(GroupSpec::parse("nope"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("sym"), Error);
}

TEST_CASE("abelian relabeling acts by coordinate-wise addition") {
  AbelianRelabeling rel = abelian_relabel(GroupSpec::abelian_product({2, 3}));
  CHECK(rel.n() == 6);
  // element (1,0) on label (0,2) -> (1,2)
  unsigned v = rel.index_of(std::vector<unsigned>{0, 2});
  std::vector<unsigned> e{1, 0};
  auto img = rel.label_of(rel.act(e, v));
  CHECK(img == std::vector<unsigned>{1, 2});

  // l = 1: the shift generator is the n-cycle
  AbelianRelabeling cyc = abelian_relabel(GroupSpec::abelian_product({5}));
  auto gens = cyc.shift_generators();
  REQUIRE(gens.size() == 1);
  for (unsigned u = 0; u < 5; ++u) CHECK(gens[0].images[0][u] == (u + 1) % 5);

  // transitivity: the orbit of any label is everything
  std::set<unsigned> orbit;
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 3; ++b) {
      std::vector<unsigned> el{a, b};
      orbit.insert(rel.act(el, 4));
    }
  CHECK(orbit.size() == 6);
}

TEST_CASE("invariance checks") {
  VarIndexer ix = VarIndexer::uniform(3, 2);
  GroupSpec s3 = GroupSpec::symmetric(3);

  CHECK(is_invariant(TruthTable::constant(3, true), s3, ix));
  CHECK(is_invariant(TruthTable::constant(3, false), s3, ix));

  // "edge {1,2} present" is not label-invariant
  uint32_t var12 = static_cast<uint32_t>(ix.rank_edge(0b011));
  TruthTable edge = TruthTable::build(3, [&](uint32_t x) { return (x >> var12) & 1; });
  CHECK(!is_invariant(edge, s3, ix));

  // "at least one edge" is
  CHECK(is_invariant(TruthTable::or_fn(3), s3, ix));
}

TEST_CASE("single-permutation invariance agrees with a direct check") {
  VarIndexer ix = VarIndexer::uniform(4, 2);
  SplitMix64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    TruthTable f = TruthTable::random_fn(6, rng);
    VertexPerm sigma = VertexPerm::identity_uniform(4);
    for (unsigned i = 3; i > 0; --i)
      std::swap(sigma.images[0][i], sigma.images[0][rng.next() % (i + 1)]);

    bool direct = true;
    for (uint32_t x = 0; x < 64 && direct; ++x) {
      uint32_t y = 0;
      for (unsigned s = 0; s < 6; ++s) {
        uint64_t img = ix.rank_edge(sigma.apply_edge(ix.unrank_edge(s)));
        y |= ((x >> img) & 1u) << s;
      }
      direct = f.get(x) == f.get(y);
    }
    CHECK(is_invariant_under(f, sigma, ix) == direct);
  }
}
