#include <set>

#include "doctest.h"
#include "hsens/analysis.hpp"

using namespace hsens;

TEST_CASE("support size formula") {
  CHECK(support_size_formula(12, 1, 1) == 45);
  CHECK(support_size_formula(7, 1, 1) == 15);
  CHECK(support_size_formula(9, 1, 1) == 27);
  CHECK(support_size_formula(16, 1, 1) == 69);
  CHECK_THROWS_AS(support_size_formula(6, 1, 1), Error);
}

TEST_CASE("claim 1 cluster at n=9 cross-checked against the group route") {
  LabeledMinterm m = thm1_minterm(9, 3);
  ClusterReport rep = cluster_report(m, 2, 8, 50'000'000, nullptr);
  CHECK(rep.enumerated == 8ULL * 7 * 6 * 5 * 4 * 3);
  CHECK(rep.count == 6);
  CHECK(rep.merged_count == 3);
  CHECK(rep.histogram[0] == 2);  // identity and the W-reversal
  CHECK(rep.histogram[1] == 0);
  CHECK(rep.histogram[2] == 4);

  // oracle: all sigma with sigma(B) = B via apply_perm, distinct translates
  // within distance 2
  PartialAssignment base = m.to_assignment();
  std::set<std::vector<PartialAssignment::Entry>> near;
  uint64_t sigma_count = 0;
  GroupSpec::symmetric(8).for_each_element(50'000, [&](const VertexPerm& s8) {
    // extend to S_9 fixing the anchor vertex 9
    VertexPerm sigma = VertexPerm::identity_uniform(9);
    for (unsigned v = 0; v < 8; ++v) sigma.images[0][v] = s8.images[0][v];
    PartialAssignment q = apply_perm(sigma, base, m.indexer());
    if (dist(base, q) <= 2) {
      near.insert(q.entries());
      ++sigma_count;
    }
  });
  CHECK(near.size() == 3);       // distinct translates
  CHECK(sigma_count == 12);      // sigma count: 6 descriptors x |D|! = 2
}

TEST_CASE("claim 1 counts are flat across the grid") {
  auto reports = verify_claim1(3, {9, 10, 11, 12});
  for (const auto& r : reports) {
    CHECK(r.count == reports.front().count);
    CHECK(r.merged_count == reports.front().merged_count);
  }
  CHECK(reports.front().count == 6);
}

TEST_CASE("claim 2 pattern space equals the vertex-level enumeration at n=13") {
  LabeledMinterm m = thm2_minterm(13, 4);  // |D1| = 3, so r_max = 3 is untruncated
  ClusterReport vertex = cluster_report(m, 2, 4, 50'000'000, nullptr);
  ClusterReport pattern = cluster_report_thm2(m, 3, 2, 4);
  CHECK(!pattern.truncated);
  CHECK(pattern.enumerated == vertex.enumerated);
  CHECK(pattern.count == vertex.count);
  CHECK(pattern.merged_count == vertex.merged_count);
  for (size_t d = 0; d < vertex.histogram.size(); ++d)
    CHECK(pattern.histogram[d] == vertex.histogram[d]);
}

TEST_CASE("claim 2 cluster members at n=16") {
  ClusterReport rep = cluster_report_thm2(thm2_minterm(16, 4), 3, 2, 8);
  CHECK(rep.count == 2);         // identity and the W-reversal
  CHECK(rep.merged_count == 1);  // the same translate
  CHECK(rep.histogram[0] == 2);
  CHECK(rep.truncated);  // |D1| = 4 > r_max = 3
}

TEST_CASE("claim 2 pattern enumeration is capped") {
  // blocks of size l >= 2 explode the transition-matrix space
  CHECK_THROWS_AS(cluster_report_thm2(thm2_minterm(21, 7), 2, 2, 4, 100'000),
                  BudgetExceeded);
}

TEST_CASE("claim 2 ratio is bounded by the first grid point") {
  auto reports = verify_claim2(4, {16, 25}, 3, 2);
  // count / floor(sqrt(n)) must not grow
  CHECK(reports[1].count * 4 <= reports[0].count * 5);
  CHECK(reports[0].count == 2);
  CHECK(reports[1].count == 2);
}

TEST_CASE("claim 1 members re-check under materialized distance") {
  LabeledMinterm m = thm1_minterm(9, 3);
  std::vector<UniformPlacement> members;
  cluster_report(m, 2, 8, 50'000'000, &members);
  REQUIRE(members.size() == 6);
  PartialAssignment base = m.to_assignment();
  for (const auto& pl : members)
    CHECK(dist(base, placement_assignment(m, pl)) <= 2);
}

TEST_CASE("exchanging a D1 and a D2 vertex costs at least 3") {
  LabeledMinterm m = thm2_minterm(16, 4);
  UniformPlacement pl = m.uniform_roles();
  // move the lowest D1 vertex out, the lowest D2 vertex in
  uint64_t d1_low = pl.d1_mask & -pl.d1_mask;
  const uint64_t all = (1ULL << 16) - 1;
  uint64_t d2 = all & ~(pl.c_mask() | pl.b_mask | pl.d1_mask);
  pl.d1_mask = (pl.d1_mask ^ d1_low) | (d2 & -d2);
  CHECK(symbolic_dist_uniform(m.params(), m.uniform_roles(), pl) >= 3);
}

TEST_CASE("s0 cluster bound for thm1") {
  for (unsigned n : {9u, 10u, 12u}) {
    S0Bound b = cluster_s0_bound(thm1_minterm(n, 3));
    CHECK(b.anchor_choices == n);
    CHECK(b.candidates == 6);
    CHECK(b.cluster == 4);  // {identity, reversal} x {swap12 pair} clique
    CHECK(b.bound == 4ULL * n);
  }
}

TEST_CASE("radius-0 cluster bound counts exact-cover translates") {
  S0Bound b = cluster_s0_bound(thm1_minterm(9, 3), 0);
  CHECK(b.candidates == 2);  // identity and the reversal
  CHECK(b.cluster == 2);
  CHECK(b.bound >= 1);
}

TEST_CASE("s0 cluster bound for thm2 uses the pattern space") {
  S0Bound b = cluster_s0_bound(thm2_minterm(16, 4));
  CHECK(b.anchor_choices == 16);
  CHECK(b.cluster == 2);  // identity + reversal, distance 0
  CHECK(b.bound == 32);
}

TEST_CASE("s0 cluster bound for the partite family") {
  S0Bound b = cluster_s0_bound(thm3_partite_minterm(4, 3));
  CHECK(b.anchor_choices == 4);
  CHECK(b.cluster >= 1);
  CHECK(b.bound >= b.anchor_choices);
}

TEST_CASE("thm4 cluster scan at small n") {
  // The radius-2 ball around the identity is large: translates whose special
  // vertices and D1 images avoid the original's have disjoint supports and
  // so sit at distance 0. The pairwise clique stays small, because members
  // of one clique need almost-disjoint D1 regions.
  LabeledMinterm m = thm4_partite_minterm(6, 4);
  ClusterReport rep = cluster_report(m, 2, 4, 50'000'000, nullptr);
  CHECK(rep.enumerated == 120ULL * 120 * 15);  // selector triples x D1 images
  CHECK(rep.histogram[0] >= 1);
  CHECK(rep.count == 2377);

  S0Bound b = cluster_s0_bound(m);
  CHECK(b.anchor_choices == 6);  // n^l anchor images
  CHECK(b.candidates == 2377);
  CHECK(b.cluster == 2);
  CHECK(b.bound == 12);
}

TEST_CASE("translates with fresh regions sit at distance zero") {
  // The value rules engage only edges that touch the W region (and D1), so
  // a translate placed on fresh vertices shares no support with the
  // original. Distance counts 0/1 conflicts only; disjoint supports mean
  // distance 0. This is why the claim-2 scan bounds the D1-image
  // difference: beyond r_max the ball is dominated by far translates that
  // no common input can be adjacent to.
  LabeledMinterm m = thm2_minterm(25, 4);  // C = {1..6}, D1 = {7..11}, B = {25}
  UniformPlacement pl = m.uniform_roles();
  for (int i = 0; i < 6; ++i) pl.w_mask[i] = 1ULL << (11 + i);  // W' = {12..17}
  pl.d1_mask = 0;
  for (int v = 17; v < 22; ++v) pl.d1_mask |= 1ULL << v;  // D1' = {18..22}
  CHECK(symbolic_dist_uniform(m.params(), m.uniform_roles(), pl) == 0);
  PartialAssignment a = placement_assignment(m, m.uniform_roles());
  PartialAssignment b = placement_assignment(m, pl);
  CHECK(dist(a, b) == 0);
  CHECK(a.size() == b.size());
  CHECK(!(a == b));
}

TEST_CASE("claim 2 at n=16 is exact without truncation") {
  // r_max = |D1| covers every D1 image, so nothing is cut; fresh-region
  // translates need ~2(6 + sqrt(n)) vertices and do not fit at n = 16.
  ClusterReport full = cluster_report_thm2(thm2_minterm(16, 4), 4, 2, 8);
  CHECK(!full.truncated);
  CHECK(full.count == 2);
  CHECK(full.merged_count == 1);
}
