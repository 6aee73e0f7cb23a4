#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <numeric>

#include "hsens/analysis.hpp"
#include "json.hpp"

namespace hsens {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}
uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

int pairwise_dist(const LabeledMinterm& family, const UniformPlacement& a,
                  const UniformPlacement& b, int abort_above) {
  return symbolic_dist_uniform(family.params(), a, b, abort_above);
}
int pairwise_dist(const LabeledMinterm& family, const PartitePlacement& a,
                  const PartitePlacement& b, int abort_above) {
  return symbolic_dist_partite(family.params(), a, b, abort_above);
}

// Max clique over the pairwise distance <= radius graph (branch on the
// lowest candidate, in or out).
template <class Placement>
int max_clique(const LabeledMinterm& family, const std::vector<Placement>& cands,
               int radius) {
  const size_t m = cands.size();
  if (m == 0) return 0;
  if (m > 4096) throw BudgetExceeded("clique cap: more than 4096 candidates");
  const size_t words = (m + 63) / 64;
  std::vector<std::vector<uint64_t>> adj(m, std::vector<uint64_t>(words, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (pairwise_dist(family, cands[i], cands[j], radius) <= radius) {
        adj[i][j >> 6] |= 1ULL << (j & 63);
        adj[j][i >> 6] |= 1ULL << (i & 63);
      }

  int best = 0;
  std::function<void(std::vector<uint64_t>, int)> grow = [&](std::vector<uint64_t> avail,
                                                             int size) {
    int remaining = 0;
    for (uint64_t w : avail) remaining += std::popcount(w);
    if (size > best) best = size;
    if (remaining == 0 || size + remaining <= best) return;
    size_t v = 0;
    for (size_t w = 0; w < words; ++w)
      if (avail[w]) {
        v = w * 64 + std::countr_zero(avail[w]);
        break;
      }
    std::vector<uint64_t> with(words);
    for (size_t w = 0; w < words; ++w) with[w] = avail[w] & adj[v][w];
    grow(std::move(with), size + 1);
    avail[v >> 6] &= ~(1ULL << (v & 63));
    grow(std::move(avail), size);
  };
  std::vector<uint64_t> all(words, 0);
  for (size_t i = 0; i < m; ++i) all[i >> 6] |= 1ULL << (i & 63);
  grow(std::move(all), 0);
  return best;
}

// Distance-0 equivalence classes among candidates.
template <class Placement>
uint64_t merged_class_count(const LabeledMinterm& family,
                            const std::vector<Placement>& members) {
  const size_t m = members.size();
  std::vector<size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t v) -> size_t {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (pairwise_dist(family, members[i], members[j], 0) == 0)
        parent[find(i)] = find(j);
  uint64_t classes = 0;
  for (size_t v = 0; v < m; ++v) classes += find(v) == v;
  return classes;
}

}  // namespace

uint64_t support_size_formula(unsigned n, unsigned k1, unsigned k2) {
  if (n < 6 * k2 + k1) throw Error("support formula needs n >= 6*k2 + k1");
  uint64_t total = 0;
  for (unsigned i = k2; i <= 2 * k2; ++i)
    total += binom(6 * k2, i) * binom(n - 6 * k2 - k1, 2 * k2 - i);
  return total;
}

std::string ClusterReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["k"] = k;
  j["constraint"] = constraint;
  j["radius"] = radius;
  j["enumerated"] = enumerated;
  j["count"] = count;
  j["merged_count"] = merged_count;
  j["histogram"] = histogram;
  j["truncated"] = truncated;
  if (truncated) j["r_max"] = r_max;
  j["seconds"] = seconds;
  return j.dump();
}

ClusterReport cluster_report(const LabeledMinterm& family, int radius,
                             int hist_cutoff, uint64_t cap,
                             std::vector<UniformPlacement>* members_out) {
  auto t0 = Clock::now();
  const auto& mp = family.params();
  ClusterReport rep;
  rep.n = mp.n;
  rep.k = mp.k;
  rep.constraint = "anchor-fixed";
  rep.radius = radius;
  rep.histogram.assign(hist_cutoff + 1, 0);

  OrbitConstraints oc;
  oc.fix_anchor = true;
  oc.cap = cap;

  if (family.is_uniform()) {
    const UniformPlacement& id = family.uniform_roles();
    if (count_placements(family, oc) > oc.cap)
      throw BudgetExceeded("placement enumeration cap: " +
                           std::to_string(count_placements(family, oc)) +
                           " descriptors exceed cap " + std::to_string(oc.cap));

    // Partition by the first W block; integer sums and prefix-ordered member
    // merging keep the result identical for any worker count.
    const uint64_t all = mp.n == 64 ? ~0ULL : (1ULL << mp.n) - 1;
    std::vector<uint64_t> first_blocks;
    for_each_ksubset(all & ~id.b_mask, mp.k2, [&](uint64_t w) {
      first_blocks.push_back(w);
      return true;
    });
    std::vector<ClusterReport> part(first_blocks.size());
    std::vector<std::vector<UniformPlacement>> part_members(first_blocks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(first_blocks.size()); ++i) {
      ClusterReport& local = part[i];
      local.histogram.assign(hist_cutoff + 1, 0);
      OrbitConstraints sub = oc;
      sub.cap = UINT64_MAX;  // checked above for the whole space
      sub.w_prefix[0] = first_blocks[i];
      sub.w_prefix_count = 1;
      for_each_uniform_placement(family, sub, [&](const UniformPlacement& pl) {
        ++local.enumerated;
        int d = symbolic_dist_uniform(mp, id, pl, hist_cutoff);
        if (d <= hist_cutoff) ++local.histogram[d];
        if (d <= radius) {
          ++local.count;
          part_members[i].push_back(pl);
        }
        return true;
      });
    }
    std::vector<UniformPlacement> members;
    for (size_t i = 0; i < part.size(); ++i) {
      rep.enumerated += part[i].enumerated;
      rep.count += part[i].count;
      for (int d = 0; d <= hist_cutoff; ++d) rep.histogram[d] += part[i].histogram[d];
      members.insert(members.end(), part_members[i].begin(), part_members[i].end());
    }
    rep.merged_count = merged_class_count(family, members);
    if (members_out) *members_out = std::move(members);
  } else {
    const PartitePlacement& id = family.partite_roles();
    std::vector<PartitePlacement> members;
    for_each_partite_placement(family, oc, [&](const PartitePlacement& pl) {
      ++rep.enumerated;
      int d = symbolic_dist_partite(mp, id, pl, hist_cutoff);
      if (d <= hist_cutoff) ++rep.histogram[d];
      if (d <= radius) {
        ++rep.count;
        members.push_back(pl);
      }
      return true;
    });
    rep.merged_count = merged_class_count(family, members);
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

std::vector<ClusterReport> verify_claim1(unsigned k, const std::vector<unsigned>& n_grid,
                                         int radius, uint64_t cap) {
  std::vector<ClusterReport> out;
  for (unsigned n : n_grid)
    out.push_back(cluster_report(thm1_minterm(n, k), radius, 8, cap, nullptr));
  return out;
}

// --- claim 2: pattern-level enumeration ---
//
// With the anchor fixed, a placement is described by how many vertices of
// each old region (W1..W6, D1, D2) land in each new region: the distance to
// the minterm depends only on that 8x8 transition matrix because vertices
// are interchangeable inside every region on both sides. Each matrix is
// realized by prod_r multinomial(|r|; row r) vertex-level descriptors.

namespace {

using PatternMatrix = std::array<std::array<uint8_t, 8>, 8>;

struct PatternSpace {
  const LabeledMinterm* family = nullptr;
  unsigned l = 0, s = 0, n2 = 0;
  std::array<unsigned, 8> region_size{};
  std::array<std::vector<uint8_t>, 8> region_vertices;  // ascending per region
};

PatternSpace pattern_space_of(const LabeledMinterm& family) {
  const auto& mp = family.params();
  if (mp.rule != MintermRule::Thm2) throw Error("pattern scan requires the thm2 rule");
  PatternSpace ps;
  ps.family = &family;
  ps.l = mp.k2;
  ps.s = mp.d1_size;
  ps.n2 = mp.n - 7 * mp.k2 - mp.d1_size;
  ps.region_size = {ps.l, ps.l, ps.l, ps.l, ps.l, ps.l, ps.s, ps.n2};
  const auto& roles = family.uniform_roles();
  for (unsigned r = 0; r < 6; ++r)
    for (uint64_t m = roles.w_mask[r]; m; m &= m - 1)
      ps.region_vertices[r].push_back(static_cast<uint8_t>(std::countr_zero(m)));
  const uint64_t all = mp.n == 64 ? ~0ULL : (1ULL << mp.n) - 1;
  const uint64_t d2_mask = all & ~(roles.c_mask() | roles.b_mask | roles.d1_mask);
  for (uint64_t m = roles.d1_mask; m; m &= m - 1)
    ps.region_vertices[6].push_back(static_cast<uint8_t>(std::countr_zero(m)));
  for (uint64_t m = d2_mask; m; m &= m - 1)
    ps.region_vertices[7].push_back(static_cast<uint8_t>(std::countr_zero(m)));
  return ps;
}

uint64_t pattern_multiplicity(const PatternSpace& ps, const PatternMatrix& m) {
  uint64_t mult = 1;
  for (unsigned r = 0; r < 8; ++r) {
    unsigned remaining = ps.region_size[r];
    for (unsigned c = 0; c < 8; ++c) {
      mult = sat_mul(mult, binom(remaining, m[r][c]));
      remaining -= m[r][c];
    }
  }
  return mult;
}

UniformPlacement pattern_representative(const PatternSpace& ps, const PatternMatrix& m) {
  UniformPlacement pl;
  pl.b_mask = ps.family->uniform_roles().b_mask;
  std::array<unsigned, 8> cursor{};
  for (unsigned c = 0; c < 8; ++c) {
    uint64_t mask = 0;
    for (unsigned r = 0; r < 8; ++r)
      for (unsigned t = 0; t < m[r][c]; ++t)
        mask |= 1ULL << ps.region_vertices[r][cursor[r]++];
    if (c < 6)
      pl.w_mask[c] = mask;
    else if (c == 6)
      pl.d1_mask = mask;
  }
  return pl;
}

// All vertex-level descriptors realizing the matrix (used only for the tiny
// near-minterm candidate sets).
void expand_pattern(const PatternSpace& ps, const PatternMatrix& m, uint64_t limit,
                    std::vector<UniformPlacement>& out) {
  std::array<std::array<uint64_t, 8>, 8> part{};  // chosen set per (r, c)

  std::function<void(unsigned, unsigned, uint64_t)> rec = [&](unsigned r, unsigned c,
                                                              uint64_t pool) {
    if (r == 8) {
      UniformPlacement pl;
      pl.b_mask = ps.family->uniform_roles().b_mask;
      for (unsigned cc = 0; cc < 8; ++cc) {
        uint64_t mask = 0;
        for (unsigned rr = 0; rr < 8; ++rr) mask |= part[rr][cc];
        if (cc < 6)
          pl.w_mask[cc] = mask;
        else if (cc == 6)
          pl.d1_mask = mask;
      }
      if (out.size() >= limit) throw BudgetExceeded("pattern expansion cap");
      out.push_back(pl);
      return;
    }
    if (c == 8) {
      uint64_t next_pool = 0;
      if (r + 1 < 8)
        for (uint8_t v : ps.region_vertices[r + 1]) next_pool |= 1ULL << v;
      rec(r + 1, 0, next_pool);
      return;
    }
    for_each_ksubset(pool, m[r][c], [&](uint64_t chosen) {
      part[r][c] = chosen;
      rec(r, c + 1, pool & ~chosen);
      return true;
    });
    part[r][c] = 0;
  };
  uint64_t pool0 = 0;
  for (uint8_t v : ps.region_vertices[0]) pool0 |= 1ULL << v;
  rec(0, 0, pool0);
}

// Enumerates every feasible transition matrix (optionally truncating the
// D1-image difference at r_max) and calls visit(matrix). The recursion is
// bounded by work_cap tree steps; k = 3l+1 with l >= 2 explodes
// combinatorially and trips the cap.
void enumerate_pattern_matrices(const PatternSpace& ps, int r_max, bool* truncated,
                                const std::function<void(const PatternMatrix&)>& visit,
                                uint64_t work_cap) {
  PatternMatrix m{};
  uint64_t work = 0;
  auto step = [&] {
    if (++work > work_cap)
      throw BudgetExceeded("claim2 pattern cap: more than " +
                           std::to_string(work_cap) + " enumeration steps");
  };
  std::array<int, 8> col{};  // partial column sums
  const int l = static_cast<int>(ps.l);
  const int s = static_cast<int>(ps.s);
  const int n2 = static_cast<int>(ps.n2);
  const std::array<int, 8> target = {l, l, l, l, l, l, s, n2};

  // D1 row entries into the W columns, then keep/spill; D2 row is forced.
  std::function<void(unsigned, int)> d1_row = [&](unsigned c, int used) {
    step();
    if (c == 6) {
      const int max_keep = std::min(s - used, s - col[6]);
      for (int keep = 0; keep <= max_keep; ++keep) {
        const int d1_to_d2 = s - used - keep;
        // forced D2 row
        bool ok = true;
        int d2_sum = 0;
        for (unsigned cc = 0; cc < 6; ++cc) {
          int need = target[cc] - col[cc];
          if (need < 0) {
            ok = false;
            break;
          }
          m[7][cc] = static_cast<uint8_t>(need);
          d2_sum += need;
        }
        if (!ok) continue;
        const int d2_to_d1 = s - col[6] - keep;
        if (d2_to_d1 < 0) continue;
        const int d2_keep = n2 - d2_sum - d2_to_d1;
        if (d2_keep < 0 || col[7] + d1_to_d2 + d2_keep > n2) continue;
        if (col[7] + d1_to_d2 + d2_keep != n2) continue;
        m[6][6] = static_cast<uint8_t>(keep);
        m[6][7] = static_cast<uint8_t>(d1_to_d2);
        m[7][6] = static_cast<uint8_t>(d2_to_d1);
        m[7][7] = static_cast<uint8_t>(d2_keep);
        const int r_new = col[6] + d2_to_d1;  // new D1 drawn from outside old D1
        if (r_max >= 0 && r_new > r_max) {
          if (truncated) *truncated = true;
          continue;
        }
        visit(m);
      }
      return;
    }
    const int deficit = target[c] - col[c];
    const int max_here = std::min(deficit, s - used);
    for (int v = 0; v <= max_here; ++v) {
      m[6][c] = static_cast<uint8_t>(v);
      col[c] += v;
      d1_row(c + 1, used + v);
      col[c] -= v;
    }
  };

  // W rows: compositions of l over the 8 columns with column pruning.
  std::function<void(unsigned)> w_row = [&](unsigned r) {
    if (r == 6) {
      d1_row(0, 0);
      return;
    }
    std::function<void(unsigned, int)> comp = [&](unsigned c, int used) {
      step();
      if (c == 7) {
        const int v = l - used;
        if (col[7] + v > n2) return;
        m[r][7] = static_cast<uint8_t>(v);
        col[7] += v;
        w_row(r + 1);
        col[7] -= v;
        return;
      }
      const int limit = std::min(l - used, target[c] - col[c]);
      for (int v = 0; v <= limit; ++v) {
        m[r][c] = static_cast<uint8_t>(v);
        col[c] += v;
        comp(c + 1, used + v);
        col[c] -= v;
      }
    };
    comp(0, 0);
  };
  w_row(0);
}

}  // namespace

ClusterReport cluster_report_thm2(const LabeledMinterm& family, int r_max, int radius,
                                  int hist_cutoff, uint64_t pattern_cap) {
  auto t0 = Clock::now();
  const auto& mp = family.params();
  ClusterReport rep;
  rep.n = mp.n;
  rep.k = mp.k;
  rep.constraint = "anchor-fixed";
  rep.radius = radius;
  rep.r_max = r_max;
  rep.histogram.assign(hist_cutoff + 1, 0);

  PatternSpace ps = pattern_space_of(family);
  std::vector<UniformPlacement> near;
  enumerate_pattern_matrices(ps, r_max, &rep.truncated, [&](const PatternMatrix& m) {
    const uint64_t mult = pattern_multiplicity(ps, m);
    rep.enumerated = sat_add(rep.enumerated, mult);
    UniformPlacement rp = pattern_representative(ps, m);
    int d = symbolic_dist_uniform(mp, family.uniform_roles(), rp, hist_cutoff);
    if (d <= hist_cutoff) rep.histogram[d] = sat_add(rep.histogram[d], mult);
    if (d <= radius) {
      rep.count = sat_add(rep.count, mult);
      expand_pattern(ps, m, 4096, near);
    }
  }, pattern_cap);
  rep.merged_count = merged_class_count(family, near);
  rep.seconds = seconds_since(t0);
  return rep;
}

std::vector<ClusterReport> verify_claim2(unsigned k, const std::vector<unsigned>& n_grid,
                                         int r_max, int radius, uint64_t pattern_cap) {
  std::vector<ClusterReport> out;
  for (unsigned n : n_grid)
    out.push_back(cluster_report_thm2(thm2_minterm(n, k), r_max, radius, 8, pattern_cap));
  return out;
}

// --- structural s0 bound ---

S0Bound cluster_s0_bound(const LabeledMinterm& family, int radius, uint64_t cap) {
  const auto& mp = family.params();
  S0Bound out;

  if (family.is_uniform()) {
    out.anchor_choices = binom(mp.n, mp.k1);
    std::vector<UniformPlacement> members;
    if (mp.rule == MintermRule::Thm2) {
      // pattern space, truncated where distance <= radius forces a nearly
      // preserved D1 slice
      PatternSpace ps = pattern_space_of(family);
      bool truncated = false;
      enumerate_pattern_matrices(ps, radius + 1, &truncated, [&](const PatternMatrix& m) {
        UniformPlacement rp = pattern_representative(ps, m);
        if (symbolic_dist_uniform(mp, family.uniform_roles(), rp, radius) <= radius)
          expand_pattern(ps, m, 4096, members);
      }, cap);
    } else {
      cluster_report(family, radius, radius, cap, &members);
    }
    out.candidates = members.size();
    out.cluster = max_clique(family, members, radius);
    out.bound = sat_mul(out.anchor_choices, static_cast<uint64_t>(out.cluster));
    return out;
  }

  // partite: anchors are the c-block images, n^{k1} of them
  const unsigned c_coords = mp.rule == MintermRule::Thm3 ? mp.k1 : mp.k2;
  uint64_t anchors = 1;
  for (unsigned i = 0; i < c_coords; ++i) anchors = sat_mul(anchors, mp.n);
  out.anchor_choices = anchors;

  std::vector<PartitePlacement> members;
  OrbitConstraints oc;
  oc.fix_anchor = true;
  oc.cap = cap;
  for_each_partite_placement(family, oc, [&](const PartitePlacement& pl) {
    if (symbolic_dist_partite(mp, family.partite_roles(), pl, radius) <= radius)
      members.push_back(pl);
    return true;
  });
  out.candidates = members.size();
  out.cluster = max_clique(family, members, radius);
  out.bound = sat_mul(out.anchor_choices, static_cast<uint64_t>(out.cluster));
  return out;
}

}  // namespace hsens
