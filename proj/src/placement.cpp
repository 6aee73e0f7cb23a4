#include "hsens/placement.hpp"

#include <bit>

#include "json.hpp"

namespace hsens {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

uint64_t all_mask(unsigned n) { return n == 64 ? ~0ULL : (1ULL << n) - 1; }

}  // namespace

uint64_t count_placements(const LabeledMinterm& family, const OrbitConstraints& oc) {
  const auto& mp = family.params();
  if (family.is_uniform()) {
    uint64_t count = oc.fix_anchor ? 1 : binom(mp.n, mp.k1);
    unsigned free = mp.n - mp.k1 - oc.w_prefix_count * mp.k2;
    for (unsigned i = oc.w_prefix_count; i < 6; ++i) {
      count = sat_mul(count, binom(free, mp.k2));
      free -= mp.k2;
    }
    if (mp.rule == MintermRule::Thm2) count = sat_mul(count, binom(free, mp.d1_size));
    return count;
  }
  const unsigned n = mp.n;
  const uint64_t triple = static_cast<uint64_t>(n) * (n - 1) * (n - 2);
  uint64_t count = sat_mul(triple, triple);  // a and b selector triples
  unsigned anchor_only = (mp.k2 - 1) * 2;    // non-selector coords of a and b
  for (unsigned i = 0; i < anchor_only; ++i) count = sat_mul(count, n);
  unsigned c_coords = mp.rule == MintermRule::Thm3 ? mp.k1 : mp.k2;
  if (!oc.fix_anchor)
    for (unsigned i = 0; i < c_coords; ++i) count = sat_mul(count, n);
  if (mp.rule == MintermRule::Thm4) count = sat_mul(count, binom(n, mp.d1_size));
  return count;
}

bool for_each_uniform_placement(const LabeledMinterm& family, const OrbitConstraints& oc,
                                const std::function<bool(const UniformPlacement&)>& fn) {
  if (!family.is_uniform()) throw Error("uniform placement scan on partite minterm");
  const auto& mp = family.params();
  uint64_t total = count_placements(family, oc);
  if (total > oc.cap)
    throw BudgetExceeded("placement enumeration cap: " + std::to_string(total) +
                         " descriptors exceed cap " + std::to_string(oc.cap));

  const uint64_t all = all_mask(mp.n);
  UniformPlacement pl;
  uint64_t prefix_used = 0;
  for (unsigned i = 0; i < oc.w_prefix_count; ++i) {
    pl.w_mask[i] = oc.w_prefix[i];
    if (oc.w_prefix[i] & prefix_used) throw Error("overlapping W prefix");
    prefix_used |= oc.w_prefix[i];
  }

  // W blocks in order, then the D1 slice for thm2.
  std::function<bool(unsigned, uint64_t)> rec = [&](unsigned block,
                                                    uint64_t used) -> bool {
    if (block == 6) {
      if (mp.rule != MintermRule::Thm2) return fn(pl);
      return for_each_ksubset(all & ~used, mp.d1_size, [&](uint64_t d1) {
        pl.d1_mask = d1;
        return fn(pl);
      });
    }
    return for_each_ksubset(all & ~used, mp.k2, [&](uint64_t w) {
      pl.w_mask[block] = w;
      return rec(block + 1, used | w);
    });
  };

  if (oc.fix_anchor) {
    pl.b_mask = family.uniform_roles().b_mask;
    if (pl.b_mask & prefix_used) throw Error("W prefix overlaps the anchor");
    return rec(oc.w_prefix_count, pl.b_mask | prefix_used);
  }
  return for_each_ksubset(all & ~prefix_used, mp.k1, [&](uint64_t b) {
    pl.b_mask = b;
    return rec(oc.w_prefix_count, b | prefix_used);
  });
}

bool for_each_partite_placement(const LabeledMinterm& family, const OrbitConstraints& oc,
                                const std::function<bool(const PartitePlacement&)>& fn) {
  if (family.is_uniform()) throw Error("partite placement scan on uniform minterm");
  const auto& mp = family.params();
  uint64_t total = count_placements(family, oc);
  if (total > oc.cap)
    throw BudgetExceeded("placement enumeration cap: " + std::to_string(total) +
                         " descriptors exceed cap " + std::to_string(oc.cap));

  const unsigned n = mp.n;
  const unsigned k2 = mp.k2;
  const unsigned a_sel = k2 - 1;
  const unsigned b_sel = 2 * k2 - 1;
  const unsigned c_begin = 2 * k2;
  const unsigned c_end = mp.rule == MintermRule::Thm3 ? 2 * k2 + mp.k1 : 3 * k2;
  PartitePlacement pl;
  if (oc.fix_anchor) {
    const auto& id = family.partite_roles();
    for (unsigned j = c_begin; j < c_end; ++j) pl.one[j] = id.one[j];
  }

  // Ordered selector triples for one block.
  auto each_triple = [&](unsigned sel, uint8_t& two, uint8_t& three, auto&& inner) {
    for (unsigned v1 = 0; v1 < n; ++v1)
      for (unsigned v2 = 0; v2 < n; ++v2) {
        if (v2 == v1) continue;
        for (unsigned v3 = 0; v3 < n; ++v3) {
          if (v3 == v1 || v3 == v2) continue;
          pl.one[sel] = static_cast<uint8_t>(v1);
          two = static_cast<uint8_t>(v2);
          three = static_cast<uint8_t>(v3);
          if (!inner()) return false;
        }
      }
    return true;
  };

  // Anchor image per coordinate in [begin, end).
  std::function<bool(unsigned, unsigned, const std::function<bool()>&)> each_anchor =
      [&](unsigned begin, unsigned end, const std::function<bool()>& inner) -> bool {
    if (begin == end) return inner();
    for (unsigned v = 0; v < n; ++v) {
      pl.one[begin] = static_cast<uint8_t>(v);
      if (!each_anchor(begin + 1, end, inner)) return false;
    }
    return true;
  };

  std::function<bool()> do_d1 = [&]() -> bool {
    if (mp.rule != MintermRule::Thm4) return fn(pl);
    return for_each_ksubset(all_mask(n), mp.d1_size, [&](uint64_t d1) {
      pl.d1_mask = d1;
      return fn(pl);
    });
  };
  std::function<bool()> do_c = [&]() -> bool {
    if (oc.fix_anchor) return do_d1();
    return each_anchor(c_begin, c_end, do_d1);
  };
  std::function<bool()> do_b_anchor = [&]() -> bool {
    return each_anchor(k2, b_sel, do_c);
  };
  std::function<bool()> do_a_anchor = [&]() -> bool {
    return each_anchor(0, a_sel, do_b_anchor);
  };

  return each_triple(a_sel, pl.a_two, pl.a_three, [&] {
    return each_triple(b_sel, pl.b_two, pl.b_three, do_a_anchor);
  });
}

int symbolic_dist_uniform(const MintermParams& mp, const UniformPlacement& a,
                          const UniformPlacement& b, int abort_above) {
  int count = 0;
  scan_support_uniform(mp, a, [&](uint64_t edge, bool bit) {
    Trit vb = eval_uniform_rule(mp, b, edge);
    if (vb != Trit::Star && (vb == Trit::One) != bit) {
      if (++count > abort_above) return false;
    }
    return true;
  });
  return count;
}

int symbolic_dist_partite(const MintermParams& mp, const PartitePlacement& a,
                          const PartitePlacement& b, int abort_above) {
  int count = 0;
  scan_support_partite(mp, a, [&](std::span<const uint8_t> tuple, bool bit) {
    Trit vb = eval_partite_rule(mp, b, tuple);
    if (vb != Trit::Star && (vb == Trit::One) != bit) {
      if (++count > abort_above) return false;
    }
    return true;
  });
  return count;
}

PartialAssignment placement_assignment(const LabeledMinterm& family,
                                       const UniformPlacement& pl) {
  std::vector<PartialAssignment::Entry> entries;
  scan_support_uniform(family.params(), pl, [&](uint64_t edge, bool bit) {
    entries.emplace_back(family.indexer().rank_edge(edge), static_cast<uint8_t>(bit));
    return true;
  });
  return PartialAssignment(family.indexer().num_vars(), std::move(entries));
}

PartialAssignment placement_assignment(const LabeledMinterm& family,
                                       const PartitePlacement& pl) {
  std::vector<PartialAssignment::Entry> entries;
  scan_support_partite(family.params(), pl,
                       [&](std::span<const uint8_t> tuple, bool bit) {
                         entries.emplace_back(family.indexer().rank_tuple(tuple),
                                              static_cast<uint8_t>(bit));
                         return true;
                       });
  return PartialAssignment(family.indexer().num_vars(), std::move(entries));
}

std::string placement_to_json(const UniformPlacement& pl, bool with_d1) {
  nlohmann::json j;
  auto verts = [](uint64_t mask) {
    auto arr = nlohmann::json::array();
    for (uint64_t m = mask; m; m &= m - 1) arr.push_back(std::countr_zero(m) + 1);
    return arr;
  };
  j["B"] = verts(pl.b_mask);
  auto w = nlohmann::json::array();
  for (uint64_t wm : pl.w_mask) w.push_back(verts(wm));
  j["W"] = std::move(w);
  if (with_d1) j["D1"] = verts(pl.d1_mask);
  return j.dump();
}

}  // namespace hsens
