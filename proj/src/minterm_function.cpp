#include "hsens/minterm_function.hpp"

#include <algorithm>
#include <set>

namespace hsens {

MintermFunction MintermFunction::from_labeled(LabeledMinterm m) {
  MintermFunction f;
  f.indexer_ = m.indexer();
  f.group_ = m.natural_group();
  f.base_ = m.to_assignment();
  f.labeled_ = std::move(m);
  return f;
}

MintermFunction MintermFunction::from_explicit(PartialAssignment p, GroupSpec group,
                                               VarIndexer ix, uint64_t group_cap) {
  if (p.n_vars() != ix.num_vars()) throw Error("assignment/indexer mismatch");
  if (!group.compatible_with(ix)) throw Error("group/indexer mismatch");
  if (p.size() == 0) throw Error("explicit minterm must be nonempty");
  MintermFunction f;
  f.indexer_ = ix;
  f.group_ = group;
  f.base_ = p;
  std::set<std::vector<PartialAssignment::Entry>> seen;
  group.for_each_element(group_cap, [&](const VertexPerm& sigma) {
    PartialAssignment q = apply_perm(sigma, p, ix);
    if (seen.insert(q.entries()).second) f.orbit_.push_back(std::move(q));
  });
  // canonical order: sorted by entry vector
  std::sort(f.orbit_.begin(), f.orbit_.end(),
            [](const PartialAssignment& a, const PartialAssignment& b) {
              return a.entries() < b.entries();
            });
  return f;
}

uint64_t MintermFunction::orbit_size() const {
  if (!is_labeled()) return orbit_.size();
  return count_placements(*labeled_, OrbitConstraints{});
}

bool MintermFunction::eval(const BitVec& x) const {
  if (x.size() != num_vars()) throw Error("input size mismatch");
  if (!is_labeled()) {
    for (const auto& q : orbit_)
      if (q.consistent_with(x)) return true;
    return false;
  }
  const auto& m = *labeled_;
  const auto& mp = m.params();
  bool found = false;
  OrbitConstraints oc;
  oc.cap = UINT64_MAX;  // lazy scan, time-bounded by the caller
  if (m.is_uniform()) {
    for_each_uniform_placement(m, oc, [&](const UniformPlacement& pl) {
      bool consistent = scan_support_uniform(mp, pl, [&](uint64_t edge, bool bit) {
        return x.get(m.indexer().rank_edge(edge)) == bit;
      });
      if (consistent) {
        found = true;
        return false;
      }
      return true;
    });
  } else {
    for_each_partite_placement(m, oc, [&](const PartitePlacement& pl) {
      bool consistent =
          scan_support_partite(mp, pl, [&](std::span<const uint8_t> t, bool bit) {
            return x.get(m.indexer().rank_tuple(t)) == bit;
          });
      if (consistent) {
        found = true;
        return false;
      }
      return true;
    });
  }
  return found;
}

bool MintermFunction::eval_input(uint64_t x) const {
  BitVec v(num_vars());
  for (uint64_t i = 0; i < num_vars(); ++i)
    if ((x >> i) & 1) v.set(i, true);
  return eval(v);
}

MintermFunction::ScanSensitivity MintermFunction::scan_sensitivity(const BitVec& x) const {
  if (x.size() != num_vars()) throw Error("input size mismatch");
  const uint64_t nv = num_vars();

  // Tally over translates with mismatch count m <= 1:
  //   m = 0: consistent; blocks flips on its support, enables elsewhere.
  //   m = 1: one flip away; enables exactly its mismatch variable.
  uint64_t exact_count = 0;
  std::vector<uint32_t> exact_on_support(nv, 0);
  std::vector<uint8_t> one_mismatch_at(nv, 0);

  auto tally = [&](const std::function<bool(const std::function<bool(uint64_t, bool)>&)>&
                       scan) {
    int mismatches = 0;
    uint64_t mismatch_var = 0;
    scan([&](uint64_t var, bool bit) {
      if (x.get(var) != bit) {
        if (++mismatches > 1) return false;
        mismatch_var = var;
      }
      return true;
    });
    if (mismatches > 1) return;
    if (mismatches == 1) {
      one_mismatch_at[mismatch_var] = 1;
      return;
    }
    ++exact_count;
    scan([&](uint64_t var, bool) {
      ++exact_on_support[var];
      return true;
    });
  };

  if (!is_labeled()) {
    for (const auto& q : orbit_)
      tally([&](const std::function<bool(uint64_t, bool)>& fn) {
        for (auto [var, bit] : q.entries())
          if (!fn(var, bit)) return false;
        return true;
      });
  } else {
    const auto& m = *labeled_;
    const auto& mp = m.params();
    OrbitConstraints oc;
    oc.cap = UINT64_MAX;  // lazy scan, time-bounded by the caller
    if (m.is_uniform()) {
      for_each_uniform_placement(m, oc, [&](const UniformPlacement& pl) {
        tally([&](const std::function<bool(uint64_t, bool)>& fn) {
          return scan_support_uniform(mp, pl, [&](uint64_t edge, bool bit) {
            return fn(m.indexer().rank_edge(edge), bit);
          });
        });
        return true;
      });
    } else {
      for_each_partite_placement(m, oc, [&](const PartitePlacement& pl) {
        tally([&](const std::function<bool(uint64_t, bool)>& fn) {
          return scan_support_partite(mp, pl,
                                      [&](std::span<const uint8_t> t, bool bit) {
                                        return fn(m.indexer().rank_tuple(t), bit);
                                      });
        });
        return true;
      });
    }
  }

  ScanSensitivity out;
  out.value = exact_count > 0;
  for (uint64_t v = 0; v < nv; ++v) {
    bool flipped_value = (exact_count > exact_on_support[v]) || one_mismatch_at[v];
    if (flipped_value != out.value) {
      ++out.sensitivity;
      out.sensitive_vars.push_back(v);
    }
  }
  return out;
}

TruthTable MintermFunction::materialize(unsigned max_vars) const {
  const uint64_t nv = num_vars();
  if (nv > max_vars)
    throw BudgetExceeded("materialization cap: N = " + std::to_string(nv) +
                         " exceeds " + std::to_string(max_vars));
  TruthTable t(static_cast<unsigned>(nv));
  const uint32_t full = static_cast<uint32_t>(t.num_inputs() - 1);

  auto fill = [&](uint32_t care, uint32_t value) {
    const uint32_t free = full & ~care;
    uint32_t sub = 0;
    while (true) {
      t.set(value | sub, true);
      if (sub == free) break;
      sub = (sub - free) & free;
    }
  };
  auto fill_assignment = [&](const std::function<bool(const std::function<bool(uint64_t, bool)>&)>&
                                 scan) {
    uint32_t care = 0, value = 0;
    scan([&](uint64_t var, bool bit) {
      care |= 1u << var;
      if (bit) value |= 1u << var;
      return true;
    });
    fill(care, value);
  };

  if (!is_labeled()) {
    for (const auto& q : orbit_)
      fill_assignment([&](const std::function<bool(uint64_t, bool)>& fn) {
        for (auto [var, bit] : q.entries())
          if (!fn(var, bit)) return false;
        return true;
      });
    return t;
  }
  const auto& m = *labeled_;
  const auto& mp = m.params();
  OrbitConstraints oc;
  oc.cap = UINT64_MAX;  // the dense table is already gated by max_vars
  if (m.is_uniform()) {
    for_each_uniform_placement(m, oc, [&](const UniformPlacement& pl) {
      fill_assignment([&](const std::function<bool(uint64_t, bool)>& fn) {
        return scan_support_uniform(mp, pl, [&](uint64_t edge, bool bit) {
          return fn(m.indexer().rank_edge(edge), bit);
        });
      });
      return true;
    });
  } else {
    for_each_partite_placement(m, oc, [&](const PartitePlacement& pl) {
      fill_assignment([&](const std::function<bool(uint64_t, bool)>& fn) {
        return scan_support_partite(mp, pl, [&](std::span<const uint8_t> tu, bool bit) {
          return fn(m.indexer().rank_tuple(tu), bit);
        });
      });
      return true;
    });
  }
  return t;
}

}  // namespace hsens
