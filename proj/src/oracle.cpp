#include <set>

#include "hsens/analysis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsens {

// Fills the table by marking every input consistent with each distinct
// translate of the minterm. The translates come from a full group-element
// enumeration through apply_perm, independent of the placement-descriptor
// machinery this checks.
OracleResult bruteforce_oracle(const MintermFunction& f, uint64_t group_cap,
                               bool with_measures) {
  const uint64_t nv = f.num_vars();
  if (nv > 27) throw BudgetExceeded("oracle cap: N <= 27");
  const unsigned N = static_cast<unsigned>(nv);

  const PartialAssignment& p = f.base_assignment();
  std::set<std::vector<PartialAssignment::Entry>> seen;
  std::vector<std::pair<uint32_t, uint32_t>> masks;  // (care, value)
  f.group().for_each_element(group_cap, [&](const VertexPerm& sigma) {
    PartialAssignment q = apply_perm(sigma, p, f.indexer());
    if (!seen.insert(q.entries()).second) return;
    uint32_t care = 0, value = 0;
    for (auto [var, bit] : q.entries()) {
      care |= 1u << var;
      if (bit) value |= 1u << var;
    }
    masks.emplace_back(care, value);
  });

  OracleResult out{TruthTable(N), {}, {}, {}, masks.size()};
  const uint32_t full = static_cast<uint32_t>(out.table.num_inputs() - 1);

#ifdef _OPENMP
#pragma omp parallel
  {
    TruthTable local(N);
#pragma omp for schedule(dynamic, 1)
    for (int64_t i = 0; i < static_cast<int64_t>(masks.size()); ++i) {
      auto [care, value] = masks[i];
      const uint32_t free = full & ~care;
      uint32_t sub = 0;
      while (true) {
        local.set(value | sub, true);
        if (sub == free) break;
        sub = (sub - free) & free;
      }
    }
#pragma omp critical
    {
      auto& w = out.table.words();
      const auto& lw = local.words();
      for (size_t j = 0; j < w.size(); ++j) w[j] |= lw[j];
    }
  }
#else
  for (auto [care, value] : masks) {
    const uint32_t free = full & ~care;
    uint32_t sub = 0;
    while (true) {
      out.table.set(value | sub, true);
      if (sub == free) break;
      sub = (sub - free) & free;
    }
  }
#endif

  if (with_measures) {
    SensitivitySummary summary = sensitivity_summary(out.table);
    out.s = summary.s;
    out.s0 = summary.s0;
    out.s1 = summary.s1;
  }
  return out;
}

}  // namespace hsens
