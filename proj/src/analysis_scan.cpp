#include <algorithm>
#include <bit>

#include "hsens/analysis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsens {

namespace {

// Variable maps (variable index -> image index) for a set of vertex
// permutations acting on edges.
std::vector<uint32_t> variable_map(const VertexPerm& sigma, const VarIndexer& ix) {
  std::vector<uint32_t> vmap(ix.num_vars());
  for (uint64_t s = 0; s < ix.num_vars(); ++s)
    vmap[s] = static_cast<uint32_t>(ix.rank_edge(sigma.apply_edge(ix.unrank_edge(s))));
  return vmap;
}

uint32_t apply_vmap(const std::vector<uint32_t>& vmap, uint32_t mask) {
  // image y with y_s = mask_{vmap[s]}
  uint32_t y = 0;
  for (uint32_t s = 0; s < vmap.size(); ++s) y |= ((mask >> vmap[s]) & 1u) << s;
  return y;
}

}  // namespace

HypergraphClasses hypergraph_classes(unsigned n, unsigned k) {
  VarIndexer ix = VarIndexer::uniform(n, k);
  const unsigned N = static_cast<unsigned>(ix.num_vars());
  if (N > 20) throw BudgetExceeded("class computation cap: C(n,k) <= 20");

  // Orbit closure under the two S_n generators; scanning masks in ascending
  // order makes the first member of each orbit its canonical representative.
  std::vector<std::vector<uint32_t>> gen_maps;
  for (const auto& g : GroupSpec::symmetric(n).generators())
    gen_maps.push_back(variable_map(g, ix));

  HypergraphClasses out;
  out.n = n;
  out.k = k;
  const uint32_t n_masks = 1u << N;
  out.class_of.assign(n_masks, UINT32_MAX);
  std::vector<uint32_t> stack;
  for (uint32_t m = 0; m < n_masks; ++m) {
    if (out.class_of[m] != UINT32_MAX) continue;
    uint32_t cls = out.num_classes++;
    stack.push_back(m);
    out.class_of[m] = cls;
    while (!stack.empty()) {
      uint32_t cur = stack.back();
      stack.pop_back();
      for (const auto& gm : gen_maps) {
        uint32_t img = apply_vmap(gm, cur);
        if (out.class_of[img] == UINT32_MAX) {
          out.class_of[img] = cls;
          stack.push_back(img);
        }
      }
    }
  }
  return out;
}

uint64_t hypergraph_class_count_burnside(unsigned n, unsigned k) {
  VarIndexer ix = VarIndexer::uniform(n, k);
  const unsigned N = static_cast<unsigned>(ix.num_vars());
  if (N > 28) throw BudgetExceeded("Burnside cap: C(n,k) <= 28");
  uint64_t total = 0;
  uint64_t order = 0;
  GroupSpec::symmetric(n).for_each_element(10'000'000, [&](const VertexPerm& sigma) {
    auto vmap = variable_map(sigma, ix);
    std::vector<char> seen(N, 0);
    unsigned cycles = 0;
    for (unsigned s = 0; s < N; ++s) {
      if (seen[s]) continue;
      ++cycles;
      unsigned t = s;
      while (!seen[t]) {
        seen[t] = 1;
        t = vmap[t];
      }
    }
    total += 1ULL << cycles;
    ++order;
  });
  return total / order;
}

namespace {

struct PropertyStats {
  int s, s0, s1;
  uint64_t m;
};

PropertyStats property_stats(const std::vector<uint32_t>& class_of, uint64_t bits,
                             unsigned N) {
  const uint32_t n_inputs = 1u << N;
  auto value = [&](uint32_t x) { return (bits >> class_of[x]) & 1u; };
  PropertyStats st{0, 0, 0, UINT64_MAX};
  for (uint32_t x = 0; x < n_inputs; ++x) {
    const uint32_t fx = value(x);
    int s = 0;
    for (unsigned i = 0; i < N; ++i) s += value(x ^ (1u << i)) != fx;
    if (s > st.s) st.s = s;
    if (fx) {
      if (s > st.s1) st.s1 = s;
      uint64_t w = static_cast<uint64_t>(std::popcount(x));
      if (w < st.m) st.m = w;
    } else if (s > st.s0) {
      st.s0 = s;
    }
  }
  return st;
}

std::string hex_id(uint64_t bits) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(bits));
  return buf;
}

}  // namespace

ScanSummary scan_properties(unsigned n, unsigned k, ScanMode mode, uint64_t samples,
                            uint64_t seed,
                            const std::function<void(const ScanRecord&)>& sink,
                            uint64_t exhaustive_cap) {
  HypergraphClasses classes = hypergraph_classes(n, k);
  const unsigned N = static_cast<unsigned>(VarIndexer::uniform(n, k).num_vars());
  const unsigned C = classes.num_classes;
  const int bound = static_cast<int>((n + k + 1) / (k + 2));  // ceil(n/(k+2))

  ScanSummary summary;
  summary.n = n;
  summary.k = k;
  summary.num_classes = C;

  auto run_one = [&](uint64_t bits, ScanSummary& acc) {
    PropertyStats st = property_stats(classes.class_of, bits, N);
    ++acc.properties_checked;
    bool viol = st.s < bound;
    if (viol) ++acc.violations;
    bool turan_viol = false;
    if (k == 2 && 4 * st.s <= static_cast<int>(n)) {
      turan_viol = true;
      ++acc.turan_violations;
    }
    if (sink) {
      ScanRecord rec;
      rec.n = n;
      rec.k = k;
      rec.property_id = hex_id(bits);
      rec.s = st.s;
      rec.s0 = st.s0;
      rec.s1 = st.s1;
      rec.m = st.m;
      rec.bound = bound;
      rec.violation = viol || turan_viol;
      sink(rec);
    }
  };

  if (mode == ScanMode::Exhaustive) {
    if (C > 21 || (1ULL << C) > exhaustive_cap)
      throw BudgetExceeded("exhaustive property cap: 2^classes exceeds " +
                           std::to_string(exhaustive_cap) + "; use sampled mode");
    const uint64_t full = (1ULL << C) - 1;
    for (uint64_t bits = 1; bits < full; ++bits) run_one(bits, summary);
    return summary;
  }

  if (C > 64) throw BudgetExceeded("sampled property cap: at most 64 classes");
  const uint64_t full = C == 64 ? ~0ULL : (1ULL << C) - 1;
  auto bits_for = [&](uint64_t i) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    uint64_t bits = rng.next() & full;
    while (bits == 0 || bits == full) bits = rng.next() & full;
    return bits;
  };

  if (sink) {
    for (uint64_t i = 0; i < samples; ++i) run_one(bits_for(i), summary);
    return summary;
  }

#ifdef _OPENMP
#pragma omp parallel
  {
    ScanSummary local;
#pragma omp for schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(samples); ++i)
      run_one(bits_for(static_cast<uint64_t>(i)), local);
#pragma omp critical
    {
      summary.properties_checked += local.properties_checked;
      summary.violations += local.violations;
      summary.turan_violations += local.turan_violations;
    }
  }
#else
  for (uint64_t i = 0; i < samples; ++i) run_one(bits_for(i), summary);
#endif
  return summary;
}

}  // namespace hsens
