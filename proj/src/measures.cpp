#include "hsens/measures.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsens {

namespace {

// (value, witness) pairs merge under "higher value wins, then lower input
// index". The merge is a total order, so parallel reductions are
// deterministic for any worker count.
struct Best {
  int value = -1;
  uint32_t witness = 0;
  bool any = false;

  void offer(int v, uint32_t x) {
    if (!any || v > value || (v == value && x < witness)) {
      value = v;
      witness = x;
      any = true;
    }
  }
  void merge(const Best& o) {
    if (o.any) offer(o.value, o.witness);
  }
};

MeasureReport report_from(const Best& b) {
  MeasureReport r;
  if (b.any) {
    r.value = b.value;
    r.witness = b.witness;
  } else {
    r.degenerate = true;
  }
  return r;
}

// Scans all inputs, tracking the maximum sensitivity overall and restricted
// to each preimage.
void sensitivity_scan(const TruthTable& f, Best& all, Best& zero, Best& one) {
  const uint64_t n_inputs = f.num_inputs();
  const unsigned n = f.n_vars();

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    Best local_all, local_zero, local_one;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int64_t sx = 0; sx < static_cast<int64_t>(n_inputs); ++sx) {
      uint32_t x = static_cast<uint32_t>(sx);
      bool fx = f.get(x);
      int s = 0;
      for (unsigned i = 0; i < n; ++i) s += f.get(x ^ (1u << i)) != fx;
      local_all.offer(s, x);
      if (fx)
        local_one.offer(s, x);
      else
        local_zero.offer(s, x);
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      all.merge(local_all);
      zero.merge(local_zero);
      one.merge(local_one);
    }
  }
}

// --- block sensitivity core ---

struct BsScratch {
  std::vector<uint8_t> sens;  // sensitive[mask]
  std::vector<uint8_t> any;   // has a sensitive subset
  std::vector<uint32_t> minimal;
};

struct PackState {
  const std::vector<uint32_t>* blocks;
  std::vector<int> suffix_min_size;
  int best = 0;
  std::vector<uint32_t> best_pack;
  std::vector<uint32_t> stack;
  unsigned n = 0;
};

void pack_dfs(PackState& st, size_t idx, uint32_t used, int count) {
  if (count > st.best) {
    st.best = count;
    st.best_pack = st.stack;
  }
  if (idx >= st.blocks->size()) return;
  int free_bits = static_cast<int>(st.n) - std::popcount(used);
  int optimistic = std::min<int>(static_cast<int>(st.blocks->size() - idx),
                                 free_bits / st.suffix_min_size[idx]);
  if (count + optimistic <= st.best) return;

  uint32_t b = (*st.blocks)[idx];
  if ((b & used) == 0) {
    st.stack.push_back(b);
    pack_dfs(st, idx + 1, used | b, count + 1);
    st.stack.pop_back();
  }
  pack_dfs(st, idx + 1, used, count);
}

// Exact bs at x. Blocks are restricted to minimal sensitive blocks; the
// maximum packing is unchanged by that restriction.
int bs_at_core(const TruthTable& f, uint32_t x, BsScratch& sc,
               std::vector<uint32_t>* blocks_out) {
  const unsigned n = f.n_vars();
  if (n > 24) throw BudgetExceeded("block sensitivity per-input cap: N <= 24");
  const uint32_t n_masks = 1u << n;
  sc.sens.assign(n_masks, 0);
  sc.any.assign(n_masks, 0);
  const bool fx = f.get(x);
  for (uint32_t m = 1; m < n_masks; ++m) sc.sens[m] = f.get(x ^ m) != fx;

  // Subset-OR (zeta) transform: any[m] = OR of sens over all subsets of m.
  std::memcpy(sc.any.data(), sc.sens.data(), n_masks);
  for (unsigned i = 0; i < n; ++i) {
    const uint32_t bit = 1u << i;
    for (uint32_t m = bit; m < n_masks; ++m)
      if (m & bit) sc.any[m] |= sc.any[m ^ bit];
  }

  sc.minimal.clear();
  for (uint32_t m = 1; m < n_masks; ++m) {
    if (!sc.sens[m]) continue;
    bool minimal = true;
    for (uint32_t t = m; t; t &= t - 1) {
      if (sc.any[m ^ (t & -t)]) {
        minimal = false;
        break;
      }
    }
    if (minimal) sc.minimal.push_back(m);
  }
  if (sc.minimal.empty()) {
    if (blocks_out) blocks_out->clear();
    return 0;
  }

  PackState st;
  st.blocks = &sc.minimal;
  st.n = n;
  st.suffix_min_size.assign(sc.minimal.size() + 1, 1 << 30);
  for (size_t i = sc.minimal.size(); i-- > 0;)
    st.suffix_min_size[i] =
        std::min(st.suffix_min_size[i + 1], std::popcount(sc.minimal[i]));
  pack_dfs(st, 0, 0, 0);
  if (blocks_out) *blocks_out = st.best_pack;
  return st.best;
}

// --- certificate core: subcube tables over 3^N cells ---
//
// Cell t encodes a subcube in ternary: digit i = 0 (variable free),
// 1 (fixed to 0), 2 (fixed to 1). mono marks cells on which f is constant;
// down[t] = minimum number of fixed variables over all cells obtainable from
// t by freeing variables whose subcube is constant.

struct CertTables {
  unsigned n = 0;
  std::vector<uint64_t> pow3;
  std::vector<uint8_t> mono;  // bit0: constant 0, bit1: constant 1
  std::vector<uint8_t> down;
};

constexpr unsigned kDigitBlock = 8;  // low digits resolved by table

struct DigitTables {
  std::vector<int8_t> low_free;     // lowest 0-digit among low 8, or -1
  std::vector<uint8_t> n_fixed;     // nonzero digits among low 8
  std::vector<uint16_t> input_low;  // bits from digits (digit 2 -> 1)
  bool valid_input_low = true;
};

const DigitTables& digit_tables() {
  static const DigitTables dt = [] {
    DigitTables d;
    const uint32_t cells = 6561;  // 3^8
    d.low_free.resize(cells);
    d.n_fixed.resize(cells);
    d.input_low.resize(cells);
    for (uint32_t t = 0; t < cells; ++t) {
      uint32_t v = t;
      int8_t low = -1;
      uint8_t fixed = 0;
      uint16_t input = 0;
      for (unsigned i = 0; i < kDigitBlock; ++i) {
        unsigned digit = v % 3;
        v /= 3;
        if (digit == 0 && low < 0) low = static_cast<int8_t>(i);
        if (digit != 0) ++fixed;
        if (digit == 2) input |= 1u << i;
      }
      d.low_free[t] = low;
      d.n_fixed[t] = fixed;
      d.input_low[t] = input;
    }
    return d;
  }();
  return dt;
}

int lowest_free_digit(uint64_t t, unsigned n) {
  const auto& dt = digit_tables();
  for (unsigned base = 0; base < n; base += kDigitBlock) {
    int8_t lf = dt.low_free[t % 6561];
    if (lf >= 0) {
      unsigned i = base + lf;
      return i < n ? static_cast<int>(i) : -1;
    }
    t /= 6561;
  }
  return -1;
}

CertTables build_cert_tables(const TruthTable& f) {
  const unsigned n = f.n_vars();
  if (n > 16) throw BudgetExceeded("certificate table cap: N <= 16");
  CertTables ct;
  ct.n = n;
  ct.pow3.resize(n + 1);
  ct.pow3[0] = 1;
  for (unsigned i = 0; i < n; ++i) ct.pow3[i + 1] = ct.pow3[i] * 3;
  const uint64_t cells = ct.pow3[n];
  ct.mono.assign(cells, 0);

  // Children (one more fixed digit) have larger indices, so a descending
  // sweep sees them first.
  for (uint64_t t = cells; t-- > 0;) {
    int i = lowest_free_digit(t, n);
    if (i < 0) {
      // fully fixed: decode the input
      uint64_t v = t;
      uint32_t x = 0;
      for (unsigned j = 0; j < n; ++j) {
        if (v % 3 == 2) x |= 1u << j;
        v /= 3;
      }
      ct.mono[t] = f.get(x) ? 2 : 1;
    } else {
      ct.mono[t] = ct.mono[t + ct.pow3[i]] & ct.mono[t + 2 * ct.pow3[i]];
    }
  }

  // Minimum certificate size over ancestors: parents (one digit freed) have
  // smaller indices, so an ascending sweep works.
  ct.down.assign(cells, 255);
  const auto& dt = digit_tables();
  for (uint64_t t = 0; t < cells; ++t) {
    uint8_t d = 255;
    if (ct.mono[t]) {
      uint64_t v = t;
      unsigned fixed = 0;
      while (v) {
        fixed += dt.n_fixed[v % 6561];
        v /= 6561;
      }
      d = static_cast<uint8_t>(fixed);
    }
    uint64_t v = t;
    for (unsigned i = 0; i < n && v; ++i) {
      unsigned digit = v % 3;
      v /= 3;
      if (digit != 0) d = std::min(d, ct.down[t - digit * ct.pow3[i]]);
    }
    ct.down[t] = d;
  }
  return ct;
}

uint64_t full_cell_of(const CertTables& ct, uint32_t x) {
  uint64_t t = 0;
  for (unsigned i = 0; i < ct.n; ++i) t += (1 + ((x >> i) & 1)) * ct.pow3[i];
  return t;
}

// True iff fixing x on mask forces f to f(x): scans the subcube.
bool subcube_certifies(const TruthTable& f, uint32_t x, uint32_t mask) {
  const uint32_t all = static_cast<uint32_t>(f.num_inputs() - 1);
  const uint32_t free = all & ~mask;
  const bool fx = f.get(x);
  const uint32_t base = x & mask;
  uint32_t sub = 0;
  while (true) {
    if (f.get(base | sub) != fx) return false;
    if (sub == free) break;
    sub = (sub - free) & free;  // next submask of free (ascending)
  }
  return true;
}

// Deterministic lexicographically-smallest certificate of a known size.
std::optional<uint32_t> smallest_certificate_of_size(const TruthTable& f,
                                                     uint32_t x, int size) {
  const unsigned n = f.n_vars();
  std::optional<uint32_t> found;
  for_each_ksubset((1ULL << n) - 1, static_cast<unsigned>(size),
                   [&](uint64_t mask) {
                     if (subcube_certifies(f, x, static_cast<uint32_t>(mask))) {
                       found = static_cast<uint32_t>(mask);
                       return false;
                     }
                     return true;
                   });
  return found;
}

// Branch-and-bound for one input at larger N: branch on variables where a
// violating point differs from x.
struct CertBB {
  const TruthTable* f;
  uint32_t x;
  bool fx;
  int best;
  uint32_t best_mask;

  // Finds any input consistent with (mask, x) where f differs; 0-return means
  // certified.
  std::optional<uint32_t> violation(uint32_t mask) const {
    const uint32_t all = static_cast<uint32_t>(f->num_inputs() - 1);
    const uint32_t free = all & ~mask;
    const uint32_t base = x & mask;
    uint32_t sub = 0;
    while (true) {
      uint32_t y = base | sub;
      if (f->get(y) != fx) return y;
      if (sub == free) break;
      sub = (sub - free) & free;
    }
    return std::nullopt;
  }

  void rec(uint32_t mask, int fixed) {
    if (fixed >= best) return;
    auto y = violation(mask);
    if (!y) {
      best = fixed;
      best_mask = mask;
      return;
    }
    uint32_t diff = (*y ^ x) & ~mask;
    for (uint32_t t = diff; t; t &= t - 1) rec(mask | (t & -t), fixed + 1);
  }
};

}  // namespace

// --- sensitivity ---

int sensitivity_at(const TruthTable& f, uint32_t x) {
  if (x >= f.num_inputs()) throw Error("input index out of range");
  const bool fx = f.get(x);
  int s = 0;
  for (unsigned i = 0; i < f.n_vars(); ++i) s += f.get(x ^ (1u << i)) != fx;
  return s;
}

MeasureReport sensitivity(const TruthTable& f) {
  Best all, zero, one;
  sensitivity_scan(f, all, zero, one);
  return report_from(all);
}

MeasureReport sensitivity0(const TruthTable& f) {
  Best all, zero, one;
  sensitivity_scan(f, all, zero, one);
  return report_from(zero);
}

MeasureReport sensitivity1(const TruthTable& f) {
  Best all, zero, one;
  sensitivity_scan(f, all, zero, one);
  return report_from(one);
}

SensitivitySummary sensitivity_summary(const TruthTable& f) {
  Best all, zero, one;
  sensitivity_scan(f, all, zero, one);
  return {report_from(all), report_from(zero), report_from(one)};
}

std::vector<uint8_t> sensitivity_all(const TruthTable& f) {
  if (f.n_vars() > 24) throw BudgetExceeded("sensitivity_all cap: N <= 24");
  std::vector<uint8_t> out(f.num_inputs());
  const unsigned n = f.n_vars();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int64_t sx = 0; sx < static_cast<int64_t>(f.num_inputs()); ++sx) {
    uint32_t x = static_cast<uint32_t>(sx);
    bool fx = f.get(x);
    int s = 0;
    for (unsigned i = 0; i < n; ++i) s += f.get(x ^ (1u << i)) != fx;
    out[x] = static_cast<uint8_t>(s);
  }
  return out;
}

// --- block sensitivity ---

MeasureReport block_sensitivity_at(const TruthTable& f, uint32_t x) {
  BsScratch sc;
  MeasureReport r;
  r.value = bs_at_core(f, x, sc, &r.witness_blocks);
  r.witness = x;
  return r;
}

MeasureReport block_sensitivity(const TruthTable& f, MeasureBudget budget) {
  if (f.n_vars() > budget.global_vars)
    throw BudgetExceeded("global block sensitivity cap: N <= " +
                         std::to_string(budget.global_vars) +
                         "; use the per-input variant or raise the budget");
  Best best;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    BsScratch sc;
    Best local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
    for (int64_t sx = 0; sx < static_cast<int64_t>(f.num_inputs()); ++sx) {
      uint32_t x = static_cast<uint32_t>(sx);
      local.offer(bs_at_core(f, x, sc, nullptr), x);
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    best.merge(local);
  }
  MeasureReport r = report_from(best);
  if (r.witness) {
    BsScratch sc;
    bs_at_core(f, *r.witness, sc, &r.witness_blocks);
  }
  return r;
}

std::vector<uint8_t> block_sensitivity_all(const TruthTable& f) {
  if (f.n_vars() > 16) throw BudgetExceeded("block_sensitivity_all cap: N <= 16");
  std::vector<uint8_t> out(f.num_inputs());
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    BsScratch sc;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
    for (int64_t sx = 0; sx < static_cast<int64_t>(f.num_inputs()); ++sx) {
      uint32_t x = static_cast<uint32_t>(sx);
      out[x] = static_cast<uint8_t>(bs_at_core(f, x, sc, nullptr));
    }
  }
  return out;
}

// --- certificate complexity ---

MeasureReport certificate_at(const TruthTable& f, uint32_t x) {
  MeasureReport r;
  r.witness = x;
  const unsigned n = f.n_vars();
  if (n == 0) {
    r.witness_set = 0;
    return r;
  }
  CertBB bb{&f, x, f.get(x), static_cast<int>(n),
            static_cast<uint32_t>(f.num_inputs() - 1)};
  bb.rec(0, 0);
  r.value = bb.best;
  if (n <= 16) {
    // canonical witness: smallest mask among minimum certificates
    if (auto m = smallest_certificate_of_size(f, x, bb.best)) r.witness_set = *m;
  } else {
    r.witness_set = bb.best_mask;
  }
  return r;
}

std::vector<uint8_t> certificate_all(const TruthTable& f) {
  CertTables ct = build_cert_tables(f);
  std::vector<uint8_t> out(f.num_inputs());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int64_t sx = 0; sx < static_cast<int64_t>(f.num_inputs()); ++sx) {
    uint32_t x = static_cast<uint32_t>(sx);
    out[x] = ct.down[full_cell_of(ct, x)];
  }
  return out;
}

namespace {

MeasureReport certificate_restricted(const TruthTable& f, MeasureBudget budget,
                                     int want /* -1: all, 0/1: preimage */) {
  if (f.n_vars() > budget.global_vars)
    throw BudgetExceeded("global certificate cap: N <= " +
                         std::to_string(budget.global_vars) +
                         "; use the per-input variant or raise the budget");
  CertTables ct = build_cert_tables(f);
  Best best;
  for (uint64_t x = 0; x < f.num_inputs(); ++x) {
    if (want >= 0 && f.get(static_cast<uint32_t>(x)) != (want == 1)) continue;
    best.offer(ct.down[full_cell_of(ct, static_cast<uint32_t>(x))],
               static_cast<uint32_t>(x));
  }
  MeasureReport r = report_from(best);
  if (r.witness)
    if (auto m = smallest_certificate_of_size(f, *r.witness, r.value))
      r.witness_set = *m;
  return r;
}

}  // namespace

MeasureReport certificate(const TruthTable& f, MeasureBudget budget) {
  return certificate_restricted(f, budget, -1);
}
MeasureReport certificate0(const TruthTable& f, MeasureBudget budget) {
  return certificate_restricted(f, budget, 0);
}
MeasureReport certificate1(const TruthTable& f, MeasureBudget budget) {
  return certificate_restricted(f, budget, 1);
}

}  // namespace hsens
