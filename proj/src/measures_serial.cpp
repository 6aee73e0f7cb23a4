#include <algorithm>
#include <bit>
#include <unordered_map>

#include "hsens/measures.hpp"

namespace hsens::ref {

namespace {

int sens_at(const TruthTable& f, uint32_t x) {
  bool fx = f.get(x);
  int s = 0;
  for (unsigned i = 0; i < f.n_vars(); ++i) s += f.get(x ^ (1u << i)) != fx;
  return s;
}

MeasureReport scan(const TruthTable& f, int want) {
  MeasureReport r;
  bool any = false;
  for (uint64_t x = 0; x < f.num_inputs(); ++x) {
    uint32_t xi = static_cast<uint32_t>(x);
    if (want >= 0 && f.get(xi) != (want == 1)) continue;
    int s = sens_at(f, xi);
    if (!any || s > r.value) {
      r.value = s;
      r.witness = xi;
      any = true;
    }
  }
  if (!any) r.degenerate = true;
  return r;
}

}  // namespace

MeasureReport sensitivity(const TruthTable& f) { return scan(f, -1); }
MeasureReport sensitivity0(const TruthTable& f) { return scan(f, 0); }
MeasureReport sensitivity1(const TruthTable& f) { return scan(f, 1); }

// Max disjoint packing over all sensitive blocks (no minimality filter),
// memoized on the set of still-available variables.
int block_sensitivity_at(const TruthTable& f, uint32_t x) {
  const unsigned n = f.n_vars();
  if (n > 14) throw BudgetExceeded("reference bs cap: N <= 14");
  const uint32_t full = static_cast<uint32_t>(f.num_inputs() - 1);
  const bool fx = f.get(x);
  std::unordered_map<uint32_t, int> memo;

  auto rec = [&](auto&& self, uint32_t avail) -> int {
    if (!avail) return 0;
    auto it = memo.find(avail);
    if (it != memo.end()) return it->second;
    uint32_t low = avail & -avail;
    int best = self(self, avail ^ low);  // lowest variable unused
    // or lowest variable inside some sensitive block
    uint32_t rest = avail ^ low;
    uint32_t sub = 0;
    while (true) {
      uint32_t block = sub | low;
      if (f.get(x ^ block) != fx)
        best = std::max(best, 1 + self(self, avail & ~block));
      if (sub == rest) break;
      sub = (sub - rest) & rest;
    }
    memo.emplace(avail, best);
    return best;
  };
  return rec(rec, full);
}

int certificate_at(const TruthTable& f, uint32_t x) {
  const unsigned n = f.n_vars();
  if (n > 14) throw BudgetExceeded("reference certificate cap: N <= 14");
  const uint32_t full = static_cast<uint32_t>(f.num_inputs() - 1);
  const bool fx = f.get(x);
  for (unsigned size = 0; size <= n; ++size) {
    bool found = false;
    for_each_ksubset(full, size, [&](uint64_t mask) {
      uint32_t m = static_cast<uint32_t>(mask);
      uint32_t free = full & ~m;
      uint32_t base = x & m;
      uint32_t sub = 0;
      bool certifies = true;
      while (true) {
        if (f.get(base | sub) != fx) {
          certifies = false;
          break;
        }
        if (sub == free) break;
        sub = (sub - free) & free;
      }
      if (certifies) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return static_cast<int>(size);
  }
  return static_cast<int>(n);
}

}  // namespace hsens::ref
