#include "hsens/compose.hpp"

#include <cmath>

namespace hsens {

PartialAssignment xor_compose_minterms(const std::vector<PartialAssignment>& parts) {
  if (parts.empty()) throw Error("xor_compose needs at least one part");
  uint64_t n_total = 1;
  for (const auto& p : parts) {
    if (p.size() == 0) throw Error("xor_compose parts must be nonempty");
    if (n_total > UINT64_MAX / p.n_vars()) throw Error("composed size overflows");
    n_total *= p.n_vars();
  }

  // Odometer over one support entry per part; any star coordinate would
  // leave the composed variable star, so only support products appear.
  std::vector<PartialAssignment::Entry> entries;
  std::vector<size_t> pick(parts.size(), 0);
  while (true) {
    uint64_t var = 0;
    unsigned value = 0;
    for (size_t j = 0; j < parts.size(); ++j) {
      const auto& [idx, bit] = parts[j].entries()[pick[j]];
      var = var * parts[j].n_vars() + idx;
      value ^= bit;
    }
    entries.emplace_back(var, static_cast<uint8_t>(value));

    size_t j = parts.size();
    bool done = true;
    while (j > 0) {
      --j;
      if (++pick[j] < parts[j].size()) {
        done = false;
        break;
      }
      pick[j] = 0;
    }
    if (done) break;
  }
  return PartialAssignment(n_total, std::move(entries));
}

PartialAssignment reference_cyclic_minterm(unsigned m) {
  if (m == 0) throw Error("reference minterm needs m >= 1");
  unsigned t = static_cast<unsigned>(std::cbrt(static_cast<double>(m)));
  while (static_cast<uint64_t>(t + 1) * (t + 1) * (t + 1) <= m) ++t;
  if (t == 0) t = 1;
  if (t > m) t = m;
  std::vector<PartialAssignment::Entry> entries;
  entries.emplace_back(0, 1);
  for (unsigned i = 1; i < t; ++i) entries.emplace_back(i, 0);
  return PartialAssignment(m, std::move(entries));
}

}  // namespace hsens
