#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsens/common.hpp"
#include "hsens/truth_table.hpp"

namespace hsens {

// Sparse partial assignment p : [N] -> {0,1,*}. Stars are implicit; entries
// hold the support, sorted by variable index. The size |p| is the support
// size.
class PartialAssignment {
 public:
  using Entry = std::pair<uint64_t, uint8_t>;

  PartialAssignment(uint64_t n_vars, std::vector<Entry> entries);
  static PartialAssignment empty(uint64_t n_vars) { return {n_vars, {}}; }

  uint64_t n_vars() const { return n_vars_; }
  uint64_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::optional<int> at(uint64_t var) const;

  // Consistency with a dense input index (requires n_vars <= 30).
  bool consistent_with_input(uint64_t x) const;
  bool consistent_with(const BitVec& x) const;

  bool operator==(const PartialAssignment& o) const = default;

  // JSON: {"n_vars": N, "entries": [[index, bit], ...]} sorted by index.
  std::string to_json() const;
  static PartialAssignment from_json(const std::string& text);

 private:
  uint64_t n_vars_ = 0;
  std::vector<Entry> entries_;
};

// Number of variables where one assignment says 0 and the other says 1.
// Star positions never contribute.
uint64_t dist(const PartialAssignment& a, const PartialAssignment& b);

// Subfunction on the non-fixed variables of p, survivor order preserved.
TruthTable restrict_table(const TruthTable& f, const PartialAssignment& p);

// Embeds a point y of the restricted cube back into the full cube of p.
uint64_t merge_input(const PartialAssignment& p, uint64_t y);

}  // namespace hsens
