#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "hsens/group.hpp"
#include "hsens/indexer.hpp"
#include "hsens/partial_assignment.hpp"

namespace hsens {

enum class Trit : uint8_t { Zero = 0, One = 1, Star = 2 };

enum class MintermRule { Thm1, Thm2, Thm3, Thm4, Explicit };

std::string rule_name(MintermRule rule);
MintermRule rule_from_name(const std::string& name);

// Which vertices play each distinguished role of a uniform-hypergraph
// minterm. The anchor block B, six W blocks, and for rule thm2 the packed
// slice D1; the padding D / D2 is the complement.
struct UniformPlacement {
  uint64_t b_mask = 0;
  std::array<uint64_t, 6> w_mask{};
  uint64_t d1_mask = 0;  // thm2 only

  uint64_t c_mask() const {
    uint64_t m = 0;
    for (uint64_t w : w_mask) m |= w;
    return m;
  }
  bool operator==(const UniformPlacement& o) const = default;
};

// Per-partition images of the special vertices of a partite minterm: the
// anchor vertex per coordinate plus the two extra selector vertices of the
// a and b blocks; rule thm4 adds the packed set in the last coordinate.
struct PartitePlacement {
  std::array<uint8_t, VarIndexer::kMaxArity> one{};
  uint8_t a_two = 0, a_three = 0;
  uint8_t b_two = 0, b_three = 0;
  uint64_t d1_mask = 0;  // thm4 only

  bool operator==(const PartitePlacement& o) const = default;
};

struct MintermParams {
  MintermRule rule = MintermRule::Thm1;
  unsigned n = 0, k = 0;
  unsigned k1 = 0, k2 = 0;  // thm2/thm4 use k1 = k2 = l
  unsigned d1_size = 0;     // thm2/thm4: floor(sqrt(n))
};

// Canonical split k = k1 + 2*k2 with k1,k2 <= ceil(k/3).
std::pair<unsigned, unsigned> split_k(unsigned k);

// Rule evaluation for an arbitrary placement of the distinguished sets.
Trit eval_uniform_rule(const MintermParams& mp, const UniformPlacement& pl,
                       uint64_t edge_mask);
Trit eval_partite_rule(const MintermParams& mp, const PartitePlacement& pl,
                       std::span<const uint8_t> tuple);

// Support iteration (every non-star variable exactly once). The callback
// returns false to stop early; the scan returns false iff stopped.
bool scan_support_uniform(const MintermParams& mp, const UniformPlacement& pl,
                          const std::function<bool(uint64_t edge_mask, bool bit)>& fn);
bool scan_support_partite(
    const MintermParams& mp, const PartitePlacement& pl,
    const std::function<bool(std::span<const uint8_t> tuple, bool bit)>& fn);

// A structured minterm: distinguished-set layout plus a value rule.
class LabeledMinterm {
 public:
  LabeledMinterm(MintermParams params, VarIndexer indexer, UniformPlacement roles);
  LabeledMinterm(MintermParams params, VarIndexer indexer, PartitePlacement roles);

  const MintermParams& params() const { return params_; }
  const VarIndexer& indexer() const { return indexer_; }
  bool is_uniform() const { return indexer_.kind() == IndexKind::Uniform; }
  const UniformPlacement& uniform_roles() const { return uroles_; }
  const PartitePlacement& partite_roles() const { return proles_; }

  Trit value_at(uint64_t var_rank) const;
  uint64_t support_size() const;
  void for_each_support(const std::function<void(uint64_t var, bool bit)>& fn) const;
  PartialAssignment to_assignment() const;

  // S_n for uniform rules, S_n^k per partition for partite rules.
  GroupSpec natural_group() const;

 private:
  MintermParams params_;
  VarIndexer indexer_;
  UniformPlacement uroles_;
  PartitePlacement proles_;
};

// The four constructions. Layout: W blocks first, then the padding, anchor
// block last; D1 takes the lowest-numbered padding vertices.
LabeledMinterm thm1_minterm(unsigned n, unsigned k);
LabeledMinterm thm2_minterm(unsigned n, unsigned k);
LabeledMinterm thm3_partite_minterm(unsigned n, unsigned k);
LabeledMinterm thm4_partite_minterm(unsigned n, unsigned k);

// JSON forms. Vertices are 1-based on disk. Structured rules carry their
// role sets plus the materialized support; rule "explicit" carries entries
// only.
struct MintermDoc {
  MintermRule rule = MintermRule::Explicit;
  VarIndexer indexer = VarIndexer::uniform(1, 1);
  std::optional<LabeledMinterm> labeled;
  std::optional<PartialAssignment> assignment;
};

std::string minterm_to_json(const LabeledMinterm& m, bool include_entries = true);
std::string explicit_minterm_to_json(const VarIndexer& ix, const PartialAssignment& p);
MintermDoc minterm_from_json(const std::string& text);

}  // namespace hsens
