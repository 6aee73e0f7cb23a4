#pragma once

#include <functional>
#include <string>

#include "hsens/minterm.hpp"

namespace hsens {

struct OrbitConstraints {
  // Keep the anchor where the construction put it: sigma(B) = B for uniform
  // rules, fixed c-block anchor images for partite rules.
  bool fix_anchor = false;
  uint64_t cap = 50'000'000;  // enumeration guard (descriptor count)

  // Partition hook for parallel consumption: pin the leading W blocks and
  // enumerate only the tail (uniform rules).
  std::array<uint64_t, 6> w_prefix{};
  unsigned w_prefix_count = 0;
};

// Number of placement descriptors the enumeration would emit. Saturates at
// UINT64_MAX on overflow.
uint64_t count_placements(const LabeledMinterm& family, const OrbitConstraints& oc);

// Enumerates the orbit of the minterm as placement descriptors, each
// descriptor exactly once, in a fixed deterministic order. Vertices inside
// one W block, inside D/D2, and inside D1 are interchangeable, so they are
// represented as sets. The callback returns false to stop; the function
// returns false iff stopped. Throws BudgetExceeded when the descriptor count
// exceeds oc.cap.
bool for_each_uniform_placement(const LabeledMinterm& family, const OrbitConstraints& oc,
                                const std::function<bool(const UniformPlacement&)>& fn);
bool for_each_partite_placement(const LabeledMinterm& family, const OrbitConstraints& oc,
                                const std::function<bool(const PartitePlacement&)>& fn);

// Distance between two orbit translates, computed by iterating the support
// of `a` and evaluating `b`'s rule at each variable (no materialization).
// Early-exits with abort_above + 1 once the count exceeds abort_above.
int symbolic_dist_uniform(const MintermParams& mp, const UniformPlacement& a,
                          const UniformPlacement& b, int abort_above = 1 << 30);
int symbolic_dist_partite(const MintermParams& mp, const PartitePlacement& a,
                          const PartitePlacement& b, int abort_above = 1 << 30);

// Materializes the translate described by a placement (for tests and small
// instances).
PartialAssignment placement_assignment(const LabeledMinterm& family,
                                       const UniformPlacement& pl);
PartialAssignment placement_assignment(const LabeledMinterm& family,
                                       const PartitePlacement& pl);

// Descriptor JSON: {"B": [...], "W": [[...]x6], "D1": [...] (optional)}.
std::string placement_to_json(const UniformPlacement& pl, bool with_d1);

}  // namespace hsens
