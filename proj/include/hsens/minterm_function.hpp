#pragma once

#include <cstdint>
#include <vector>

#include "hsens/group.hpp"
#include "hsens/minterm.hpp"
#include "hsens/placement.hpp"
#include "hsens/truth_table.hpp"

namespace hsens {

// A minterm-transitive function: f(x) = 1 iff x is consistent with some
// group translate of the minterm.
//
// Two evaluation strategies: structured minterms scan placement descriptors
// lazily (pruning a candidate on its first mismatching support variable);
// explicit minterms materialize the orbit once by enumerating group elements
// and deduplicating the translates.
class MintermFunction {
 public:
  static MintermFunction from_labeled(LabeledMinterm m);
  static MintermFunction from_explicit(PartialAssignment p, GroupSpec group,
                                       VarIndexer ix, uint64_t group_cap = 1'000'000);

  const VarIndexer& indexer() const { return indexer_; }
  uint64_t num_vars() const { return indexer_.num_vars(); }
  const GroupSpec& group() const { return group_; }
  const PartialAssignment& base_assignment() const { return base_; }

  bool is_labeled() const { return labeled_.has_value(); }
  const LabeledMinterm& labeled() const { return *labeled_; }
  const std::vector<PartialAssignment>& explicit_orbit() const { return orbit_; }
  uint64_t orbit_size() const;

  bool eval(const BitVec& x) const;
  bool eval_input(uint64_t x) const;  // dense index, N <= 30

  // One orbit scan yields f(x) and the full sensitive-variable set of x:
  // a translate with zero mismatches witnesses f(x) = 1 and blocks flips on
  // its support; a translate with exactly one mismatch witnesses
  // f(x ^ flip) = 1 at the mismatching variable.
  struct ScanSensitivity {
    bool value = false;
    int sensitivity = 0;
    std::vector<uint64_t> sensitive_vars;
  };
  ScanSensitivity scan_sensitivity(const BitVec& x) const;

  // Dense truth table by marking the consistent subcube of every translate.
  TruthTable materialize(unsigned max_vars = 27) const;

 private:
  MintermFunction() : indexer_(VarIndexer::uniform(1, 1)) {}

  std::optional<LabeledMinterm> labeled_;
  std::vector<PartialAssignment> orbit_;  // explicit strategy
  VarIndexer indexer_;
  GroupSpec group_;
  PartialAssignment base_ = PartialAssignment::empty(1);
};

}  // namespace hsens
