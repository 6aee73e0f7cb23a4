#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hsens/measures.hpp"
#include "hsens/minterm_function.hpp"
#include "hsens/placement.hpp"

namespace hsens {

// Exact support size of the thm1 construction:
// sum_{i=k2}^{2k2} C(6k2, i) * C(n - 6k2 - k1, 2k2 - i).
uint64_t support_size_formula(unsigned n, unsigned k1, unsigned k2);

// --- cluster verification (claims about translates near the minterm) ---

struct ClusterReport {
  unsigned n = 0, k = 0;
  std::string constraint;  // "anchor-fixed"
  int radius = 2;
  uint64_t enumerated = 0;    // descriptors visited (multiplicity-weighted)
  uint64_t count = 0;         // descriptors at distance <= radius
  uint64_t merged_count = 0;  // after merging distance-0 duplicates
  std::vector<uint64_t> histogram;  // index d: descriptors at distance d
  bool truncated = false;           // claim2: D1-image difference truncated
  int r_max = -1;
  double seconds = 0;

  std::string to_json() const;
};

// Counts translates with the anchor fixed at distance <= radius from the
// minterm itself (vertex-level enumeration; thm1 and thm3 families).
ClusterReport cluster_report(const LabeledMinterm& family, int radius = 2,
                             int hist_cutoff = 8, uint64_t cap = 50'000'000,
                             std::vector<UniformPlacement>* members_out = nullptr);

std::vector<ClusterReport> verify_claim1(unsigned k, const std::vector<unsigned>& n_grid,
                                         int radius = 2, uint64_t cap = 50'000'000);

// Claim 2 runs over the pattern-reduced class space: distances depend only
// on how many vertices of each old region land in each new region, so the
// matrix of counts is enumerated and each pattern contributes its
// realization count. The D1-image difference is truncated at r_max
// (reported, never silent).
ClusterReport cluster_report_thm2(const LabeledMinterm& family, int r_max = 3,
                                  int radius = 2, int hist_cutoff = 8,
                                  uint64_t pattern_cap = 5'000'000);

std::vector<ClusterReport> verify_claim2(unsigned k, const std::vector<unsigned>& n_grid,
                                         int r_max = 3, int radius = 2,
                                         uint64_t pattern_cap = 5'000'000);

// --- structural s0 bound ---

struct S0Bound {
  uint64_t anchor_choices = 0;  // C(n,k1) uniform, n^{k1} partite
  int cluster = 0;              // max pairwise-distance<=radius clique size
  uint64_t bound = 0;           // product
  uint64_t candidates = 0;      // descriptors at distance <= radius
};

S0Bound cluster_s0_bound(const LabeledMinterm& family, int radius = 2,
                         uint64_t cap = 50'000'000);

// --- search lower bound ---

struct SearchResult {
  int best = 0;
  BitVec witness;
  bool exact = false;  // always a lower bound, never exact
};

// Seeded hill climbing over inputs, maximizing s(f, x) via orbit scans.
// Restarts: the minterm itself, a merge of two near translates, then
// seeded random perturbations. Deterministic given (effort, seed) and
// monotone in effort.
SearchResult search_sensitivity_lower(const MintermFunction& f, int effort,
                                      uint64_t seed = 0);

// --- hypergraph property scans ---

struct HypergraphClasses {
  unsigned n = 0, k = 0;
  uint32_t num_classes = 0;
  std::vector<uint32_t> class_of;  // per edge-mask, 2^N entries
};

// Isomorphism classes of k-uniform hypergraphs on n vertices by explicit
// minimization over all n! vertex permutations. Requires C(n,k) <= 20.
HypergraphClasses hypergraph_classes(unsigned n, unsigned k);

// Independent class count via the cycle-counting (Burnside) formula.
uint64_t hypergraph_class_count_burnside(unsigned n, unsigned k);

struct ScanRecord {
  unsigned n = 0, k = 0;
  std::string property_id;  // hex of the class-value assignment
  int s = 0, s0 = 0, s1 = 0;
  uint64_t m = 0;  // minimum edge count among 1-inputs
  int bound = 0;   // ceil(n/(k+2))
  bool violation = false;
};

enum class ScanMode { Exhaustive, Sampled };

struct ScanSummary {
  unsigned n = 0, k = 0;
  uint32_t num_classes = 0;
  uint64_t properties_checked = 0;
  uint64_t violations = 0;
  uint64_t turan_violations = 0;  // k = 2 only: s <= n/4
};

// Enumerates (or samples) nontrivial class-value assignments, computes
// s/s0/s1 and the minimum 1-input weight for each, and checks the lower
// bounds. The sink may be null when only the summary is wanted.
ScanSummary scan_properties(unsigned n, unsigned k, ScanMode mode, uint64_t samples,
                            uint64_t seed,
                            const std::function<void(const ScanRecord&)>& sink,
                            uint64_t exhaustive_cap = 1u << 21);

// --- scaling report ---

struct ScalingRow {
  unsigned n = 0;
  uint64_t support = 0;   // |p|
  uint64_t s1_bound = 0;  // = |p|
  uint64_t s0_bound = 0;  // cluster bound
  int s_lower = 0;        // search lower bound
  double seconds = 0;
};

struct ScalingReport {
  MintermRule rule;
  unsigned k = 0;
  std::vector<ScalingRow> rows;
  double slope = 0;  // OLS slope of log max(s1,s0) vs log n
};

ScalingReport scaling_report(MintermRule rule, unsigned k,
                             const std::vector<unsigned>& n_grid, int effort = 2,
                             uint64_t seed = 0);

std::string scaling_csv(const ScalingReport& report, bool with_timing = true);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

// --- brute-force oracle ---

struct OracleResult {
  TruthTable table;
  MeasureReport s, s0, s1;
  uint64_t translates = 0;  // distinct sigma(p) used for the fill
};

// Independent route: enumerates group elements, forms each translate via
// apply_perm, marks its consistent subcube, then runs the exact measures on
// the dense table. Requires N <= 27.
OracleResult bruteforce_oracle(const MintermFunction& f, uint64_t group_cap = 2'000'000,
                               bool with_measures = true);

}  // namespace hsens
