#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hsens/truth_table.hpp"

namespace hsens {

struct MeasureReport {
  int value = 0;
  std::optional<uint32_t> witness;       // input achieving the value
  std::vector<uint32_t> witness_blocks;  // bs only: disjoint block masks
  std::optional<uint32_t> witness_set;   // certificate only: fixed-variable mask
  bool exact = true;
  bool degenerate = false;  // maximum over an empty preimage
};

struct MeasureBudget {
  unsigned global_vars = 16;  // gate for the exact global bs / C computations
};

// --- sensitivity ---
int sensitivity_at(const TruthTable& f, uint32_t x);
MeasureReport sensitivity(const TruthTable& f);
MeasureReport sensitivity0(const TruthTable& f);  // max over f^{-1}(0)
MeasureReport sensitivity1(const TruthTable& f);  // max over f^{-1}(1)

// All three from one scan.
struct SensitivitySummary {
  MeasureReport s, s0, s1;
};
SensitivitySummary sensitivity_summary(const TruthTable& f);

// --- block sensitivity ---
// Exact: enumerates minimal sensitive blocks at x, then solves maximum
// disjoint packing by branch and bound.
MeasureReport block_sensitivity_at(const TruthTable& f, uint32_t x);
MeasureReport block_sensitivity(const TruthTable& f, MeasureBudget budget = {});

// --- certificate complexity ---
MeasureReport certificate_at(const TruthTable& f, uint32_t x);
MeasureReport certificate(const TruthTable& f, MeasureBudget budget = {});
MeasureReport certificate0(const TruthTable& f, MeasureBudget budget = {});
MeasureReport certificate1(const TruthTable& f, MeasureBudget budget = {});

// --- pointwise engines (one value per input) ---
std::vector<uint8_t> sensitivity_all(const TruthTable& f);
std::vector<uint8_t> block_sensitivity_all(const TruthTable& f);  // N <= 16
std::vector<uint8_t> certificate_all(const TruthTable& f);        // N <= 16

namespace ref {

// Serial reference implementations. Deliberately naive and independent of
// the kernels above; used by tests and the benchmark.
MeasureReport sensitivity(const TruthTable& f);
MeasureReport sensitivity0(const TruthTable& f);
MeasureReport sensitivity1(const TruthTable& f);
int block_sensitivity_at(const TruthTable& f, uint32_t x);  // N <= 14
int certificate_at(const TruthTable& f, uint32_t x);        // N <= 14

}  // namespace ref

}  // namespace hsens
