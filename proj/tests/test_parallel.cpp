#include "doctest.h"
#include "hsens/analysis.hpp"
#include "hsens/measures.hpp"

using namespace hsens;

// The parallel kernels must give identical reports for any worker count
// (max with lowest-index witness tie-break).

TEST_CASE("measure reports are worker-count independent") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 6; ++trial) {
    TruthTable f = TruthTable::random_fn(10, rng);

    set_workers(1);
    auto s1 = sensitivity(f);
    auto bs1 = block_sensitivity(f);
    auto c1 = certificate(f);
    auto sum1 = sensitivity_summary(f);

    set_workers(4);
    auto s4 = sensitivity(f);
    auto bs4 = block_sensitivity(f);
    auto c4 = certificate(f);
    auto sum4 = sensitivity_summary(f);

    CHECK(s1.value == s4.value);
    CHECK(s1.witness == s4.witness);
    CHECK(bs1.value == bs4.value);
    CHECK(bs1.witness == bs4.witness);
    CHECK(bs1.witness_blocks == bs4.witness_blocks);
    CHECK(c1.value == c4.value);
    CHECK(c1.witness == c4.witness);
    CHECK(sum1.s0.witness == sum4.s0.witness);
    CHECK(sum1.s1.witness == sum4.s1.witness);
  }
  set_workers(0);
}

TEST_CASE("parallel kernels agree with the serial references") {
  SplitMix64 rng(56);
  set_workers(4);
  for (int trial = 0; trial < 6; ++trial) {
    TruthTable f = TruthTable::random_fn(9, rng);
    auto par = sensitivity(f);
    auto ser = ref::sensitivity(f);
    CHECK(par.value == ser.value);
    CHECK(par.witness == ser.witness);
    CHECK(sensitivity0(f).value == ref::sensitivity0(f).value);
    CHECK(sensitivity1(f).value == ref::sensitivity1(f).value);
  }
  set_workers(0);
}

TEST_CASE("sampled scans are worker-count independent") {
  set_workers(1);
  ScanSummary a = scan_properties(5, 2, ScanMode::Sampled, 3000, 42, nullptr);
  set_workers(4);
  ScanSummary b = scan_properties(5, 2, ScanMode::Sampled, 3000, 42, nullptr);
  set_workers(0);
  CHECK(a.properties_checked == b.properties_checked);
  CHECK(a.violations == b.violations);
  CHECK(a.turan_violations == b.turan_violations);
}

TEST_CASE("cluster reports are worker-count independent") {
  LabeledMinterm m = thm1_minterm(10, 3);
  set_workers(1);
  ClusterReport a = cluster_report(m, 2, 8, 50'000'000, nullptr);
  set_workers(4);
  ClusterReport b = cluster_report(m, 2, 8, 50'000'000, nullptr);
  set_workers(0);
  CHECK(a.enumerated == b.enumerated);
  CHECK(a.count == b.count);
  CHECK(a.merged_count == b.merged_count);
  CHECK(a.histogram == b.histogram);
}

TEST_CASE("oracle fill is worker-count independent") {
  LabeledMinterm m = thm3_partite_minterm(3, 3);
  MintermFunction f = MintermFunction::from_labeled(m);
  set_workers(1);
  OracleResult a = bruteforce_oracle(f, 2'000'000, false);
  set_workers(4);
  OracleResult b = bruteforce_oracle(f, 2'000'000, false);
  set_workers(0);
  CHECK(a.table == b.table);
}
