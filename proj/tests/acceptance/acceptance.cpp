// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its runtime budget; going over budget
// fails the criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsens/analysis.hpp"
#include "hsens/compose.hpp"
#include "hsens/measures.hpp"

using namespace hsens;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

void run_criterion(int index, const Criterion& c) {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > c.budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("criterion %d (%s): %s  [%.1fs / %.0fs]%s%s\n", index, c.name,
              ok ? "PASS" : "FAIL", secs, c.budget_seconds, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool all_of_inputs(const TruthTable& f, const std::vector<uint8_t>& a,
                   const std::vector<uint8_t>& b) {
  for (uint64_t x = 0; x < f.num_inputs(); ++x)
    if (a[x] > b[x]) return false;
  return true;
}

uint32_t isqrt_u(uint32_t v) {
  uint32_t s = static_cast<uint32_t>(std::sqrt(static_cast<double>(v)));
  while ((s + 1) * (s + 1) <= v) ++s;
  while (s * s > v) --s;
  return s;
}

// 1. measure-engine oracle suite
bool criterion1(std::string& detail) {
  SplitMix64 rng(2024);
  char buf[160];
  for (int i = 0; i < 1000; ++i) {
    unsigned n = 1 + (i % 12);
    TruthTable f = TruthTable::random_fn(n, rng);
    auto s_all = sensitivity_all(f);
    auto bs_all = block_sensitivity_all(f);
    auto c_all = certificate_all(f);
    if (!all_of_inputs(f, s_all, bs_all) || !all_of_inputs(f, bs_all, c_all)) {
      std::snprintf(buf, sizeof buf, "pointwise chain failed on function %d (N=%u)", i, n);
      detail = buf;
      return false;
    }
    int s_max = *std::max_element(s_all.begin(), s_all.end());
    int bs_max = *std::max_element(bs_all.begin(), bs_all.end());
    int c_max = *std::max_element(c_all.begin(), c_all.end());
    if (!(s_max <= bs_max && bs_max <= c_max)) {
      detail = "global chain failed";
      return false;
    }
    if (i % 100 == 0) {
      // report layer agrees with the pointwise engines
      if (sensitivity(f).value != s_max || block_sensitivity(f).value != bs_max ||
          certificate(f).value != c_max) {
        detail = "report/pointwise mismatch";
        return false;
      }
    }
  }
  // every nonconstant symmetric function on n <= 10 variables
  for (unsigned n = 1; n <= 10; ++n) {
    for (uint32_t wv = 1; wv + 1 < (1u << (n + 1)); ++wv) {
      TruthTable f = TruthTable::build(
          n, [&](uint32_t x) { return (wv >> std::popcount(x)) & 1; });
      if (sensitivity(f).value < static_cast<int>((n + 1) / 2)) {
        std::snprintf(buf, sizeof buf, "symmetric bound failed at n=%u wv=%u", n, wv);
        detail = buf;
        return false;
      }
    }
  }
  detail = "1000 random functions pointwise + 4092 symmetric functions";
  return true;
}

// 2. construction fidelity
bool criterion2(std::string& detail) {
  for (unsigned n = 9; n <= 16; ++n)
    if (thm1_minterm(n, 3).support_size() != support_size_formula(n, 1, 1)) {
      detail = "thm1 support mismatch at n=" + std::to_string(n);
      return false;
    }
  if (thm1_minterm(12, 3).support_size() != 45) {
    detail = "support at n=12 is not 45";
    return false;
  }

  // the full displayed table at n=8 (three special rows/columns, the rest
  // generic)
  LabeledMinterm m = thm3_partite_minterm(8, 3);
  auto expect = [](unsigned a, unsigned b) -> Trit {
    if (a == 1) return b <= 3 ? Trit::Zero : Trit::One;
    if (a == 2) return (b == 1 || b == 2) ? Trit::Zero : Trit::One;
    if (a == 3) return (b == 1 || b == 3) ? Trit::One : Trit::Zero;
    if (b > 3) return Trit::Star;
    return b == 3 ? Trit::Zero : Trit::One;
  };
  for (unsigned a = 1; a <= 8; ++a)
    for (unsigned b = 1; b <= 8; ++b) {
      uint8_t t[3] = {static_cast<uint8_t>(a - 1), static_cast<uint8_t>(b - 1), 0};
      if (eval_partite_rule(m.params(), m.partite_roles(), t) != expect(a, b)) {
        detail = "table cell (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return false;
      }
    }
  detail = "support sizes 9..16 + all 64 table cells";
  return true;
}

// 3. invariance
bool criterion3(std::string& detail) {
  // partite k=3, n=3: dense table invariant under all 216 group elements
  LabeledMinterm m3 = thm3_partite_minterm(3, 3);
  MintermFunction f3 = MintermFunction::from_labeled(m3);
  TruthTable t3 = f3.materialize();
  OracleResult oracle = bruteforce_oracle(f3, 1000, false);
  if (!(t3 == oracle.table)) {
    detail = "structured and group-element fills differ";
    return false;
  }
  unsigned checked = 0;
  bool ok = true;
  GroupSpec::partite_product(3, 3).for_each_element(300, [&](const VertexPerm& sigma) {
    if (!is_invariant_under(t3, sigma, m3.indexer())) ok = false;
    ++checked;
  });
  if (!ok || checked != 216) {
    detail = "partite invariance failed";
    return false;
  }

  // uniform k=3 at the largest materializable n (N = C(6,3) = 20): an
  // explicit minterm, since the structured family needs n >= 8 where
  // C(n,3) > 30
  VarIndexer ix = VarIndexer::uniform(6, 3);
  PartialAssignment p(ix.num_vars(), {{0, 1}, {1, 1}, {5, 0}});
  MintermFunction fu =
      MintermFunction::from_explicit(p, GroupSpec::symmetric(6), ix, 1000);
  TruthTable tu = fu.materialize();
  if (!is_invariant(tu, GroupSpec::symmetric(6), ix) || tu.is_constant()) {
    detail = "uniform materialized invariance failed";
    return false;
  }

  // thm1 at n=9 via the lazy evaluator: f(x) = f(sigma x) on sampled inputs
  LabeledMinterm m1 = thm1_minterm(9, 3);
  MintermFunction f1 = MintermFunction::from_labeled(m1);
  SplitMix64 rng(5);
  std::vector<uint32_t> vmap(f1.num_vars());
  for (const auto& gen : GroupSpec::symmetric(9).generators()) {
    for (uint64_t s = 0; s < f1.num_vars(); ++s)
      vmap[s] = static_cast<uint32_t>(
          m1.indexer().rank_edge(gen.apply_edge(m1.indexer().unrank_edge(s))));
    for (int trial = 0; trial < 12; ++trial) {
      BitVec x(f1.num_vars());
      uint64_t density = 2 + rng.next() % 8;
      for (uint64_t v = 0; v < x.size(); ++v)
        if (rng.next() % density == 0) x.set(v, true);
      BitVec y(f1.num_vars());
      for (uint64_t s = 0; s < x.size(); ++s)
        if (x.get(vmap[s])) y.set(s, true);
      if (f1.eval(x) != f1.eval(y)) {
        detail = "thm1 symbolic invariance failed";
        return false;
      }
    }
  }
  detail = "216/216 elements on 2^27 + S_6 generators on 2^20 + symbolic thm1";
  return true;
}

// 4. claim 1
bool criterion4(std::string& detail) {
  std::vector<unsigned> grid = {9, 10, 11, 12, 13, 14};
  auto reports = verify_claim1(3, grid);
  std::string counts;
  for (const auto& r : reports) {
    counts += std::to_string(r.count) + " ";
    if (r.count != reports.front().count) {
      detail = "count grew across the grid: " + counts;
      return false;
    }
  }
  detail = "counts " + counts + "(merged " +
           std::to_string(reports.front().merged_count) + ") flat across 9..14";
  return true;
}

// 5. claim 2
bool criterion5(std::string& detail) {
  std::vector<unsigned> grid = {16, 25, 36, 49};
  auto reports = verify_claim2(4, grid, 3);
  const uint64_t c_num = reports.front().count;
  const uint64_t c_den = isqrt_u(grid.front());
  std::string counts;
  bool truncated = false;
  for (size_t i = 0; i < reports.size(); ++i) {
    counts += std::to_string(reports[i].count) + " ";
    truncated = truncated || reports[i].truncated;
    if (reports[i].count * c_den > c_num * isqrt_u(grid[i])) {
      detail = "count/sqrt(n) exceeded the n=16 constant: " + counts;
      return false;
    }
  }
  detail = "counts " + counts + "within " + std::to_string(c_num) + "/" +
           std::to_string(c_den) + " * sqrt(n)" +
           (truncated ? "; r_max=3 truncation reported" : "");
  return true;
}

// 6. scaling
bool criterion6(std::string& detail) {
  ScalingReport rep =
      scaling_report(MintermRule::Thm1, 3, {9, 10, 11, 12, 13, 14, 15, 16}, 2, 0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "slope %.4f", rep.slope);
  detail = buf;
  if (rep.slope < 0.85 || rep.slope > 1.15) {
    detail += " outside [0.85, 1.15]";
    return false;
  }
  for (const auto& row : rep.rows)
    if (static_cast<uint64_t>(row.s_lower) > std::max(row.s1_bound, row.s0_bound)) {
      detail += "; search lower bound exceeded a bound at n=" + std::to_string(row.n);
      return false;
    }
  return true;
}

// 7. lower-bound scans
bool criterion7(std::string& detail) {
  ScanSummary ex = scan_properties(4, 2, ScanMode::Exhaustive, 0, 0, nullptr);
  if (ex.properties_checked != 2046 || ex.violations != 0 || ex.turan_violations != 0) {
    detail = "exhaustive n=4 scan failed";
    return false;
  }
  if (ex.num_classes != 11 || hypergraph_class_count_burnside(4, 2) != 11) {
    detail = "class count is not 11";
    return false;
  }
  ScanSummary g5 = scan_properties(5, 2, ScanMode::Sampled, 100000, 1, nullptr);
  if (g5.violations != 0) {
    detail = "violation among sampled graph properties at n=5";
    return false;
  }
  ScanSummary h5 = scan_properties(5, 3, ScanMode::Sampled, 100000, 2, nullptr);
  if (h5.violations != 0) {
    detail = "violation among sampled 3-uniform properties at n=5";
    return false;
  }
  detail = "2046 exhaustive + 2x100000 sampled, zero violations";
  return true;
}

// 8. oracle equivalence
bool criterion8(std::string& detail) {
  LabeledMinterm m = thm3_partite_minterm(3, 3);
  MintermFunction f = MintermFunction::from_labeled(m);
  OracleResult oracle = bruteforce_oracle(f);
  uint64_t s1_bound = m.support_size();
  S0Bound s0b = cluster_s0_bound(m);
  SearchResult lower = search_sensitivity_lower(f, 3, 0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "exact s=%d s0=%d s1=%d vs bounds s1<=%llu s0<=%llu lower=%d",
                oracle.s.value, oracle.s0.value, oracle.s1.value,
                static_cast<unsigned long long>(s1_bound),
                static_cast<unsigned long long>(s0b.bound), lower.best);
  detail = buf;
  if (static_cast<uint64_t>(oracle.s1.value) > s1_bound) return false;
  if (static_cast<uint64_t>(oracle.s0.value) > s0b.bound) return false;
  if (lower.best > oracle.s.value) return false;
  return true;
}

// 9. composition
bool criterion9(std::string& detail) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    unsigned m1 = 2 + rng.next() % 12;
    unsigned m2 = 2 + rng.next() % 12;
    auto part = [&](unsigned m) {
      std::vector<PartialAssignment::Entry> entries;
      while (entries.empty()) {
        for (unsigned v = 0; v < m; ++v) {
          uint64_t r = rng.next() % 3;
          if (r < 2) entries.emplace_back(v, static_cast<uint8_t>(r));
        }
      }
      return PartialAssignment(m, std::move(entries));
    };
    PartialAssignment p1 = part(m1), p2 = part(m2);
    PartialAssignment c = xor_compose_minterms({p1, p2});
    if (c.size() != p1.size() * p2.size()) {
      detail = "support size did not factorize";
      return false;
    }
    for (auto [var, bit] : c.entries()) {
      auto v1 = p1.at(var / m2), v2 = p2.at(var % m2);
      if (!v1 || !v2 || bit != (*v1 ^ *v2)) {
        detail = "composed value is not the xor of the parts";
        return false;
      }
    }
    // star absorption on every non-support coordinate pair
    for (uint64_t i = 0; i < m1; ++i)
      for (uint64_t j = 0; j < m2; ++j)
        if (!p1.at(i) || !p2.at(j))
          if (c.at(i * m2 + j)) {
            detail = "star did not absorb";
            return false;
          }
  }
  detail = "100 random part pairs";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"measure-engine oracle suite", 60, criterion1},
      {"construction fidelity", 1, criterion2},
      {"invariance", 600, criterion3},
      {"claim 1 cluster flatness", 300, criterion4},
      {"claim 2 cluster envelope", 1800, criterion5},
      {"scaling slope", 600, criterion6},
      {"lower-bound scans", 600, criterion7},
      {"oracle equivalence", 600, criterion8},
      {"xor composition", 1, criterion9},
  };
  for (size_t i = 0; i < criteria.size(); ++i)
    run_criterion(static_cast<int>(i + 1), criteria[i]);
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
