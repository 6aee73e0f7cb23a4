#include <algorithm>

#include "doctest.h"
#include "hsens/measures.hpp"

using namespace hsens;

namespace {

// Independent oracle: maximum sensitivity by literal definition.
int oracle_s(const TruthTable& f, int want = -1) {
  int best = 0;
  for (uint64_t x = 0; x < f.num_inputs(); ++x) {
    uint32_t xi = static_cast<uint32_t>(x);
    if (want >= 0 && f.get(xi) != (want == 1)) continue;
    int s = 0;
    for (unsigned i = 0; i < f.n_vars(); ++i) s += f.get(xi ^ (1u << i)) != f.get(xi);
    best = std::max(best, s);
  }
  return best;
}

bool subcube_forces(const TruthTable& f, uint32_t x, uint32_t mask) {
  for (uint64_t y = 0; y < f.num_inputs(); ++y)
    if ((static_cast<uint32_t>(y) & mask) == (x & mask) &&
        f.get(static_cast<uint32_t>(y)) != f.get(x))
      return false;
  return true;
}

}  // namespace

TEST_CASE("sensitivity_at basics") {
  CHECK(sensitivity_at(TruthTable::and_fn(3), 0b111) == 3);
  TruthTable zero = TruthTable::constant(4, false);
  for (uint32_t x = 0; x < 16; ++x) CHECK(sensitivity_at(zero, x) == 0);
  TruthTable par = TruthTable::parity_fn(4);
  for (uint32_t x = 0; x < 16; ++x) CHECK(sensitivity_at(par, x) == 4);
}

TEST_CASE("sensitivity of OR and majority") {
  TruthTable f = TruthTable::or_fn(2);
  auto s = sensitivity(f);
  CHECK(s.value == 2);
  CHECK(s.witness == 0u);  // the all-zeros input
  CHECK(sensitivity0(f).value == 2);
  CHECK(sensitivity1(f).value == 1);

  TruthTable maj = TruthTable::majority_fn(3);
  CHECK(sensitivity(maj).value == oracle_s(maj));
  CHECK(sensitivity(maj).value == 2);

  for (unsigned n = 1; n <= 6; ++n) {
    TruthTable par = TruthTable::parity_fn(n);
    CHECK(sensitivity(par).value == static_cast<int>(n));
    CHECK(sensitivity0(par).value == static_cast<int>(n));
    CHECK(sensitivity1(par).value == static_cast<int>(n));
  }
}

TEST_CASE("constant functions degenerate cleanly") {
  TruthTable one = TruthTable::constant(3, true);
  CHECK(sensitivity(one).value == 0);
  CHECK(sensitivity0(one).degenerate);
  CHECK(!sensitivity1(one).degenerate);
  CHECK(block_sensitivity(one).value == 0);
  CHECK(certificate(one).value == 0);
}

TEST_CASE("block sensitivity basics") {
  for (unsigned n = 2; n <= 5; ++n) {
    TruthTable par = TruthTable::parity_fn(n);
    auto r = block_sensitivity_at(par, 0);
    CHECK(r.value == static_cast<int>(n));  // singleton blocks
    CHECK(block_sensitivity(par).value == static_cast<int>(n));
  }
  for (unsigned n = 2; n <= 5; ++n)
    CHECK(block_sensitivity_at(TruthTable::or_fn(n), 0).value == static_cast<int>(n));

  // AND of two ORs on variable pairs {0,1} and {2,3}; at 0000 one variable
  // from each OR must flip, so two disjoint blocks is the maximum.
  TruthTable f = TruthTable::build(
      4, [](uint32_t x) { return ((x & 3) != 0) && ((x >> 2) != 0); });
  auto r = block_sensitivity_at(f, 0);
  CHECK(r.value == 2);
  CHECK(r.value == ref::block_sensitivity_at(f, 0));
}

TEST_CASE("block sensitivity witness blocks re-evaluate") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    TruthTable f = TruthTable::random_fn(6, rng);
    auto r = block_sensitivity(f);
    if (r.degenerate) continue;
    REQUIRE(r.witness.has_value());
    uint32_t x = *r.witness;
    CHECK(static_cast<int>(r.witness_blocks.size()) == r.value);
    uint32_t used = 0;
    for (uint32_t b : r.witness_blocks) {
      CHECK((used & b) == 0);  // disjoint
      used |= b;
      CHECK(f.get(x ^ b) != f.get(x));  // each block is sensitive
    }
  }
}

TEST_CASE("block sensitivity budget gate") {
  CHECK_THROWS_AS(block_sensitivity(TruthTable(17), MeasureBudget{16}), BudgetExceeded);
}

TEST_CASE("certificate basics") {
  for (unsigned n = 2; n <= 5; ++n) {
    TruthTable f = TruthTable::or_fn(n);
    CHECK(certificate_at(f, 1u).value == 1);  // the single 1 certifies
    CHECK(certificate_at(f, 0u).value == static_cast<int>(n));
    CHECK(certificate(f).value == static_cast<int>(n));
  }
  TruthTable maj = TruthTable::majority_fn(3);
  CHECK(certificate_at(maj, 0b011).value == 2);
  CHECK(certificate_at(maj, 0b011).value == ref::certificate_at(maj, 0b011));
}

TEST_CASE("per-input certificate works beyond the table gate") {
  // the branch-and-bound path, N > 16
  TruthTable f = TruthTable::or_fn(18);
  auto r = certificate_at(f, 0);
  CHECK(r.value == 18);
  CHECK(certificate_at(f, 1u << 17).value == 1);
}

TEST_CASE("certificate witness certifies") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    TruthTable f = TruthTable::random_fn(7, rng);
    uint32_t x = static_cast<uint32_t>(rng.next() & 127);
    auto r = certificate_at(f, x);
    REQUIRE(r.witness_set.has_value());
    CHECK(std::popcount(*r.witness_set) == r.value);
    CHECK(subcube_forces(f, x, *r.witness_set));
    // no smaller certificate exists
    CHECK(r.value == ref::certificate_at(f, x));
  }
}

TEST_CASE("pointwise chain s <= bs <= C on random functions") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    unsigned n = 1 + rng.next() % 10;
    TruthTable f = TruthTable::random_fn(n, rng);
    auto s_all = sensitivity_all(f);
    auto bs_all = block_sensitivity_all(f);
    auto c_all = certificate_all(f);
    for (uint64_t x = 0; x < f.num_inputs(); ++x) {
      CHECK(s_all[x] <= bs_all[x]);
      CHECK(bs_all[x] <= c_all[x]);
    }
    // globals match pointwise maxima
    CHECK(sensitivity(f).value == *std::max_element(s_all.begin(), s_all.end()));
    CHECK(block_sensitivity(f).value == *std::max_element(bs_all.begin(), bs_all.end()));
    CHECK(certificate(f).value == *std::max_element(c_all.begin(), c_all.end()));
  }
}

TEST_CASE("restricted chains s0 <= C0 and s1 <= C1") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    unsigned n = 2 + rng.next() % 8;
    TruthTable f = TruthTable::random_fn(n, rng);
    if (f.is_constant()) continue;
    CHECK(sensitivity0(f).value <= certificate0(f).value);
    CHECK(sensitivity1(f).value <= certificate1(f).value);
  }
}

TEST_CASE("nonconstant symmetric functions have s >= ceil(n/2)") {
  for (unsigned n = 1; n <= 8; ++n) {
    // weight-value vector enumerates all symmetric functions on n variables
    for (uint32_t wv = 1; wv + 1 < (1u << (n + 1)); ++wv) {
      TruthTable f =
          TruthTable::build(n, [&](uint32_t x) { return (wv >> std::popcount(x)) & 1; });
      CHECK(sensitivity(f).value >= static_cast<int>((n + 1) / 2));
    }
  }
}

TEST_CASE("per-input engines agree with the serial references") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    unsigned n = 2 + rng.next() % 6;
    TruthTable f = TruthTable::random_fn(n, rng);
    uint32_t x = static_cast<uint32_t>(rng.next() & (f.num_inputs() - 1));
    CHECK(block_sensitivity_at(f, x).value == ref::block_sensitivity_at(f, x));
    CHECK(certificate_at(f, x).value == ref::certificate_at(f, x));
    CHECK(sensitivity(f).value == ref::sensitivity(f).value);
    CHECK(sensitivity(f).witness == ref::sensitivity(f).witness);
  }
}
