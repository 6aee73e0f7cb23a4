#include <cstdio>

#include "doctest.h"
#include "hsens/truth_table.hpp"

using namespace hsens;

TEST_CASE("builders") {
  TruthTable f = TruthTable::or_fn(3);
  CHECK(!f.get(0));
  for (uint32_t x = 1; x < 8; ++x) CHECK(f.get(x));

  TruthTable g = TruthTable::and_fn(3);
  CHECK(g.get(7));
  CHECK(g.count_ones() == 1);

  TruthTable h = TruthTable::parity_fn(4);
  CHECK(h.get(0b0001));
  CHECK(!h.get(0b0011));

  TruthTable m = TruthTable::majority_fn(3);
  CHECK(!m.get(0b001));
  CHECK(m.get(0b011));

  CHECK(TruthTable::constant(4, true).is_constant());
  CHECK(TruthTable::constant(0, false).num_inputs() == 1);
}

TEST_CASE("variable budget") {
  CHECK_THROWS_AS(TruthTable(31), BudgetExceeded);
}

TEST_CASE("symmetry detection") {
  CHECK(is_symmetric(TruthTable::parity_fn(4)));
  CHECK(is_symmetric(TruthTable::majority_fn(3)));
  CHECK(is_symmetric(TruthTable::constant(3, false)));
  CHECK(!is_symmetric(TruthTable::dictator_fn(2, 0)));
}

TEST_CASE("binary file round trip") {
  TruthTable f = TruthTable::majority_fn(5);
  std::string path = "/tmp/hsens_tt_test.bin";
  f.save(path);
  TruthTable g = TruthTable::load(path);
  CHECK(f == g);
  std::remove(path.c_str());
}

TEST_CASE("binary file layout") {
  // magic, u32 little-endian N, then bit i of the stream = f(x_i)
  TruthTable f(3);
  f.set(0, true);
  f.set(5, true);
  std::string path = "/tmp/hsens_tt_layout.bin";
  f.save(path);
  std::string blob = read_file(path);
  REQUIRE(blob.size() == 13);
  CHECK(blob.substr(0, 8) == "HSENSTB1");
  CHECK(static_cast<uint8_t>(blob[8]) == 3);
  CHECK(blob[9] == 0);
  CHECK(blob[10] == 0);
  CHECK(blob[11] == 0);
  CHECK(static_cast<uint8_t>(blob[12]) == 0b00100001);
  std::remove(path.c_str());
}

TEST_CASE("load rejects corrupt files") {
  std::string path = "/tmp/hsens_tt_bad.bin";
  write_file_atomic(path, "NOTMAGIC!!!!");
  CHECK_THROWS_AS(TruthTable::load(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("random tables are seeded deterministically") {
  SplitMix64 a(7), b(7);
  CHECK(TruthTable::random_fn(8, a) == TruthTable::random_fn(8, b));
}
