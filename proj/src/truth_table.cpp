#include "hsens/truth_table.hpp"

#include <bit>
#include <cstring>

namespace hsens {

namespace {
constexpr char kMagic[8] = {'H', 'S', 'E', 'N', 'S', 'T', 'B', '1'};
}

TruthTable::TruthTable(unsigned n_vars, bool fill) : n_vars_(n_vars) {
  if (n_vars > kMaxVars)
    throw BudgetExceeded("truth table cap: N <= " + std::to_string(kMaxVars));
  uint64_t inputs = 1ULL << n_vars_;
  words_.assign((inputs + 63) / 64, fill ? ~0ULL : 0ULL);
  if (inputs < 64) words_[0] &= (1ULL << inputs) - 1;
}

uint64_t TruthTable::count_ones() const {
  uint64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool TruthTable::is_constant() const {
  uint64_t ones = count_ones();
  return ones == 0 || ones == num_inputs();
}

void TruthTable::save(const std::string& path) const {
  std::string blob;
  blob.reserve(16 + words_.size() * 8);
  blob.append(kMagic, 8);
  uint32_t n = n_vars_;
  for (int i = 0; i < 4; ++i) blob.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
  uint64_t n_bytes = (num_inputs() + 7) / 8;
  for (uint64_t b = 0; b < n_bytes; ++b)
    blob.push_back(static_cast<char>((words_[b >> 3] >> (8 * (b & 7))) & 0xff));
  write_file_atomic(path, blob);
}

TruthTable TruthTable::load(const std::string& path) {
  std::string blob = read_file(path);
  if (blob.size() < 12 || std::memcmp(blob.data(), kMagic, 8) != 0)
    throw Error("not a truth-table file: " + path);
  uint32_t n = 0;
  for (int i = 0; i < 4; ++i)
    n |= static_cast<uint32_t>(static_cast<uint8_t>(blob[8 + i])) << (8 * i);
  if (n > kMaxVars) throw Error("truth-table file declares N > 30: " + path);
  TruthTable t(n);
  uint64_t n_bytes = (t.num_inputs() + 7) / 8;
  if (blob.size() != 12 + n_bytes)
    throw Error("truth-table file has wrong length: " + path);
  for (uint64_t b = 0; b < n_bytes; ++b)
    t.words_[b >> 3] |=
        static_cast<uint64_t>(static_cast<uint8_t>(blob[12 + b])) << (8 * (b & 7));
  return t;
}

TruthTable TruthTable::constant(unsigned n_vars, bool v) {
  return TruthTable(n_vars, v);
}

TruthTable TruthTable::and_fn(unsigned n_vars) {
  TruthTable t(n_vars);
  t.set(static_cast<uint32_t>(t.num_inputs() - 1), true);
  return t;
}

TruthTable TruthTable::or_fn(unsigned n_vars) {
  TruthTable t(n_vars, true);
  t.set(0, false);
  return t;
}

TruthTable TruthTable::parity_fn(unsigned n_vars) {
  return build(n_vars, [](uint32_t x) { return std::popcount(x) & 1; });
}

TruthTable TruthTable::majority_fn(unsigned n_vars) {
  return build(n_vars, [n_vars](uint32_t x) {
    return 2 * std::popcount(x) > static_cast<int>(n_vars);
  });
}

TruthTable TruthTable::dictator_fn(unsigned n_vars, unsigned var) {
  return build(n_vars, [var](uint32_t x) { return (x >> var) & 1; });
}

TruthTable TruthTable::random_fn(unsigned n_vars, SplitMix64& rng) {
  TruthTable t(n_vars);
  for (auto& w : t.words_) w = rng.next();
  uint64_t inputs = t.num_inputs();
  if (inputs < 64) t.words_[0] &= (1ULL << inputs) - 1;
  return t;
}

bool is_symmetric(const TruthTable& f) {
  // Bucket inputs by weight; every bucket must be constant.
  std::vector<int8_t> weight_value(f.n_vars() + 1, -1);
  for (uint64_t x = 0; x < f.num_inputs(); ++x) {
    int w = std::popcount(x);
    int v = f.get(static_cast<uint32_t>(x)) ? 1 : 0;
    if (weight_value[w] < 0)
      weight_value[w] = static_cast<int8_t>(v);
    else if (weight_value[w] != v)
      return false;
  }
  return true;
}

}  // namespace hsens
