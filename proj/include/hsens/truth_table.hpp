#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsens/common.hpp"

namespace hsens {

// Dense truth table of f:{0,1}^N -> {0,1}. Input x is addressed by the
// integer whose bit j equals variable j (little-endian variable order), so
// flipping variable j is XOR with 1<<j.
class TruthTable {
 public:
  static constexpr unsigned kMaxVars = 30;

  explicit TruthTable(unsigned n_vars, bool fill = false);

  template <class F>
  static TruthTable build(unsigned n_vars, F&& f) {
    TruthTable t(n_vars);
    for (uint64_t x = 0; x < t.num_inputs(); ++x)
      if (f(static_cast<uint32_t>(x))) t.set(static_cast<uint32_t>(x), true);
    return t;
  }

  unsigned n_vars() const { return n_vars_; }
  uint64_t num_inputs() const { return 1ULL << n_vars_; }

  bool get(uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  void set(uint32_t x, bool v) {
    uint64_t m = 1ULL << (x & 63);
    if (v)
      words_[x >> 6] |= m;
    else
      words_[x >> 6] &= ~m;
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

  uint64_t count_ones() const;
  bool is_constant() const;

  bool operator==(const TruthTable& o) const = default;

  // Binary format: 8-byte magic "HSENSTB1", N as uint32 little-endian, then
  // ceil(2^N/8) bytes with bit i of the stream = f(x_i).
  void save(const std::string& path) const;
  static TruthTable load(const std::string& path);

  static TruthTable constant(unsigned n_vars, bool v);
  static TruthTable and_fn(unsigned n_vars);
  static TruthTable or_fn(unsigned n_vars);
  static TruthTable parity_fn(unsigned n_vars);
  static TruthTable majority_fn(unsigned n_vars);  // strict majority of ones
  static TruthTable dictator_fn(unsigned n_vars, unsigned var);
  static TruthTable random_fn(unsigned n_vars, SplitMix64& rng);

 private:
  unsigned n_vars_ = 0;
  std::vector<uint64_t> words_;
};

// True iff f(x) depends only on the Hamming weight of x.
bool is_symmetric(const TruthTable& f);

}  // namespace hsens
