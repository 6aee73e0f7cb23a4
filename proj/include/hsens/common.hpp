#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsens {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an exact computation would exceed a configured size gate.
// The message names the cap that was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Binomial coefficient; exact for all values that fit in uint64_t with n <= 64.
// Returns 0 for k > n.
uint64_t binom(unsigned n, unsigned k);

// splitmix64: small deterministic generator used for seeded sampling.
// All randomness in the library flows through this so that runs are
// reproducible across platforms and worker counts.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound), bound > 0. Rejection-free multiply-shift.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  bool coin() { return next() >> 63; }
};

// Dynamic bit vector used for inputs of functions whose variable count
// exceeds the dense truth-table budget.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(uint64_t n_bits, bool fill = false)
      : n_bits_(n_bits), words_((n_bits + 63) / 64, fill ? ~0ULL : 0ULL) {
    trim();
  }

  uint64_t size() const { return n_bits_; }
  bool get(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(uint64_t i, bool v) {
    uint64_t m = 1ULL << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(uint64_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  uint64_t popcount() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

  bool operator==(const BitVec& o) const = default;

 private:
  void trim() {
    if (n_bits_ & 63) words_.back() &= (1ULL << (n_bits_ & 63)) - 1;
  }

  uint64_t n_bits_ = 0;
  std::vector<uint64_t> words_;
};

// Visit every k-subset of the set bits of `universe`, in lexicographic order
// of the chosen positions. Returns false if the callback stopped enumeration.
bool for_each_ksubset(uint64_t universe, unsigned k,
                      const std::function<bool(uint64_t)>& fn);

// Number of usable OpenMP threads (1 when built without OpenMP).
int hw_threads();

// Sets the worker count for subsequent parallel regions. 0 = hardware default.
void set_workers(int workers);

// Writes content to path via a temp file + rename, so readers never observe
// a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace hsens
