#include "hsens/common.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsens {

namespace {

constexpr unsigned kBinomMax = 65;

const std::array<std::array<uint64_t, kBinomMax>, kBinomMax>& binom_table() {
  static const auto table = [] {
    std::array<std::array<uint64_t, kBinomMax>, kBinomMax> t{};
    for (unsigned n = 0; n < kBinomMax; ++n) {
      t[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k)
        t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace

uint64_t binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n >= kBinomMax) throw Error("binom: n out of supported range (n <= 64)");
  return binom_table()[n][k];
}

bool for_each_ksubset(uint64_t universe, unsigned k,
                      const std::function<bool(uint64_t)>& fn) {
  unsigned m = std::popcount(universe);
  if (k > m) return true;
  if (k == 0) return fn(0);

  std::array<uint8_t, 64> pos{};
  unsigned idx = 0;
  for (uint64_t u = universe; u; u &= u - 1) pos[idx++] = std::countr_zero(u);

  // Index combinations c[0] < c[1] < ... < c[k-1], standard lex advance.
  std::array<uint8_t, 64> c{};
  for (unsigned i = 0; i < k; ++i) c[i] = i;
  while (true) {
    uint64_t mask = 0;
    for (unsigned i = 0; i < k; ++i) mask |= 1ULL << pos[c[i]];
    if (!fn(mask)) return false;

    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == m - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return true;
}

int hw_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_workers(int workers) {
#ifdef _OPENMP
  // 0 restores the startup default, which respects OMP_NUM_THREADS.
  static const int default_threads = omp_get_max_threads();
  omp_set_num_threads(workers > 0 ? workers : default_threads);
#else
  (void)workers;
#endif
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("rename failed: " + tmp + " -> " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hsens
