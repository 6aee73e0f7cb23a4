// Timing comparison of the OpenMP kernels against the serial references.
//
//   ./bench_kernels [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "hsens/analysis.hpp"
#include "hsens/measures.hpp"

using namespace hsens;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_of(F&& fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : 0;
  std::printf("threads: %d (0 = hardware default, %d available)\n", threads,
              hw_threads());

  SplitMix64 rng(1);
  TruthTable f22 = TruthTable::random_fn(22, rng);

  set_workers(1);
  double s_serial = time_of([&] { ref::sensitivity(f22); });
  set_workers(threads);
  double s_par = time_of([&] { sensitivity(f22); });
  std::printf("sensitivity N=22:      serial %.3fs   parallel %.3fs\n", s_serial, s_par);

  TruthTable f14 = TruthTable::random_fn(14, rng);
  set_workers(1);
  double bs_1 = time_of([&] { block_sensitivity(f14); });
  set_workers(threads);
  double bs_t = time_of([&] { block_sensitivity(f14); });
  std::printf("block sens N=14:       1 thread %.3fs  parallel %.3fs\n", bs_1, bs_t);

  LabeledMinterm m = thm3_partite_minterm(3, 3);
  MintermFunction fn = MintermFunction::from_labeled(m);
  set_workers(1);
  double or_1 = time_of([&] { bruteforce_oracle(fn, 2'000'000, false); });
  set_workers(threads);
  double or_t = time_of([&] { bruteforce_oracle(fn, 2'000'000, false); });
  std::printf("oracle fill N=27:      1 thread %.3fs  parallel %.3fs\n", or_1, or_t);

  set_workers(1);
  double sc_1 = time_of([&] { scan_properties(5, 2, ScanMode::Sampled, 20000, 0, nullptr); });
  set_workers(threads);
  double sc_t = time_of([&] { scan_properties(5, 2, ScanMode::Sampled, 20000, 0, nullptr); });
  std::printf("property scan 2e4:     1 thread %.3fs  parallel %.3fs\n", sc_1, sc_t);

  double c1 = time_of([&] { cluster_report(thm1_minterm(12, 3), 2, 8, 50'000'000, nullptr); });
  std::printf("claim1 cluster n=12:   %.3fs\n", c1);
  return 0;
}
