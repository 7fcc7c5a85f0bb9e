// Serial reference vs OpenMP: wall time and bitwise agreement for the trial
// sweep and the spectral-deviation grid.
//
//   bench_parallel [trials] [grid_points]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "spikesr/execution.hpp"
#include "spikesr/experiments.hpp"
#include "spikesr/worstcase.hpp"

using namespace spikesr;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_records(const std::vector<ExperimentRecord>& a, const std::vector<ExperimentRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].epsilon0 != b[i].epsilon0 || a[i].failure != b[i].failure) return false;
    for (std::size_t j = 0; j < a[i].nodes.size(); ++j) {
      const auto& x = a[i].nodes[j];
      const auto& y = b[i].nodes[j];
      if (std::memcmp(&x.error, &y.error, sizeof(double)) != 0 || x.success != y.success ||
          x.kx != y.kx || x.ka != y.ka)
        return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int trials = argc > 1 ? std::atoi(argv[1]) : 200;
  const int grid = argc > 2 ? std::atoi(argv[2]) : 2000000;
  std::printf("threads: %d\n", available_threads());

  SweepSpec spec = amplification_defaults(2, 3, Scheme::S1);
  spec.n = {128, 256};
  spec.trials = trials;
  spec.base_seed = 7;
  std::vector<ExperimentRecord> serial, parallel;
  const double ts = seconds([&] { serial = amplification_sweep(spec, Execution::Serial); });
  const double tp = seconds([&] { parallel = amplification_sweep(spec, Execution::OpenMP); });
  std::printf("sweep  %5d trials   serial %8.3f s   openmp %8.3f s   speedup %5.2f   identical %s\n",
              trials, ts, tp, ts / tp, same_records(serial, parallel) ? "yes" : "NO");

  const SpikeTrain f({1.0, -1.0, 1.0}, normalized_clustered_nodes(2, 3, 0.01));
  WorstCaseOptions opts;
  opts.blowup = 200;
  opts.grid_points = 0;
  const SpikeTrain g = worst_case_signal(f, normalized_geometry(2, 3, 0.01), 1e-6, opts).perturbed;
  double ds = 0, dp = 0;
  const double gs = seconds([&] { ds = verify_spectral_deviation(f, g, 200, grid, Execution::Serial); });
  const double gp = seconds([&] { dp = verify_spectral_deviation(f, g, 200, grid, Execution::OpenMP); });
  std::printf("grid   %8d points serial %8.3f s   openmp %8.3f s   speedup %5.2f   identical %s\n",
              grid, gs, gp, gs / gp, ds == dp ? "yes" : "NO");
  return same_records(serial, parallel) && ds == dp ? 0 : 1;
}
