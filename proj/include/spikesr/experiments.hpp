#pragma once

// Single recovery experiment, randomized sweeps over (h, N, epsilon), slope
// and phase-boundary fits, and the CSV / JSON-lines record writers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spikesr/execution.hpp"
#include "spikesr/fitting.hpp"
#include "spikesr/signal.hpp"

namespace spikesr {

enum class Scheme {
  S1,  // amplitudes i^k, random bounded noise
  S2,  // amplitudes (-1)^k, worst-case cluster perturbation
};

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct ExperimentSetup {
  int p = 2;
  int d = 3;
  double h = 0.01;  // cluster extent in the [0, pi] layout
  int n = 64;       // number of unit-rate samples
  double epsilon = 1e-6;
  Scheme scheme = Scheme::S1;
  std::uint64_t seed = 0;
  NoiseModel noise = NoiseModel::Disk;
};

struct NodeOutcome {
  bool cluster = false;
  double error = 0.0;  // circular distance to the nearest estimated node
  bool success = false;
  std::optional<double> kx;
  std::optional<double> ka;
};

struct ExperimentRecord {
  Scheme scheme = Scheme::S1;
  int p = 0;
  int d = 0;
  double h = 0.0;
  int n = 0;
  double epsilon_requested = 0.0;
  double epsilon0 = 0.0;
  double srf = 0.0;
  std::uint64_t seed = 0;
  std::vector<NodeOutcome> nodes;
  /// Empty on a completed recovery, otherwise the failure kind.
  std::string failure;

  bool all_success() const noexcept;
};

/// 1 / (N Delta) with Delta = h / ((p - 1) 2 pi) the normalized cluster gap.
double super_resolution_factor(int p, double h, int n);

/// Builds the clustered signal, samples it under the scheme, recovers with
/// Matrix Pencil at L = ceil(N/2) and scores every node. Estimator failures
/// come back as a record with every success flag false.
ExperimentRecord single_experiment(const ExperimentSetup& setup);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepSpec {
  int p = 2;
  int d = 3;
  Range h{3e-4, 1e-2};
  Range n{256, 512};
  Range epsilon{1e-10, 1e-6};
  int trials = 500;
  Scheme scheme = Scheme::S1;
  std::uint64_t base_seed = 0;
  NoiseModel noise = NoiseModel::Disk;
};

/// Ranges used for the amplification-factor figures.
SweepSpec amplification_defaults(int p, int d, Scheme scheme);
/// Ranges used for the phase-transition figures; `target` > 0 selects the
/// single-node variant.
SweepSpec phase_defaults(int p, int d, int target = 0);

/// Draws (h, N, epsilon) log-uniformly per trial from a stream derived from
/// (base_seed, trial). Records are ordered by trial index.
std::vector<ExperimentRecord> amplification_sweep(const SweepSpec& spec,
                                                  Execution exec = default_execution());

/// Setup of trial `index`, exactly as the sweep runs it.
ExperimentSetup sweep_trial(const SweepSpec& spec, int index);

enum class Factor { Node, Amplitude };
enum class NodeClass { Cluster, NonCluster };

/// OLS of log K against log SRF over successful nodes of one class.
LineFit fit_loglog_slope(const std::vector<ExperimentRecord>& records, Factor factor,
                         NodeClass node_class, int min_points = 10);

struct AmplificationFits {
  LineFit cluster_node;
  LineFit cluster_amplitude;
  LineFit noncluster_node;
  LineFit noncluster_amplitude;
};

AmplificationFits fit_amplification(const std::vector<ExperimentRecord>& records);

/// Success indicator of a record: all nodes, or only node `target` (1-based).
bool record_success(const ExperimentRecord& r, int target = 0);

/// Logistic boundary fit on (SRF, requested epsilon, success).
PhaseBoundaryFit fit_phase_transition(const std::vector<ExperimentRecord>& records,
                                      int target = 0);

struct PhaseSweepResult {
  std::vector<ExperimentRecord> records;
  PhaseBoundaryFit fit;
};

PhaseSweepResult phase_transition_sweep(const SweepSpec& spec, int target = 0,
                                        Execution exec = default_execution());

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kCsvHeader =
    "scheme,p,d,h,N,eps_req,eps0,srf,node_index,node_class,e,succ,Kx,Ka,seed";

/// Metadata as "# key=value" lines, then the header, then one row per node.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               const Metadata& meta = {});
/// First line {"meta": {...}}, then one object per node row.
void write_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records,
                 const Metadata& meta = {});

/// Shortest decimal form that round-trips.
std::string format_double(double v);

}  // namespace spikesr
