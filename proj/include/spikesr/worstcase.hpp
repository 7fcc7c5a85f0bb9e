#pragma once

// Worst-case perturbation: shift the (2p-1)-th moment of the centered,
// blown-up cluster by epsilon, keep the lower moments, and re-solve the
// order-p Prony system.

#include <variant>
#include <vector>

#include "spikesr/execution.hpp"
#include "spikesr/signal.hpp"

namespace spikesr {

struct WorstCaseOptions {
  /// Cluster coordinates are multiplied by this factor (Omega) before the
  /// moment shift, so epsilon is measured at bandwidth Omega.
  double blowup = 1.0;
  double imag_tolerance = 1e-9;
  /// Grid for the reported spectral deviation on [-blowup, blowup].
  int grid_points = 1001;
};

struct WorstCaseReport {
  SpikeTrain perturbed;
  double center = 0.0;
  /// Moments below are of the centered, blown-up cluster.
  double moment_scale = 0.0;  // max_k |g_k|, k = 0..2p-1
  double moment_match_error = 0.0;
  double last_moment_delta = 0.0;
  double node_displacement = 0.0;
  double amplitude_displacement = 0.0;
  double spectral_deviation = 0.0;
};

/// Throws EpsilonTooLarge when the perturbed system has no distinct real
/// solution. epsilon = 0 returns F unchanged.
WorstCaseReport worst_case_signal(const SpikeTrain& f, const ClusterGeometry& geometry,
                                  double epsilon, const WorstCaseOptions& opts = {});

/// max over an equispaced grid on [-Omega, Omega] of |F(F_eps)(s) - F(F)(s)|.
double verify_spectral_deviation(const SpikeTrain& f, const SpikeTrain& f_eps, double omega,
                                 int grid_points, Execution exec = default_execution());

struct FixedEpsilon {
  double value = 0.0;
};
/// epsilon = c (Omega tau h)^{2p-1}
struct ProportionalEpsilon {
  double c = 0.0;
};
using EpsilonRule = std::variant<FixedEpsilon, ProportionalEpsilon>;

struct ProbeRow {
  double h = 0.0;  // cluster extent in the [0, pi] layout
  double srf = 0.0;
  double epsilon = 0.0;
  double node_displacement = 0.0;
  double amplitude_displacement = 0.0;
  /// Displacements per unit epsilon: node * Omega / eps, amplitude / eps.
  double node_factor = 0.0;
  double amplitude_factor = 0.0;
};

/// Runs the worst-case construction for each h on the clustered layout
/// (divided by 2 pi, amplitudes alternating +-1) at bandwidth Omega.
std::vector<ProbeRow> displacement_scaling_probe(int p, int d, std::span<const double> h_values,
                                                 double omega, const EpsilonRule& rule,
                                                 Execution exec = default_execution());

}  // namespace spikesr
