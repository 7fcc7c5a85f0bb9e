#pragma once

// Decimation analysis: angular distance on the unit circle, the blowup sets
// Sigma of two nodes, admissible blowup factors Lambda(x), and the Gautschi
// row-norm bounds for the inverse confluent Vandermonde matrix.

#include <Eigen/Core>
#include <span>

#include "spikesr/interval_set.hpp"
#include "spikesr/signal.hpp"

namespace spikesr {

/// |Arg(alpha / beta)| in [0, pi], principal branch.
double angular_distance(cplx alpha, cplx beta);

/// { lambda in I : angle(e^{2 pi i lambda x_j}, e^{2 pi i lambda x_k}) <= alpha }
/// for two nodes at distance delta.
IntervalSet sigma_intervals(double delta, double alpha, const Interval& window);

/// Outward padding applied to excluded Sigma-sets before complementing.
inline constexpr double kExclusionPad = 1e-12;

/// The range [Omega / (2(2d-1)), Omega / (2d-1)] searched for blowup factors.
Interval blowup_range(int d, double omega);

/// Admissible blowup factors for nodes normalized to T = 1. Only the
/// non-cluster separation condition is enforced; the cluster condition holds
/// on the whole range when Omega h <= (2d-1)/2.
IntervalSet admissible_lambdas(std::span<const double> nodes, const ClusterGeometry& geometry,
                               double omega);

struct AdmissibilityCheck {
  bool noncluster_ok = false;
  bool cluster_ok = false;
  bool ok() const noexcept { return noncluster_ok && cluster_ok; }
};

/// Direct evaluation of both angular conditions at one lambda.
AdmissibilityCheck verify_admissible(std::span<const double> nodes,
                                     const ClusterGeometry& geometry, double lambda,
                                     double angle_tolerance = 1e-9);

/// U_{2d}(z): columns z_j^k followed by derivative columns k z_j^{k-1}.
Eigen::MatrixXcd confluent_vandermonde(std::span<const cplx> z);

struct JacobianBoundReport {
  RVector delta;
  RVector gamma;
  RVector amplitude_row_bound;
  RVector node_row_bound;
  /// l1 norms of rows j and d + j of the computed inverse.
  RVector amplitude_row_norm;
  RVector node_row_norm;
  /// 1-norm condition number of U_{2d}.
  double condition_number = 0.0;

  /// Largest measured/bound ratio over both blocks.
  double worst_ratio() const noexcept;
};

JacobianBoundReport gautschi_bounds(std::span<const cplx> z);

struct ConditionFactors {
  double node = 0.0;
  double amplitude = 0.0;
};

/// Scaling shapes (unit constants) of the minimax rates per node:
/// cluster (Omega^{-1} (Omega tau h)^{2-2p}, (Omega tau h)^{1-2p}),
/// non-cluster (Omega^{-1}, 1).
std::vector<ConditionFactors> predicted_condition_numbers(const ClusterGeometry& geometry,
                                                          double omega);

}  // namespace spikesr
