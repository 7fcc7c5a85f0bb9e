#pragma once

// Spike-train signal model F(x) = sum_j a_j delta(x - x_j), its Fourier
// transform and algebraic moments, clustered node layouts, and the shift /
// scale normalization maps.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace spikesr {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A finite spike train with complex amplitudes and strictly increasing real
/// nodes. Construction validates the ordering.
class SpikeTrain {
 public:
  SpikeTrain(CVector amplitudes, RVector nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  const RVector& nodes() const noexcept { return nodes_; }
  cplx amplitude(std::size_t j) const { return amplitudes_.at(j); }
  double node(std::size_t j) const { return nodes_.at(j); }

  /// max(|a|_inf, |x|_inf)
  double max_norm() const noexcept;

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

 private:
  CVector amplitudes_;
  RVector nodes_;
};

/// Parameters of a (p, h, T, tau, eta)-clustered configuration. `kappa` is
/// the 1-based index of the first cluster node.
struct ClusterGeometry {
  int p = 2;
  int d = 2;
  double h = 0.0;
  double T = 1.0;
  double tau = 1.0;
  double eta = 1.0;
  int kappa = 1;

  /// Throws InvalidArgument when the parameter invariants do not hold.
  void validate() const;
  /// 0-based index test.
  bool is_cluster_node(std::size_t j) const noexcept {
    return static_cast<int>(j) + 1 >= kappa && static_cast<int>(j) + 1 < kappa + p;
  }
  double min_cluster_gap() const noexcept { return tau * h; }
};

/// Geometry used by make_clustered_nodes: T = pi, tau = 1/(p-1),
/// eta = (pi - h) / (pi (d - p + 1)), kappa = 1.
ClusterGeometry experiment_geometry(int p, int d, double h);

enum class NoiseModel {
  Disk,         // n = r e^{i theta}, r ~ U[0, eps], theta ~ U[0, 2 pi)
  RealUniform,  // n ~ U[-eps, eps], real
};

struct SpectralSamples {
  CVector values;
  double noise_bound = 0.0;
  double actual_noise = 0.0;

  std::size_t count() const noexcept { return values.size(); }
};

/// F(F)(s) = sum_j a_j exp(-2 pi i s x_j)
cplx fourier_at(const SpikeTrain& f, double s);

/// Clean unit-rate samples m_k = F(F)(-k), k = 0..n-1.
CVector clean_samples(const SpikeTrain& f, int n);

/// Noisy samples m_k + n_k with |n_k| <= noise_bound, deterministic in `seed`.
SpectralSamples sample_spectrum(const SpikeTrain& f, int n, double noise_bound,
                                std::uint64_t seed, NoiseModel model = NoiseModel::Disk);

/// Algebraic moments m_k = sum_j a_j x_j^k, k = 0..count-1.
CVector moments(const SpikeTrain& f, int count);

/// Node layout with p equispaced cluster nodes of total extent h starting at 0
/// and d - p non-cluster nodes equispaced up to pi. Throws for h >= pi.
RVector make_clustered_nodes(int p, int d, double h);

/// make_clustered_nodes divided by 2 pi, i.e. on [0, 1/2), ready for
/// unit-rate sampling.
RVector normalized_clustered_nodes(int p, int d, double h);
/// experiment_geometry after the same division: h / (2 pi), T = 1/2.
ClusterGeometry normalized_geometry(int p, int d, double h);

/// Checks both defining conditions of a clustered configuration.
bool validate_cluster(std::span<const double> nodes, const ClusterGeometry& geometry,
                      double rel_tol = 1e-12);

/// Subtracts alpha from every node.
SpikeTrain shift(const SpikeTrain& f, double alpha);
/// Divides every node by T > 0.
SpikeTrain scale(const SpikeTrain& f, double T);

/// Wraps x to (-1/2, 1/2].
double wrap_half(double x) noexcept;
/// min_n |x - y - n|
double circular_distance(double x, double y) noexcept;

}  // namespace spikesr
