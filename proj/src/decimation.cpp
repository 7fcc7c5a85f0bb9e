#include "spikesr/decimation.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <complex>

#include "spikesr/error.hpp"

namespace spikesr {

double angular_distance(cplx alpha, cplx beta) {
  if (alpha == cplx{0.0, 0.0} || beta == cplx{0.0, 0.0})
    throw Error(ErrorKind::InvalidArgument, "angular distance needs nonzero arguments");
  return std::abs(std::arg(alpha / beta));
}

IntervalSet sigma_intervals(double delta, double alpha, const Interval& window) {
  require(delta > 0.0, "node distance must be positive");
  require(alpha > 0.0 && alpha <= kPi, "alpha must lie in (0, pi]");
  require(window.lo <= window.hi, "window endpoints out of order");
  const double half = alpha / (kTwoPi * delta);
  const auto first = static_cast<long long>(std::floor((window.lo - half) * delta));
  const auto last = static_cast<long long>(std::ceil((window.hi + half) * delta));
  std::vector<Interval> pieces;
  for (long long l = first; l <= last; ++l) {
    const double c = static_cast<double>(l) / delta;
    pieces.push_back({c - half, c + half});
  }
  return IntervalSet(std::move(pieces)).intersect(window);
}

Interval blowup_range(int d, double omega) {
  require(d >= 1 && omega > 0.0, "blowup range needs d >= 1 and Omega > 0");
  return {omega / (2.0 * (2 * d - 1)), omega / (2 * d - 1)};
}

IntervalSet admissible_lambdas(std::span<const double> nodes, const ClusterGeometry& geometry,
                               double omega) {
  geometry.validate();
  require(static_cast<int>(nodes.size()) == geometry.d, "node count must equal d");
  require(omega * geometry.h <= (2 * geometry.d - 1) / 2.0,
          "need Omega h <= (2d-1)/2 for the cluster condition to hold");
  const Interval range = blowup_range(geometry.d, omega);
  const double alpha = 1.0 / (geometry.d * geometry.d);

  IntervalSet excluded;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t k = j + 1; k < nodes.size(); ++k) {
      if (geometry.is_cluster_node(j) && geometry.is_cluster_node(k)) continue;
      const double delta = std::abs(nodes[j] - nodes[k]);
      excluded = excluded.unite(sigma_intervals(delta, alpha, range).padded(kExclusionPad));
    }
  IntervalSet admissible = excluded.complement_in(range);
  if (admissible.empty())
    throw Error(ErrorKind::EmptyAdmissibleSet, "every blowup factor in range is excluded");
  return admissible;
}

AdmissibilityCheck verify_admissible(std::span<const double> nodes,
                                     const ClusterGeometry& geometry, double lambda,
                                     double angle_tolerance) {
  const double alpha = 1.0 / (geometry.d * geometry.d);
  const double cluster_floor = kTwoPi * lambda * geometry.tau * geometry.h;
  AdmissibilityCheck check{true, true};
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t k = j + 1; k < nodes.size(); ++k) {
      const double angle = angular_distance(std::polar(1.0, kTwoPi * lambda * nodes[j]),
                                            std::polar(1.0, kTwoPi * lambda * nodes[k]));
      if (geometry.is_cluster_node(j) && geometry.is_cluster_node(k)) {
        if (angle < cluster_floor - angle_tolerance) check.cluster_ok = false;
      } else if (angle < alpha - angle_tolerance) {
        check.noncluster_ok = false;
      }
    }
  return check;
}

Eigen::MatrixXcd confluent_vandermonde(std::span<const cplx> z) {
  const auto d = static_cast<Eigen::Index>(z.size());
  require(d >= 1, "need at least one node");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    cplx power{1.0, 0.0};  // z^{k-1} inside the loop
    u(0, j) = 1.0;
    for (Eigen::Index k = 1; k < 2 * d; ++k) {
      u(k, d + j) = static_cast<double>(k) * power;
      power *= z[j];
      u(k, j) = power;
    }
  }
  return u;
}

double JacobianBoundReport::worst_ratio() const noexcept {
  double worst = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    worst = std::max(worst, amplitude_row_norm[j] / amplitude_row_bound[j]);
    worst = std::max(worst, node_row_norm[j] / node_row_bound[j]);
  }
  return worst;
}

JacobianBoundReport gautschi_bounds(std::span<const cplx> z) {
  const std::size_t d = z.size();
  require(d >= 1, "need at least one node");
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = j + 1; l < d; ++l)
      if (std::abs(z[j] - z[l]) < 1e-12)
        throw Error(ErrorKind::NearCoincidentNodes, "nodes closer than 1e-12");

  JacobianBoundReport r;
  for (std::size_t j = 0; j < d; ++j) {
    double dj = 0.0;
    double prod = 1.0;
    for (std::size_t l = 0; l < d; ++l) {
      if (l == j) continue;
      const double gap = std::abs(z[j] - z[l]);
      dj += 1.0 / gap;
      prod *= (1.0 + std::abs(z[l])) / gap;
    }
    const double gj = prod * prod;
    r.delta.push_back(dj);
    r.gamma.push_back(gj);
    r.amplitude_row_bound.push_back((1.0 + 2.0 * (1.0 + std::abs(z[j])) * dj) * gj);
    r.node_row_bound.push_back((1.0 + std::abs(z[j])) * gj);
  }

  // Inverse in extended precision; entries grow like Gamma_j.
  using cld = std::complex<long double>;
  using MatLd = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::MatrixXcd u = confluent_vandermonde(z);
  const MatLd u_ld = u.cast<cld>();
  const Eigen::PartialPivLU<MatLd> lu(u_ld);
  const MatLd inv = lu.inverse();
  for (std::size_t j = 0; j < d; ++j) {
    long double a = 0.0L;
    long double b = 0.0L;
    for (Eigen::Index k = 0; k < inv.cols(); ++k) {
      a += std::abs(inv(static_cast<Eigen::Index>(j), k));
      b += std::abs(inv(static_cast<Eigen::Index>(d + j), k));
    }
    r.amplitude_row_norm.push_back(static_cast<double>(a));
    r.node_row_norm.push_back(static_cast<double>(b));
  }
  const auto one_norm = [](const auto& m) {
    long double best = 0.0L;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      long double s = 0.0L;
      for (Eigen::Index rr = 0; rr < m.rows(); ++rr) s += std::abs(m(rr, c));
      best = std::max(best, s);
    }
    return best;
  };
  r.condition_number = static_cast<double>(one_norm(u_ld) * one_norm(inv));
  return r;
}

std::vector<ConditionFactors> predicted_condition_numbers(const ClusterGeometry& geometry,
                                                          double omega) {
  geometry.validate();
  require(omega > 0.0, "Omega must be positive");
  const double rayleigh = omega * geometry.tau * geometry.h;
  const int p = geometry.p;
  std::vector<ConditionFactors> out;
  for (int j = 0; j < geometry.d; ++j) {
    if (geometry.is_cluster_node(static_cast<std::size_t>(j)))
      out.push_back({std::pow(rayleigh, 2 - 2 * p) / omega, std::pow(rayleigh, 1 - 2 * p)});
    else
      out.push_back({1.0 / omega, 1.0});
  }
  return out;
}

}  // namespace spikesr
