#include "spikesr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spikesr/error.hpp"
#include "spikesr/rng.hpp"

namespace spikesr {

SpikeTrain::SpikeTrain(CVector amplitudes, RVector nodes)
    : amplitudes_(std::move(amplitudes)), nodes_(std::move(nodes)) {
  require(!nodes_.empty(), "spike train needs at least one node");
  require(amplitudes_.size() == nodes_.size(), "amplitude/node count mismatch");
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    require(std::isfinite(nodes_[j]), "non-finite node");
    if (j > 0) require(nodes_[j - 1] < nodes_[j], "nodes must be strictly increasing");
  }
}

double SpikeTrain::max_norm() const noexcept {
  double m = 0.0;
  for (const auto& a : amplitudes_) m = std::max(m, std::abs(a));
  for (double x : nodes_) m = std::max(m, std::abs(x));
  return m;
}

void ClusterGeometry::validate() const {
  require(p >= 2 && p <= d, "cluster size must satisfy 2 <= p <= d");
  require(h > 0.0 && h <= T, "cluster extent must satisfy 0 < h <= T");
  require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  require(kappa >= 1 && kappa <= d - p + 1, "kappa must lie in [1, d - p + 1]");
}

ClusterGeometry experiment_geometry(int p, int d, double h) {
  ClusterGeometry g;
  g.p = p;
  g.d = d;
  g.h = h;
  g.T = kPi;
  g.tau = 1.0 / (p - 1);
  g.eta = (kPi - h) / (kPi * (d - p + 1));
  g.kappa = 1;
  return g;
}

cplx fourier_at(const SpikeTrain& f, double s) {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f.amplitude(j) * std::polar(1.0, -kTwoPi * s * f.node(j));
  return acc;
}

CVector clean_samples(const SpikeTrain& f, int n) {
  require(n >= 1, "sample count must be positive");
  CVector out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = fourier_at(f, -static_cast<double>(k));
  return out;
}

SpectralSamples sample_spectrum(const SpikeTrain& f, int n, double noise_bound,
                                std::uint64_t seed, NoiseModel model) {
  require(noise_bound >= 0.0, "noise bound must be non-negative");
  SpectralSamples out;
  out.values = clean_samples(f, n);
  out.noise_bound = noise_bound;
  if (noise_bound == 0.0) return out;

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (auto& v : out.values) {
    cplx noise;
    if (model == NoiseModel::Disk) {
      const double r = noise_bound * unit(rng);
      const double theta = kTwoPi * unit(rng);
      noise = std::polar(r, theta);
    } else {
      noise = {noise_bound * (2.0 * unit(rng) - 1.0), 0.0};
    }
    const cplx noisy = v + noise;
    worst = std::max(worst, std::abs(noisy - v));
    v = noisy;
  }
  out.actual_noise = worst;
  return out;
}

CVector moments(const SpikeTrain& f, int count) {
  require(count >= 1, "moment count must be positive");
  CVector out(static_cast<std::size_t>(count), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < f.size(); ++j) {
    double power = 1.0;
    for (int k = 0; k < count; ++k) {
      out[k] += f.amplitude(j) * power;
      power *= f.node(j);
    }
  }
  return out;
}

RVector make_clustered_nodes(int p, int d, double h) {
  require(p >= 2 && d >= p, "need 2 <= p <= d");
  if (!(h > 0.0 && h < kPi))
    throw Error(ErrorKind::InvalidArgument, "cluster extent h must lie in (0, pi)");
  const double gap = h / (p - 1);
  RVector x(static_cast<std::size_t>(d));
  for (int j = 0; j < p; ++j) x[j] = j * gap;
  const double tail = (kPi - (p - 1) * gap) / (d - p + 1);
  for (int j = 1; j <= d - p; ++j) x[p + j - 1] = (p - 1) * gap + j * tail;
  return x;
}

RVector normalized_clustered_nodes(int p, int d, double h) {
  RVector x = make_clustered_nodes(p, d, h);
  for (double& v : x) v /= kTwoPi;
  return x;
}

ClusterGeometry normalized_geometry(int p, int d, double h) {
  ClusterGeometry g = experiment_geometry(p, d, h);
  g.h = h / kTwoPi;
  g.T = 0.5;
  return g;
}

bool validate_cluster(std::span<const double> nodes, const ClusterGeometry& g, double rel_tol) {
  if (static_cast<int>(nodes.size()) != g.d) return false;
  const auto lo = [&](double bound) { return bound * (1.0 - rel_tol); };
  const auto hi = [&](double bound) { return bound * (1.0 + rel_tol); };
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = j + 1; k < nodes.size(); ++k) {
      const double dist = std::abs(nodes[j] - nodes[k]);
      if (g.is_cluster_node(j) && g.is_cluster_node(k)) {
        if (dist < lo(g.tau * g.h) || dist > hi(g.h)) return false;
      } else if (dist < lo(g.eta * g.T) || dist > hi(g.T)) {
        return false;
      }
    }
  }
  return true;
}

SpikeTrain shift(const SpikeTrain& f, double alpha) {
  RVector x = f.nodes();
  for (double& v : x) v -= alpha;
  return SpikeTrain(f.amplitudes(), std::move(x));
}

SpikeTrain scale(const SpikeTrain& f, double T) {
  require(T > 0.0, "scale factor must be positive");
  RVector x = f.nodes();
  for (double& v : x) v /= T;
  return SpikeTrain(f.amplitudes(), std::move(x));
}

double wrap_half(double x) noexcept {
  double w = x - std::ceil(x - 0.5);
  if (w <= -0.5) w += 1.0;
  return w;
}

double circular_distance(double x, double y) noexcept {
  const double t = x - y;
  return std::abs(t - std::nearbyint(t));
}

}  // namespace spikesr
