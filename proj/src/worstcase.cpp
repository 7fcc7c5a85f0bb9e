#include "spikesr/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "spikesr/error.hpp"
#include "spikesr/prony.hpp"

namespace spikesr {

namespace {

// Moments of sum_j a_j u_j^k scaled back by s^k, in extended precision.
std::vector<std::complex<long double>> scaled_moments(const CVector& a, const RVector& u,
                                                      double s, int count) {
  std::vector<std::complex<long double>> m(static_cast<std::size_t>(count));
  for (std::size_t j = 0; j < u.size(); ++j) {
    long double power = 1.0L;
    for (int k = 0; k < count; ++k) {
      m[k] += std::complex<long double>(a[j]) * power;
      power *= u[j];
    }
  }
  long double sk = 1.0L;
  for (auto& v : m) {
    v *= sk;
    sk *= s;
  }
  return m;
}

double deviation_serial(const SpikeTrain& f, const SpikeTrain& g, double omega, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = -omega + 2.0 * omega * i / (n - 1);
    worst = std::max(worst, std::abs(fourier_at(g, s) - fourier_at(f, s)));
  }
  return worst;
}

double deviation_openmp(const SpikeTrain& f, const SpikeTrain& g, double omega, int n) {
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (int i = 0; i < n; ++i) {
    const double s = -omega + 2.0 * omega * i / (n - 1);
    worst = std::max(worst, std::abs(fourier_at(g, s) - fourier_at(f, s)));
  }
  return worst;
}

}  // namespace

double verify_spectral_deviation(const SpikeTrain& f, const SpikeTrain& f_eps, double omega,
                                 int grid_points, Execution exec) {
  require(grid_points >= 2, "spectral grid needs at least 2 points");
  require(omega > 0.0, "Omega must be positive");
  return exec == Execution::OpenMP ? deviation_openmp(f, f_eps, omega, grid_points)
                                   : deviation_serial(f, f_eps, omega, grid_points);
}

WorstCaseReport worst_case_signal(const SpikeTrain& f, const ClusterGeometry& geometry,
                                  double epsilon, const WorstCaseOptions& opts) {
  geometry.validate();
  require(static_cast<int>(f.size()) == geometry.d, "signal size must equal d");
  require(epsilon >= 0.0 && std::isfinite(epsilon), "epsilon must be finite and non-negative");
  require(opts.blowup > 0.0, "blowup must be positive");
  const int p = geometry.p;
  const auto first = static_cast<std::size_t>(geometry.kappa - 1);

  CVector a(f.amplitudes().begin() + first, f.amplitudes().begin() + first + p);
  for (const auto& v : a)
    require(v.imag() == 0.0, "cluster amplitudes must be real");

  const double mu = 0.5 * (f.node(first) + f.node(first + p - 1));
  // Centered, blown-up cluster rescaled to unit half-width: y = s u.
  const double s = 0.5 * (f.node(first + p - 1) - f.node(first)) * opts.blowup;
  require(s > 0.0, "cluster has zero extent");
  RVector u(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) u[j] = (f.node(first + j) - mu) * opts.blowup / s;

  const auto g = scaled_moments(a, u, s, 2 * p);
  double moment_scale = 0.0;
  for (const auto& v : g) moment_scale = std::max(moment_scale, static_cast<double>(std::abs(v)));

  if (epsilon == 0.0) {
    WorstCaseReport same{f};
    same.center = mu;
    same.moment_scale = moment_scale;
    return same;
  }

  CVector g_unit = moments(SpikeTrain(a, u), 2 * p);
  g_unit.back() += epsilon / std::pow(s, 2 * p - 1);

  PronySolution sol;
  try {
    sol = prony_solve(g_unit, p);
  } catch (const Error& e) {
    throw Error(ErrorKind::EpsilonTooLarge, std::string("perturbed Prony system: ") + e.what());
  }
  for (const auto& z : sol.nodes)
    if (std::abs(z.imag()) > opts.imag_tolerance)
      throw Error(ErrorKind::EpsilonTooLarge, "perturbed cluster nodes are not real");

  std::vector<std::size_t> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return sol.nodes[i].real() < sol.nodes[j].real(); });
  RVector u_new(static_cast<std::size_t>(p));
  CVector a_new(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    u_new[j] = sol.nodes[order[j]].real();
    a_new[j] = sol.amplitudes[order[j]];
  }

  RVector x = f.nodes();
  CVector amps = f.amplitudes();
  for (int j = 0; j < p; ++j) {
    x[first + j] = u_new[j] * s / opts.blowup + mu;
    amps[first + j] = a_new[j];
  }
  for (std::size_t j = 1; j < x.size(); ++j)
    if (!(x[j - 1] < x[j]))
      throw Error(ErrorKind::EpsilonTooLarge, "perturbed nodes collide or change order");

  WorstCaseReport r{SpikeTrain(std::move(amps), std::move(x))};
  r.center = mu;
  r.moment_scale = moment_scale;
  const auto g_new = scaled_moments(a_new, u_new, s, 2 * p);
  for (int k = 0; k + 1 < 2 * p; ++k)
    r.moment_match_error = std::max(r.moment_match_error, static_cast<double>(std::abs(g_new[k] - g[k])));
  r.last_moment_delta = static_cast<double>((g_new.back() - g.back()).real());
  for (int j = 0; j < p; ++j) {
    r.node_displacement = std::max(r.node_displacement, std::abs(u_new[j] - u[j]) * s / opts.blowup);
    r.amplitude_displacement = std::max(r.amplitude_displacement, std::abs(a_new[j] - a[j]));
  }
  if (opts.grid_points >= 2)
    r.spectral_deviation =
        verify_spectral_deviation(f, r.perturbed, opts.blowup, opts.grid_points, Execution::Serial);
  return r;
}

std::vector<ProbeRow> displacement_scaling_probe(int p, int d, std::span<const double> h_values,
                                                 double omega, const EpsilonRule& rule,
                                                 Execution exec) {
  require(omega > 0.0, "Omega must be positive");
  const auto n = static_cast<std::ptrdiff_t>(h_values.size());
  std::vector<ProbeRow> rows(h_values.size());
  std::vector<std::exception_ptr> errors(h_values.size());

  const auto run = [&](std::ptrdiff_t i) {
    try {
      const double h = h_values[i];
      const ClusterGeometry g = normalized_geometry(p, d, h);
      const RVector x = normalized_clustered_nodes(p, d, h);
      CVector a(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) a[j] = (j % 2 == 0) ? 1.0 : -1.0;
      const double rayleigh = omega * g.tau * g.h;
      const double eps = std::holds_alternative<FixedEpsilon>(rule)
                             ? std::get<FixedEpsilon>(rule).value
                             : std::get<ProportionalEpsilon>(rule).c * std::pow(rayleigh, 2 * p - 1);
      WorstCaseOptions opts;
      opts.blowup = omega;
      opts.grid_points = 0;
      const WorstCaseReport r = worst_case_signal(SpikeTrain(a, x), g, eps, opts);
      ProbeRow& row = rows[i];
      row.h = h;
      row.srf = 1.0 / rayleigh;
      row.epsilon = eps;
      row.node_displacement = r.node_displacement;
      row.amplitude_displacement = r.amplitude_displacement;
      row.node_factor = r.node_displacement * omega / eps;
      row.amplitude_factor = r.amplitude_displacement / eps;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (exec == Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) run(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) run(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace spikesr
