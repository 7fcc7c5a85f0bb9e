#include "spikesr/prony.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "spikesr/error.hpp"

namespace spikesr {

namespace {

double principal_arg(cplx z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

}  // namespace

CVector prony_map(std::span<const cplx> amplitudes, std::span<const cplx> nodes, int count) {
  require(count >= 1, "prony_map needs count >= 1");
  require(amplitudes.size() == nodes.size(), "amplitude/node count mismatch");
  CVector out(static_cast<std::size_t>(count), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    cplx power{1.0, 0.0};
    for (int k = 0; k < count; ++k) {
      out[k] += amplitudes[j] * power;
      power *= nodes[j];
    }
  }
  return out;
}

CVector prony_polynomial(std::span<const cplx> roots) {
  CVector c{cplx{1.0, 0.0}};
  for (const cplx& r : roots) {
    CVector next(c.size() + 1, cplx{0.0, 0.0});
    for (std::size_t l = 0; l < c.size(); ++l) {
      next[l + 1] += c[l];
      next[l] -= r * c[l];
    }
    c = std::move(next);
  }
  return c;
}

CVector polynomial_roots(std::span<const cplx> coeffs) {
  require(coeffs.size() >= 2, "polynomial must have degree >= 1");
  const auto deg = static_cast<Eigen::Index>(coeffs.size() - 1);
  const cplx lead = coeffs.back();
  require(lead != cplx{0.0, 0.0}, "leading coefficient must be nonzero");
  if (deg == 1) return {-coeffs[0] / lead};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::EigenFailure, "companion eigenvalues did not converge");
  const auto& ev = solver.eigenvalues();
  return CVector(ev.data(), ev.data() + ev.size());
}

PronySolution prony_solve(std::span<const cplx> mu, int d, const PronyOptions& opts) {
  require(d >= 1, "model order must be positive");
  require(mu.size() == static_cast<std::size_t>(2 * d), "prony_solve needs exactly 2d moments");

  Eigen::MatrixXcd hankel(d, d + 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= d; ++j) hankel(i, j) = mu[i + j];

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(d - 1) < opts.rank_tolerance * sv(0))
    throw Error(ErrorKind::DegenerateSystem, "Hankel null space is not one-dimensional");

  Eigen::VectorXcd c = svd.matrixV().col(d);
  if (std::abs(c(d)) < opts.rank_tolerance * c.norm())
    throw Error(ErrorKind::DegenerateSystem, "Prony polynomial has vanishing leading coefficient");
  c /= c(d);

  CVector coeffs(c.data(), c.data() + c.size());
  CVector z = polynomial_roots(coeffs);

  double scale = 1.0;
  for (const auto& v : z) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) <= opts.repeat_tolerance * scale)
        throw Error(ErrorKind::RepeatedRoots, "recovered nodes coincide");

  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double pa = principal_arg(z[a]);
    const double pb = principal_arg(z[b]);
    if (pa != pb) return pa < pb;
    return std::abs(z[a]) < std::abs(z[b]);
  });

  Eigen::MatrixXcd vander(2 * d, d);
  for (int j = 0; j < d; ++j) {
    cplx power{1.0, 0.0};
    for (int k = 0; k < 2 * d; ++k) {
      vander(k, j) = power;
      power *= z[order[j]];
    }
  }
  Eigen::VectorXcd rhs(2 * d);
  for (int k = 0; k < 2 * d; ++k) rhs(k) = mu[k];
  const Eigen::VectorXcd a = vander.colPivHouseholderQr().solve(rhs);

  PronySolution sol;
  sol.amplitudes.assign(a.data(), a.data() + a.size());
  sol.nodes.reserve(z.size());
  for (std::size_t idx : order) sol.nodes.push_back(z[idx]);
  return sol;
}

double recurrence_residual(std::span<const cplx> nu, std::span<const cplx> prony_coeffs) {
  require(prony_coeffs.size() >= 2, "recurrence needs a polynomial of degree >= 1");
  const std::size_t width = prony_coeffs.size();
  require(nu.size() >= width, "sequence shorter than the recurrence window");
  double worst = 0.0;
  for (std::size_t k = 0; k + width <= nu.size(); ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < width; ++l) acc += nu[k + l] * prony_coeffs[l];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace spikesr
