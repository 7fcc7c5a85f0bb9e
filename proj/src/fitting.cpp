#include "spikesr/fitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "spikesr/error.hpp"

namespace spikesr {

LineFit fit_line(std::span<const double> x, std::span<const double> y, int min_points) {
  require(x.size() == y.size(), "fit needs equally many x and y values");
  const int n = static_cast<int>(x.size());
  if (n < std::max(min_points, 2))
    throw Error(ErrorKind::InsufficientData,
                "need at least " + std::to_string(std::max(min_points, 2)) + " points, got " +
                    std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::DegenerateFit, "x values are all equal");

  LineFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  fit.residual_std = n > 2 ? std::sqrt(ssr / (n - 2)) : 0.0;
  return fit;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y, int min_points) {
  require(x.size() == y.size(), "fit needs equally many x and y values");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  return fit_line(lx, ly, min_points);
}

PhaseBoundaryFit fit_phase_boundary(std::span<const double> srf, std::span<const double> eps,
                                    const std::vector<bool>& success) {
  require(srf.size() == eps.size() && srf.size() == success.size(),
          "phase fit inputs must have equal length");
  const auto n = static_cast<Eigen::Index>(srf.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  int wins = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    require(srf[i] > 0.0 && eps[i] > 0.0, "phase fit needs positive SRF and epsilon");
    X(i, 0) = 1.0;
    X(i, 1) = std::log(srf[i]);
    X(i, 2) = std::log(eps[i]);
    y(i) = success[i] ? 1.0 : 0.0;
    wins += success[i] ? 1 : 0;
  }
  if (n < 3) throw Error(ErrorKind::InsufficientData, "phase fit needs at least 3 trials");
  if (wins == 0 || wins == n)
    throw Error(ErrorKind::DegenerateFit, "all trials share one outcome");

  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  PhaseBoundaryFit fit;
  fit.n = static_cast<int>(n);
  fit.success_rate = static_cast<double>(wins) / static_cast<double>(n);
  bool converged = false;
  for (int it = 1; it <= 100 && !converged; ++it) {
    const Eigen::VectorXd eta = X * beta;
    Eigen::VectorXd prob(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      prob(i) = 1.0 / (1.0 + std::exp(-eta(i)));
      w(i) = std::max(prob(i) * (1.0 - prob(i)), 1e-12);
    }
    const Eigen::Matrix3d info = X.transpose() * w.asDiagonal() * X;
    const Eigen::Vector3d grad = X.transpose() * (y - prob);
    const Eigen::Vector3d step = info.ldlt().solve(grad);
    if (!step.allFinite()) break;
    beta += step;
    fit.iterations = it;
    converged = step.norm() < 1e-10 * (1.0 + beta.norm());
  }
  if (!converged || !beta.allFinite() || beta.norm() > 1e6 || beta(2) == 0.0)
    throw Error(ErrorKind::DegenerateFit, "logistic regression did not converge");

  fit.b0 = beta(0);
  fit.b_srf = beta(1);
  fit.b_eps = beta(2);
  fit.slope = -beta(1) / beta(2);
  fit.intercept = -beta(0) / beta(2);
  return fit;
}

}  // namespace spikesr
