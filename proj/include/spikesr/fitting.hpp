#pragma once

#include <span>
#include <vector>

namespace spikesr {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double residual_std = 0.0;
  int n = 0;
};

/// Ordinary least squares y = slope x + intercept. Throws InsufficientData
/// below min_points and DegenerateFit when x is constant.
LineFit fit_line(std::span<const double> x, std::span<const double> y, int min_points = 2);

/// fit_line on (log x, log y) over the pairs with x > 0 and y > 0.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y, int min_points = 10);

struct PhaseBoundaryFit {
  // P(success) = sigmoid(b0 + b_srf log SRF + b_eps log eps)
  double b0 = 0.0;
  double b_srf = 0.0;
  double b_eps = 0.0;
  /// Boundary log eps_crit = slope log SRF + intercept at P = 1/2.
  double slope = 0.0;
  double intercept = 0.0;
  double success_rate = 0.0;
  int iterations = 0;
  int n = 0;
};

/// Logistic regression by iteratively reweighted least squares. Throws
/// DegenerateFit when every outcome is the same or the fit diverges.
PhaseBoundaryFit fit_phase_boundary(std::span<const double> srf, std::span<const double> eps,
                                    const std::vector<bool>& success);

}  // namespace spikesr
