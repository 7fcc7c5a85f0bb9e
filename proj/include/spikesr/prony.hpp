#pragma once

// Prony map, Prony's method for the algebraic system
//   sum_j a_j z_j^k = mu_k,  k = 0..2d-1,
// and the linear recurrence satisfied by its moment sequences.

#include <span>

#include "spikesr/signal.hpp"

namespace spikesr {

struct PronySolution {
  CVector amplitudes;
  CVector nodes;
};

struct PronyOptions {
  /// sigma_{d-1} / sigma_0 of the d x (d+1) Hankel below this means the null
  /// space is not one-dimensional.
  double rank_tolerance = 1e-10;
  /// Relative separation below which two recovered nodes count as repeated.
  /// A double root splits by about sqrt(machine epsilon) under roundoff.
  double repeat_tolerance = 1e-7;
};

/// PM_k = sum_j a_j w_j^k for k = 0..count-1.
CVector prony_map(std::span<const cplx> amplitudes, std::span<const cplx> nodes, int count);

/// Monic coefficients (c_0, ..., c_d), c_d = 1, of prod_j (z - z_j).
CVector prony_polynomial(std::span<const cplx> roots);

/// Roots of sum_l c_l z^l via the eigenvalues of the companion matrix.
CVector polynomial_roots(std::span<const cplx> coeffs);

/// Solves the Prony system of order d from mu_0..mu_{2d-1}. Nodes are sorted
/// by principal argument, then modulus.
PronySolution prony_solve(std::span<const cplx> mu, int d, const PronyOptions& opts = {});

/// max_k |sum_l nu_{k+l} c_l| over every full window.
double recurrence_residual(std::span<const cplx> nu, std::span<const cplx> prony_coeffs);

}  // namespace spikesr
