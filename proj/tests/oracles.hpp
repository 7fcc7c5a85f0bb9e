#pragma once

// Test-side reference computations. Each is a direct evaluation of a
// definition, written without the library's algorithms.

#include <cmath>
#include <complex>
#include <vector>

#include "spikesr/signal.hpp"

namespace oracle {

using cld = std::complex<long double>;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// sum_j a_j exp(-2 pi i s x_j) in long double
inline std::complex<double> fourier(const std::vector<std::complex<double>>& a,
                                    const std::vector<double>& x, double s) {
  cld acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const long double t = -2.0L * kPiL * s * x[j];
    acc += cld(a[j]) * cld(std::cos(t), std::sin(t));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline std::complex<double> moment(const std::vector<std::complex<double>>& a,
                                   const std::vector<double>& x, int k) {
  cld acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += cld(a[j]) * std::pow((long double)x[j], k);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// min over integer shifts in a window, no rounding functions
inline double circular_distance(double x, double y) {
  double best = 1e300;
  for (int n = -20; n <= 20; ++n) best = std::min(best, std::abs(x - y - n));
  return best;
}

// Complex matrix inverse by Gauss-Jordan with partial pivoting.
inline std::vector<std::vector<cld>> inverse(std::vector<std::vector<cld>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<cld>> inv(n, std::vector<cld>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    const cld d = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const cld f = m[r][c];
      if (f == cld(0)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Is lambda in the Sigma set of two nodes at distance delta? Direct angle test.
inline bool in_sigma(double lambda, double delta, double alpha) {
  const long double t = 2.0L * kPiL * lambda * delta;
  const long double wrapped = std::remainder(t, 2.0L * kPiL);
  return std::abs(wrapped) <= alpha;
}

// Two-node worst case with amplitudes (1, -1) at -c, c: the perturbed pair is
// +-r with r^2 = c^2 - eps / (2c) and amplitudes (c/r, -c/r).
struct PairPerturbation {
  double r;
  double beta;
};
inline PairPerturbation pair_worst_case(double c, double eps) {
  const double r = std::sqrt(c * c - eps / (2.0 * c));
  return {r, c / r};
}

}  // namespace oracle
