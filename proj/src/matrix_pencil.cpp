#include "spikesr/matrix_pencil.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "spikesr/error.hpp"

namespace spikesr {

HankelMatrix::HankelMatrix(std::span<const cplx> values, int pencil_param) {
  const int n = static_cast<int>(values.size());
  if (pencil_param < 1 || pencil_param > n - 1)
    throw Error(ErrorKind::InvalidArgument, "pencil parameter L must lie in [1, N-1], got L=" +
                                                std::to_string(pencil_param) +
                                                " N=" + std::to_string(n));
  const int rows = pencil_param + 1;
  const int cols = n - pencil_param;
  h_.resize(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) h_(i, j) = values[i + j];
}

HankelMatrix build_hankel(const SpectralSamples& samples, int pencil_param) {
  return HankelMatrix(samples.values, pencil_param);
}

int default_pencil_param(int n) {
  require(n >= 3, "need at least 3 samples");
  return (n + 1) / 2;
}

RecoveryResult mp_recover(const SpectralSamples& samples, int d, int pencil_param,
                          const PencilOptions& opts) {
  const int n = static_cast<int>(samples.count());
  require(d >= 1, "model order must be positive");
  require(n >= 2 * d, "need N >= 2d samples");
  require(pencil_param >= d && pencil_param <= n - d,
          "pencil parameter must satisfy d <= L <= N-d");

  const HankelMatrix hankel = build_hankel(samples, pencil_param);
  const Eigen::MatrixXcd a = hankel.upper();
  const Eigen::MatrixXcd b = hankel.lower();

  const unsigned flags = Eigen::ComputeThinU | Eigen::ComputeThinV;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd_a(a, flags);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd_b(b, flags);

  const auto u1 = svd_a.matrixU().leftCols(d);
  const auto v1 = svd_a.matrixV().leftCols(d);
  const Eigen::VectorXd s1 = svd_a.singularValues().head(d);
  const auto u2 = svd_b.matrixU().leftCols(d);
  const auto v2 = svd_b.matrixV().leftCols(d);
  const Eigen::VectorXd s2 = svd_b.singularValues().head(d);

  if (!(s2(0) > 0.0) || s2(d - 1) < opts.rank_tolerance * s2(0))
    throw Error(ErrorKind::RankDeficiency, "lower Hankel block has numerical rank below d");

  // Reduced pencil (A', B') with B' = Sigma_2 diagonal. The node estimates
  // are the z solving det(B' - z A') = 0, i.e. reciprocals of the
  // eigenvalues of Sigma_2^{-1} A'.
  const Eigen::MatrixXcd a_reduced =
      (u2.adjoint() * u1) * s1.asDiagonal() * (v1.adjoint() * v2);
  const Eigen::MatrixXcd pencil = s2.cwiseInverse().asDiagonal() * a_reduced;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(pencil, false);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorKind::EigenFailure, "reduced pencil eigenvalues did not converge");

  std::vector<std::pair<double, cplx>> roots;
  for (int j = 0; j < d; ++j) {
    const cplx lambda = eig.eigenvalues()(j);
    if (lambda == cplx{0.0, 0.0} || !std::isfinite(std::abs(lambda)))
      throw Error(ErrorKind::EigenFailure, "reduced pencil has an infinite eigenvalue");
    const cplx z = 1.0 / lambda;
    double angle = std::arg(z);
    if (angle <= -kPi) angle = kPi;
    roots.emplace_back(angle / kTwoPi, z);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  RVector x(static_cast<std::size_t>(d));
  CVector zs(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    x[j] = roots[j].first;
    zs[j] = roots[j].second;
  }
  for (int j = 1; j < d; ++j)
    if (!(x[j - 1] < x[j])) throw Error(ErrorKind::RepeatedRoots, "recovered nodes coincide");

  Eigen::MatrixXcd vander(n, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < n; ++k) vander(k, j) = std::polar(1.0, kTwoPi * x[j] * k);
  const Eigen::Map<const Eigen::VectorXcd> rhs(samples.values.data(), n);
  const Eigen::VectorXcd amp = vander.colPivHouseholderQr().solve(rhs);

  return RecoveryResult{SpikeTrain(CVector(amp.data(), amp.data() + d), std::move(x)),
                        pencil_param, RVector(s1.data(), s1.data() + d),
                        RVector(s2.data(), s2.data() + d), std::move(zs)};
}

}  // namespace spikesr
