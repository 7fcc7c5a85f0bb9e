#pragma once

#include <Eigen/Core>

#include "spikesr/signal.hpp"

namespace spikesr {

/// (L+1) x (N-L) Hankel matrix H[i][j] = m_{i+j} of a sample sequence.
class HankelMatrix {
 public:
  HankelMatrix(std::span<const cplx> values, int pencil_param);

  const Eigen::MatrixXcd& full() const noexcept { return h_; }
  /// Rows 0..L-1 (last row deleted).
  Eigen::MatrixXcd upper() const { return h_.topRows(h_.rows() - 1); }
  /// Rows 1..L (first row deleted).
  Eigen::MatrixXcd lower() const { return h_.bottomRows(h_.rows() - 1); }
  int pencil_param() const noexcept { return static_cast<int>(h_.rows()) - 1; }

 private:
  Eigen::MatrixXcd h_;
};

HankelMatrix build_hankel(const SpectralSamples& samples, int pencil_param);

struct RecoveryResult {
  SpikeTrain estimate;  // nodes in (-1/2, 1/2], ascending
  int pencil_param = 0;
  RVector sigma_a;  // leading d singular values of the upper Hankel block
  RVector sigma_b;  // leading d singular values of the lower Hankel block
  CVector z;        // pencil eigenvalues, in node order
};

struct PencilOptions {
  /// Smallest retained singular value of the lower block relative to the
  /// largest; below this the reduced pencil cannot be inverted safely.
  double rank_tolerance = 1e-13;
};

/// ceil(N / 2)
int default_pencil_param(int n);

/// Matrix Pencil estimate of a d-spike train from unit-rate samples
/// m_k = sum_j a_j exp(2 pi i x_j k).
RecoveryResult mp_recover(const SpectralSamples& samples, int d, int pencil_param,
                          const PencilOptions& opts = {});

}  // namespace spikesr
