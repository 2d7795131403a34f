// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/masking.hpp"

#include <stdexcept>

namespace pbsep {

Eigen::MatrixXd PredictionField::mean() const {
  if (sum.rows() != count.rows() || sum.cols() != count.cols()) {
    throw std::invalid_argument("PredictionField: sum/count shape mismatch");
  }
  Eigen::MatrixXd m(sum.rows(), sum.cols());
  for (long c = 0; c < sum.cols(); ++c) {
    for (long r = 0; r < sum.rows(); ++r) {
      if (count(r, c) <= 0) {
        throw std::invalid_argument(
            "PredictionField: uncovered bin; crop before use");
      }
      m(r, c) = sum(r, c) / count(r, c);
    }
  }
  return m;
}

BinaryMask ideal_binary_mask(const Eigen::MatrixXd& mag_a,
                             const Eigen::MatrixXd& mag_b) {
  if (mag_a.rows() != mag_b.rows() || mag_a.cols() != mag_b.cols()) {
    throw std::invalid_argument("ideal_binary_mask: shape mismatch");
  }
  if ((mag_a.array() < 0.0).any() || (mag_b.array() < 0.0).any()) {
    throw std::invalid_argument("ideal_binary_mask: negative magnitude");
  }
  BinaryMask mask;
  mask.data = (mag_a.array() > mag_b.array()).cast<double>();
  return mask;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("threshold mask: alpha must be in (0,1)");
  }
}

}  // namespace

BinaryMask threshold_mask_a(const PredictionField& field, double alpha) {
  check_alpha(alpha);
  BinaryMask mask;
  mask.data = (field.mean().array() > alpha).cast<double>();
  return mask;
}

BinaryMask threshold_mask_b(const PredictionField& field, double alpha) {
  check_alpha(alpha);
  BinaryMask mask;
  mask.data = (field.mean().array() < 1.0 - alpha).cast<double>();
  return mask;
}

Spectrogram apply_mask(const BinaryMask& mask, const Spectrogram& spec) {
  if (mask.data.rows() != spec.data.rows() ||
      mask.data.cols() != spec.data.cols()) {
    throw std::invalid_argument("apply_mask: shape mismatch");
  }
  Spectrogram out = spec;
  out.data = spec.data.cwiseProduct(mask.data.cast<std::complex<double>>());
  return out;
}

}  // namespace pbsep
