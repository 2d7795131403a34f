// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_MASKING_HPP_
#define PBSEP_MASKING_HPP_

#include <Eigen/Dense>

#include "pbsep/stft.hpp"

namespace pbsep {

/// {0,1}-valued bins x frames matrix, congruent to the spectrogram it masks.
struct BinaryMask {
  Eigen::MatrixXd data;

  long bins() const { return data.rows(); }
  long frames() const { return data.cols(); }
  double fraction_ones() const {
    return data.size() > 0 ? data.sum() / static_cast<double>(data.size())
                           : 0.0;
  }
};

/// Per-bin accumulation of sigmoid outputs from overlapping prediction
/// windows: running sum plus contributor count. mean() is the probabilistic
/// mask estimate.
struct PredictionField {
  Eigen::MatrixXd sum;
  Eigen::MatrixXi count;

  /// sum/count where covered; throws if any bin has count == 0.
  Eigen::MatrixXd mean() const;
};

/// mask[f,t] = 1 iff mag_a[f,t] > mag_b[f,t]; ties go to 0 (source B).
BinaryMask ideal_binary_mask(const Eigen::MatrixXd& mag_a,
                             const Eigen::MatrixXd& mag_b);

/// Source-A mask: 1 iff mean prediction > alpha. alpha must be in (0,1)
/// exclusive and every bin must be covered.
BinaryMask threshold_mask_a(const PredictionField& field, double alpha);

/// Source-B mask: 1 iff mean prediction < 1 - alpha.
BinaryMask threshold_mask_b(const PredictionField& field, double alpha);

/// Elementwise product of mask and spectrogram; config, rate and origin_len
/// carry through.
Spectrogram apply_mask(const BinaryMask& mask, const Spectrogram& spec);

}  // namespace pbsep

#endif  // PBSEP_MASKING_HPP_
