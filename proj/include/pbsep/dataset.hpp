// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_DATASET_HPP_
#define PBSEP_DATASET_HPP_

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "pbsep/masking.hpp"

namespace pbsep {

/// Sliding-window geometry over spectrogram frames. bins * width is the
/// network input dimension.
struct WindowConfig {
  int width = 20;
  int stride_train = 10;
  int stride_test = 1;
  int bins = 65;

  int input_dim() const { return bins * width; }
};

void validate_window_config(const WindowConfig& cfg);

/// Global maximum magnitude of the training mixture spectrogram; divides
/// test-time magnitudes so train and test share one scale.
struct NormScale {
  double scale = 1.0;
};

/// Divides by the matrix maximum so the peak becomes exactly 1. Throws on an
/// all-zero matrix.
std::pair<Eigen::MatrixXd, NormScale> normalize_unit_scale(
    const Eigen::MatrixXd& mag);

/// Frame-major flattening: all bins of frame 0, then frame 1, ... The order
/// is fixed; train and test must agree.
Eigen::VectorXd flatten_window(const Eigen::MatrixXd& window);
Eigen::MatrixXd unflatten_window(const Eigen::VectorXd& vec, int bins,
                                 int width);

/// Number of windows of `width` frames at the given stride over `frames`
/// total frames; trailing frames that do not fill a window are dropped.
long window_count(long frames, int width, int stride);

struct WindowPair {
  Eigen::VectorXd input;
  Eigen::VectorXd target;
};

/// Cuts congruent (mixture magnitude, mask) windows. Window k covers frames
/// [k*stride, k*stride + width).
std::vector<WindowPair> window_pairs(const Eigen::MatrixXd& mix_mag,
                                     const BinaryMask& mask,
                                     const WindowConfig& cfg, int stride);

/// Extracts only the input windows (test-time path without targets).
std::vector<Eigen::VectorXd> window_inputs(const Eigen::MatrixXd& mix_mag,
                                           const WindowConfig& cfg,
                                           int stride);

/// Adds each window's unflattened bins x width block into the field over its
/// frame span, counting contributions per bin. Accumulation is sequential,
/// so results are identical run to run.
PredictionField accumulate_predictions(
    const std::vector<Eigen::VectorXd>& predictions, const WindowConfig& cfg,
    int stride, long total_frames);

}  // namespace pbsep

#endif  // PBSEP_DATASET_HPP_
