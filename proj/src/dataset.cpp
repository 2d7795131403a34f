// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/dataset.hpp"

#include <stdexcept>
#include <string>

namespace pbsep {

void validate_window_config(const WindowConfig& cfg) {
  if (cfg.width < 1 || cfg.bins < 1) {
    throw std::invalid_argument("WindowConfig: width and bins must be >= 1");
  }
  if (cfg.stride_train < 1 || cfg.stride_train > cfg.width ||
      cfg.stride_test < 1 || cfg.stride_test > cfg.width) {
    throw std::invalid_argument("WindowConfig: strides must be in [1, width]");
  }
}

std::pair<Eigen::MatrixXd, NormScale> normalize_unit_scale(
    const Eigen::MatrixXd& mag) {
  const double peak = mag.size() > 0 ? mag.maxCoeff() : 0.0;
  if (peak <= 0.0) {
    throw std::invalid_argument("normalize_unit_scale: all-zero matrix");
  }
  return {mag / peak, NormScale{peak}};
}

Eigen::VectorXd flatten_window(const Eigen::MatrixXd& window) {
  // Column-major reshape is exactly frame-major order for bins x width.
  return Eigen::Map<const Eigen::VectorXd>(window.data(), window.size());
}

Eigen::MatrixXd unflatten_window(const Eigen::VectorXd& vec, int bins,
                                 int width) {
  if (vec.size() != static_cast<long>(bins) * width) {
    throw std::invalid_argument("unflatten_window: size mismatch");
  }
  return Eigen::Map<const Eigen::MatrixXd>(vec.data(), bins, width);
}

long window_count(long frames, int width, int stride) {
  if (frames < width) return 0;
  return (frames - width) / stride + 1;
}

namespace {

void check_windowing(long frames, long bins, const WindowConfig& cfg,
                     int stride) {
  validate_window_config(cfg);
  if (stride < 1 || stride > cfg.width) {
    throw std::invalid_argument("windowing: stride must be in [1, width]");
  }
  if (bins != cfg.bins) {
    throw std::invalid_argument("windowing: bin count mismatch");
  }
  if (frames < cfg.width) {
    throw std::invalid_argument("windowing: too few frames (" +
                                std::to_string(frames) + " < width " +
                                std::to_string(cfg.width) + ")");
  }
}

}  // namespace

std::vector<WindowPair> window_pairs(const Eigen::MatrixXd& mix_mag,
                                     const BinaryMask& mask,
                                     const WindowConfig& cfg, int stride) {
  if (mix_mag.rows() != mask.data.rows() ||
      mix_mag.cols() != mask.data.cols()) {
    throw std::invalid_argument("window_pairs: mixture/mask shape mismatch");
  }
  check_windowing(mix_mag.cols(), mix_mag.rows(), cfg, stride);

  const long n = window_count(mix_mag.cols(), cfg.width, stride);
  std::vector<WindowPair> out;
  out.reserve(n);
  for (long k = 0; k < n; ++k) {
    const long start = k * stride;
    WindowPair p;
    p.input = flatten_window(mix_mag.block(0, start, cfg.bins, cfg.width));
    p.target = flatten_window(mask.data.block(0, start, cfg.bins, cfg.width));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Eigen::VectorXd> window_inputs(const Eigen::MatrixXd& mix_mag,
                                           const WindowConfig& cfg,
                                           int stride) {
  check_windowing(mix_mag.cols(), mix_mag.rows(), cfg, stride);
  const long n = window_count(mix_mag.cols(), cfg.width, stride);
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (long k = 0; k < n; ++k) {
    out.push_back(
        flatten_window(mix_mag.block(0, k * stride, cfg.bins, cfg.width)));
  }
  return out;
}

PredictionField accumulate_predictions(
    const std::vector<Eigen::VectorXd>& predictions, const WindowConfig& cfg,
    int stride, long total_frames) {
  check_windowing(total_frames, cfg.bins, cfg, stride);
  const long expected = window_count(total_frames, cfg.width, stride);
  if (static_cast<long>(predictions.size()) != expected) {
    throw std::invalid_argument(
        "accumulate_predictions: got " + std::to_string(predictions.size()) +
        " windows, expected " + std::to_string(expected));
  }

  PredictionField field;
  field.sum = Eigen::MatrixXd::Zero(cfg.bins, total_frames);
  field.count = Eigen::MatrixXi::Zero(cfg.bins, total_frames);
  for (long k = 0; k < expected; ++k) {
    const Eigen::MatrixXd block =
        unflatten_window(predictions[k], cfg.bins, cfg.width);
    const long start = k * stride;
    field.sum.block(0, start, cfg.bins, cfg.width) += block;
    field.count.block(0, start, cfg.bins, cfg.width).array() += 1;
  }
  return field;
}

}  // namespace pbsep
