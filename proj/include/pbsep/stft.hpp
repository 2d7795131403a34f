// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_STFT_HPP_
#define PBSEP_STFT_HPP_

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "pbsep/audio.hpp"

namespace pbsep {

/// Hann coefficients of length n, endpoints excluded so every tap is
/// strictly positive: w[k] = 0.5 * (1 - cos(2*pi*(k+1)/(n+1))). A window
/// that vanishes at its first tap would make the first sample of a signal
/// unrecoverable under weighted overlap-add.
std::vector<double> hann_window(int n);

struct StftConfig {
  int window_len = 128;
  int hop = 1;
  std::vector<double> window;  // filled from window_len when empty

  static StftConfig make(int window_len, int hop);
  int bins() const { return window_len / 2 + 1; }
};

/// Throws std::invalid_argument unless window_len is even and positive,
/// 1 <= hop <= window_len and the window length matches.
void validate_config(const StftConfig& config);

/// Complex bins x frames matrix plus the transform configuration.
/// origin_len records the analyzed signal length for exact inversion.
struct Spectrogram {
  Eigen::MatrixXcd data;
  StftConfig config;
  int sample_rate = 0;
  long origin_len = 0;

  long bins() const { return data.rows(); }
  long frames() const { return data.cols(); }
};

/// Number of analysis frames for a signal of length `len`: one frame per hop
/// plus, when the hop does not divide (len - window_len), a final
/// zero-padded frame so every sample is covered.
long stft_frame_count(long len, int window_len, int hop);

/// Forward transform. Frame t covers samples [t*hop, t*hop + window_len);
/// each frame is Hann-windowed and DFT'd, keeping bins 0..window_len/2.
/// Requires at least one full window of samples.
Spectrogram stft(const AudioClip& clip, const StftConfig& config);

/// Weighted overlap-add inverse: per frame conjugate-symmetric extension,
/// inverse DFT, synthesis windowing, accumulation, then pointwise division
/// by the summed squared window (floored at 1e-8). Output is truncated or
/// zero-padded to origin_len.
AudioClip istft(const Spectrogram& spec);

/// Elementwise |z| and arg(z); zero entries get phase 0.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split_magnitude_phase(
    const Spectrogram& spec);

namespace fft {

/// In-place complex FFT, O(n log n) for power-of-two sizes with a direct
/// O(n^2) DFT fallback for other sizes. inverse=true applies the 1/n scale.
void transform(std::vector<std::complex<double>>& buf, bool inverse);

}  // namespace fft

}  // namespace pbsep

#endif  // PBSEP_STFT_HPP_
