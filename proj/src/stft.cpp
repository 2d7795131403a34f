// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/stft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbsep {

std::vector<double> hann_window(int n) {
  if (n < 1) throw std::invalid_argument("hann_window: n must be positive");
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) {
    w[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (k + 1) / (n + 1)));
  }
  return w;
}

StftConfig StftConfig::make(int window_len, int hop) {
  StftConfig cfg;
  cfg.window_len = window_len;
  cfg.hop = hop;
  cfg.window = hann_window(window_len);
  validate_config(cfg);
  return cfg;
}

void validate_config(const StftConfig& config) {
  if (config.window_len <= 0 || config.window_len % 2 != 0) {
    throw std::invalid_argument("StftConfig: window_len must be positive and even");
  }
  if (config.hop < 1 || config.hop > config.window_len) {
    throw std::invalid_argument("StftConfig: hop must be in [1, window_len]");
  }
  if (!config.window.empty() &&
      static_cast<int>(config.window.size()) != config.window_len) {
    throw std::invalid_argument("StftConfig: window length mismatch");
  }
}

namespace fft {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

void direct_dft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(k * m) / static_cast<double>(n);
      acc += a[m] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  a = std::move(out);
}

}  // namespace

void transform(std::vector<std::complex<double>>& buf, bool inverse) {
  if (buf.empty()) return;
  if (is_power_of_two(buf.size())) {
    radix2(buf, inverse);
  } else {
    direct_dft(buf, inverse);
  }
}

}  // namespace fft

long stft_frame_count(long len, int window_len, int hop) {
  if (len < window_len) return 0;
  long frames = (len - window_len) / hop + 1;
  if ((len - window_len) % hop != 0) ++frames;  // zero-padded tail frame
  return frames;
}

Spectrogram stft(const AudioClip& clip, const StftConfig& config_in) {
  validate_clip(clip);
  StftConfig config = config_in;
  if (config.window.empty()) config.window = hann_window(config.window_len);
  validate_config(config);

  const long len = static_cast<long>(clip.samples.size());
  const int n = config.window_len;
  if (len < n) {
    throw std::invalid_argument("stft: clip shorter than one window");
  }
  const long frames = stft_frame_count(len, n, config.hop);
  const int bins = config.bins();

  Spectrogram spec;
  spec.config = config;
  spec.sample_rate = clip.sample_rate;
  spec.origin_len = len;
  spec.data.resize(bins, frames);

  std::vector<std::complex<double>> buf(n);
  for (long t = 0; t < frames; ++t) {
    const long start = t * config.hop;
    for (int k = 0; k < n; ++k) {
      const long i = start + k;
      const double x = (i < len) ? clip.samples[i] : 0.0;
      buf[k] = std::complex<double>(config.window[k] * x, 0.0);
    }
    fft::transform(buf, false);
    for (int b = 0; b < bins; ++b) spec.data(b, t) = buf[b];
  }
  return spec;
}

AudioClip istft(const Spectrogram& spec) {
  validate_config(spec.config);
  if (spec.config.window.empty()) {
    throw std::invalid_argument("istft: config has no window");
  }
  if (spec.data.rows() != spec.config.bins()) {
    throw std::invalid_argument("istft: bin count does not match config");
  }
  if (!spec.data.allFinite()) {
    throw std::invalid_argument("istft: non-finite spectrogram entry");
  }

  const int n = spec.config.window_len;
  const int hop = spec.config.hop;
  const long frames = spec.data.cols();
  const std::vector<double>& w = spec.config.window;

  const long coverage = frames > 0 ? (frames - 1) * hop + n : 0;
  std::vector<double> acc(coverage, 0.0);
  std::vector<double> norm(coverage, 0.0);

  std::vector<std::complex<double>> buf(n);
  for (long t = 0; t < frames; ++t) {
    // conjugate-symmetric extension of the half spectrum
    buf[0] = spec.data(0, t);
    for (int b = 1; b < n / 2; ++b) {
      buf[b] = spec.data(b, t);
      buf[n - b] = std::conj(spec.data(b, t));
    }
    buf[n / 2] = spec.data(n / 2, t);
    fft::transform(buf, true);
    const long start = t * hop;
    for (int k = 0; k < n; ++k) {
      acc[start + k] += w[k] * buf[k].real();
      norm[start + k] += w[k] * w[k];
    }
  }

  AudioClip out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(static_cast<std::size_t>(std::max<long>(spec.origin_len, 0)),
                     0.0);
  const long copy_len = std::min<long>(spec.origin_len, coverage);
  for (long i = 0; i < copy_len; ++i) {
    out.samples[i] = acc[i] / std::max(norm[i], 1e-8);
  }
  return out;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> split_magnitude_phase(
    const Spectrogram& spec) {
  Eigen::MatrixXd mag(spec.data.rows(), spec.data.cols());
  Eigen::MatrixXd phase(spec.data.rows(), spec.data.cols());
  for (long c = 0; c < spec.data.cols(); ++c) {
    for (long r = 0; r < spec.data.rows(); ++r) {
      const std::complex<double> z = spec.data(r, c);
      mag(r, c) = std::abs(z);
      phase(r, c) = (z == std::complex<double>(0.0, 0.0))
                        ? 0.0
                        : std::arg(z);
    }
  }
  return {std::move(mag), std::move(phase)};
}

}  // namespace pbsep
