// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/audio.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pbsep {

void validate_clip(const AudioClip& clip) {
  if (clip.sample_rate <= 0) {
    throw std::invalid_argument("AudioClip: sample_rate must be positive");
  }
  for (double s : clip.samples) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("AudioClip: non-finite sample");
    }
  }
}

double rms(const AudioClip& clip) {
  if (clip.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : clip.samples) acc += s * s;
  return std::sqrt(acc / static_cast<double>(clip.samples.size()));
}

std::vector<double> design_lowpass_fir(int taps, double cutoff_hz,
                                       double sample_rate_hz) {
  if (taps < 1 || taps % 2 == 0) {
    throw std::invalid_argument("design_lowpass_fir: taps must be odd and >= 1");
  }
  if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate_hz / 2.0) {
    throw std::invalid_argument("design_lowpass_fir: cutoff out of range");
  }
  const double fc = cutoff_hz / sample_rate_hz;  // cycles per sample
  const int mid = (taps - 1) / 2;
  std::vector<double> h(taps);
  double sum = 0.0;
  for (int n = 0; n < taps; ++n) {
    const double m = n - mid;
    const double sinc = (n == mid)
                            ? 2.0 * fc
                            : std::sin(2.0 * std::numbers::pi * fc * m) /
                                  (std::numbers::pi * m);
    // Hann taper over the tap span.
    const double w =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / (taps - 1)));
    h[n] = sinc * w;
    sum += h[n];
  }
  for (double& c : h) c /= sum;  // unity DC gain
  return h;
}

namespace {
constexpr int kDecimateTaps = 127;

// Centered zero-padded convolution: group delay of the linear-phase FIR is
// compensated so y[n] lines up with x[n].
double filtered_at(const std::vector<double>& x, const std::vector<double>& h,
                   std::size_t n) {
  const int mid = (static_cast<int>(h.size()) - 1) / 2;
  double acc = 0.0;
  for (int k = 0; k < static_cast<int>(h.size()); ++k) {
    const long long i = static_cast<long long>(n) + mid - k;
    if (i >= 0 && i < static_cast<long long>(x.size())) {
      acc += h[k] * x[static_cast<std::size_t>(i)];
    }
  }
  return acc;
}
}  // namespace

AudioClip decimate(const AudioClip& clip, int target_rate) {
  validate_clip(clip);
  if (target_rate <= 0) {
    throw std::invalid_argument("decimate: target_rate must be positive");
  }
  if (target_rate > clip.sample_rate) {
    throw std::invalid_argument("decimate: target_rate exceeds input rate");
  }
  if (clip.sample_rate % target_rate != 0) {
    throw std::invalid_argument("decimate: rate ratio must be an integer");
  }
  if (target_rate == clip.sample_rate) return clip;

  const int ratio = clip.sample_rate / target_rate;
  const double cutoff = 0.45 * (target_rate / 2.0);
  const std::vector<double> h =
      design_lowpass_fir(kDecimateTaps, cutoff, clip.sample_rate);

  AudioClip out;
  out.sample_rate = target_rate;
  const std::size_t out_len =
      (clip.samples.size() + static_cast<std::size_t>(ratio) - 1) /
      static_cast<std::size_t>(ratio);
  out.samples.resize(out_len);
  for (std::size_t m = 0; m < out_len; ++m) {
    out.samples[m] = filtered_at(clip.samples, h, m * ratio);
  }
  return out;
}

std::pair<AudioClip, AudioClip> equalize_intensity(const AudioClip& a,
                                                   const AudioClip& b) {
  validate_clip(a);
  validate_clip(b);
  const double ra = rms(a);
  const double rb = rms(b);
  if (ra <= 0.0 || rb <= 0.0) {
    throw std::invalid_argument("equalize_intensity: silent input clip");
  }
  const double target = std::sqrt(ra * rb);
  AudioClip oa = a;
  AudioClip ob = b;
  const double ga = target / ra;
  const double gb = target / rb;
  for (double& s : oa.samples) s *= ga;
  for (double& s : ob.samples) s *= gb;
  return {std::move(oa), std::move(ob)};
}

AudioClip mix(const AudioClip& a, const AudioClip& b) {
  validate_clip(a);
  validate_clip(b);
  if (a.sample_rate != b.sample_rate) {
    throw std::invalid_argument("mix: sample rate mismatch");
  }
  if (a.samples.size() != b.samples.size()) {
    throw std::invalid_argument("mix: length mismatch (" +
                                std::to_string(a.samples.size()) + " vs " +
                                std::to_string(b.samples.size()) + ")");
  }
  AudioClip out = a;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] += b.samples[i];
  }
  return out;
}

}  // namespace pbsep
