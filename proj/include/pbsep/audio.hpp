// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_AUDIO_HPP_
#define PBSEP_AUDIO_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace pbsep {

/// Mono sample sequence plus its sample rate. Samples are dimensionless
/// amplitudes, nominally in [-1, 1]; all internal arithmetic is double.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

/// Throws std::invalid_argument if the clip has a non-positive rate or any
/// non-finite sample.
void validate_clip(const AudioClip& clip);

double rms(const AudioClip& clip);

/// Designs the anti-alias low-pass used by decimate(): windowed-sinc FIR,
/// `taps` coefficients (odd), Hann-windowed, normalized to unity DC gain.
/// `cutoff_hz` and `sample_rate_hz` describe the filter at the input rate.
std::vector<double> design_lowpass_fir(int taps, double cutoff_hz,
                                       double sample_rate_hz);

/// Anti-alias low-pass (cutoff 0.45 x target Nyquist, 127 taps) followed by
/// keeping every (rate/target_rate)-th sample. The input rate must be an
/// integer multiple of target_rate; equal rates return a copy.
/// Output length = ceil(input_length / ratio).
AudioClip decimate(const AudioClip& clip, int target_rate);

/// Scales both clips to a common RMS equal to the geometric mean of the two
/// input RMS values. Pure gain; throws on a silent input.
std::pair<AudioClip, AudioClip> equalize_intensity(const AudioClip& a,
                                                   const AudioClip& b);

/// Elementwise sum. Requires equal sample rates and lengths.
AudioClip mix(const AudioClip& a, const AudioClip& b);

}  // namespace pbsep

#endif  // PBSEP_AUDIO_HPP_
