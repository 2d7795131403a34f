// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef PBSEP_WAV_IO_HPP_
#define PBSEP_WAV_IO_HPP_

#include <string>

#include "pbsep/audio.hpp"

namespace pbsep {

/// Reads a mono RIFF/WAVE file. Accepts PCM 16-bit (scaled by 1/32768) and
/// IEEE-float 32-bit encodings; anything else (including multichannel data)
/// is rejected with std::runtime_error.
AudioClip load_wav(const std::string& path);

/// Writes the clip as a mono IEEE-float 32-bit little-endian WAV. Samples
/// outside [-1, 1] are written as-is.
void save_wav(const AudioClip& clip, const std::string& path);

}  // namespace pbsep

#endif  // PBSEP_WAV_IO_HPP_
