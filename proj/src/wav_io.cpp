// Copyright 2026 the pbsep authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "pbsep/wav_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace pbsep {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void append_u16(std::vector<unsigned char>& buf, std::uint16_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void append_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

}  // namespace

AudioClip load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_wav: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw std::runtime_error("load_wav: not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + len > bytes.size()) {
      throw std::runtime_error("load_wav: truncated chunk in " + path);
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw std::runtime_error("load_wav: short fmt chunk");
      const unsigned char* f = bytes.data() + pos;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + pos;
      data_len = len;
      have_data = true;
    }
    pos += len + (len % 2);  // chunks are word-aligned
  }

  if (!have_fmt || !have_data) {
    throw std::runtime_error("load_wav: missing fmt or data chunk in " + path);
  }
  if (channels != 1) {
    throw std::runtime_error("load_wav: expected mono, got " +
                             std::to_string(channels) + " channels");
  }
  if (rate == 0) throw std::runtime_error("load_wav: zero sample rate");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const std::size_t n = data_len / 2;
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int16_t v =
          static_cast<std::int16_t>(read_u16(data + 2 * i));
      clip.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatIeeeFloat && bits == 32) {
    const std::size_t n = data_len / 4;
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t u = read_u32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      clip.samples[i] = static_cast<double>(f);
    }
  } else {
    throw std::runtime_error("load_wav: unsupported encoding (format " +
                             std::to_string(format) + ", " +
                             std::to_string(bits) + " bits)");
  }
  return clip;
}

void save_wav(const AudioClip& clip, const std::string& path) {
  validate_clip(clip);
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(clip.samples.size() * 4);

  std::vector<unsigned char> buf;
  buf.reserve(58 + data_len);
  buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
  append_u32(buf, 4 + 26 + 8 + data_len);  // WAVE + fmt(18+8) + data header
  buf.insert(buf.end(), {'W', 'A', 'V', 'E'});
  buf.insert(buf.end(), {'f', 'm', 't', ' '});
  append_u32(buf, 18);
  append_u16(buf, kFormatIeeeFloat);
  append_u16(buf, 1);  // mono
  append_u32(buf, static_cast<std::uint32_t>(clip.sample_rate));
  append_u32(buf, static_cast<std::uint32_t>(clip.sample_rate) * 4);
  append_u16(buf, 4);   // block align
  append_u16(buf, 32);  // bits per sample
  append_u16(buf, 0);   // cbSize (extension length)
  buf.insert(buf.end(), {'d', 'a', 't', 'a'});
  append_u32(buf, data_len);
  for (double s : clip.samples) {
    const float f = static_cast<float>(s);
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    append_u32(buf, u);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_wav: cannot open " + path);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("save_wav: write failed for " + path);
}

}  // namespace pbsep
