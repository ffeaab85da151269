// Copyright 2026 The Adaspike Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADASPIKE_WAV_HPP
#define ADASPIKE_WAV_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaspike/signal.hpp"

namespace adaspike {

namespace wav_detail {

inline std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(static_cast<std::uint32_t>(p[0]) |
                                    (static_cast<std::uint32_t>(p[1]) << 8));
}

}  // namespace wav_detail

// Reads a RIFF WAVE file. PCM 8/16/24/32-bit and IEEE float 32/64-bit
// are accepted; multi-channel files contribute their first channel.
// Integer samples map onto [-1, 1) volts by dividing by 2^(bits-1).
inline AudioSignal load_wav(const std::string& path) {
  using wav_detail::read_u16;
  using wav_detail::read_u32;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_wav: cannot open " + path);
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error("load_wav: not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const char* id = reinterpret_cast<const char*>(buf.data() + pos);
    const std::uint32_t len = read_u32(buf.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > buf.size())
      throw std::runtime_error("load_wav: truncated chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw std::runtime_error("load_wav: bad fmt chunk");
      format = read_u16(buf.data() + body);
      channels = read_u16(buf.data() + body + 2);
      rate = read_u32(buf.data() + body + 4);
      bits = read_u16(buf.data() + body + 14);
      if (format == 0xFFFE && len >= 40) {
        // WAVE_FORMAT_EXTENSIBLE: the subformat GUID starts with the
        // effective format tag.
        format = read_u16(buf.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = buf.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw std::runtime_error("load_wav: missing fmt chunk");
  if (data == nullptr) throw std::runtime_error("load_wav: missing data chunk");
  if (channels == 0 || rate == 0)
    throw std::runtime_error("load_wav: invalid fmt fields");

  const std::size_t bytes_per_sample = bits / 8u;
  if (bytes_per_sample == 0)
    throw std::runtime_error("load_wav: invalid bit depth");
  const std::size_t frame = bytes_per_sample * channels;
  const std::size_t n_frames = frame > 0 ? data_len / frame : 0;
  if (n_frames == 0) throw std::runtime_error("load_wav: zero-length audio");

  AudioSignal out;
  out.sample_rate_hz = static_cast<double>(rate);
  out.t0_s = 0.0;
  out.samples.resize(n_frames);

  for (std::size_t i = 0; i < n_frames; ++i) {
    const std::uint8_t* p = data + i * frame;  // first channel
    double v = 0.0;
    if (format == 1) {  // PCM
      switch (bits) {
        case 8:
          v = (static_cast<double>(p[0]) - 128.0) / 128.0;
          break;
        case 16: {
          const auto raw = static_cast<std::int16_t>(read_u16(p));
          v = static_cast<double>(raw) / 32768.0;
          break;
        }
        case 24: {
          std::int32_t raw = static_cast<std::int32_t>(p[0]) |
                             (static_cast<std::int32_t>(p[1]) << 8) |
                             (static_cast<std::int32_t>(p[2]) << 16);
          if (raw & 0x800000) raw |= ~0xFFFFFF;
          v = static_cast<double>(raw) / 8388608.0;
          break;
        }
        case 32: {
          const auto raw = static_cast<std::int32_t>(read_u32(p));
          v = static_cast<double>(raw) / 2147483648.0;
          break;
        }
        default:
          throw std::runtime_error("load_wav: unsupported PCM bit depth " +
                                   std::to_string(bits));
      }
    } else if (format == 3) {  // IEEE float
      if (bits == 32) {
        std::uint32_t raw = read_u32(p);
        float f;
        std::memcpy(&f, &raw, sizeof(f));
        v = static_cast<double>(f);
      } else if (bits == 64) {
        std::uint64_t raw = static_cast<std::uint64_t>(read_u32(p)) |
                            (static_cast<std::uint64_t>(read_u32(p + 4)) << 32);
        double d;
        std::memcpy(&d, &raw, sizeof(d));
        v = d;
      } else {
        throw std::runtime_error("load_wav: unsupported float bit depth " +
                                 std::to_string(bits));
      }
    } else {
      throw std::runtime_error("load_wav: unsupported encoding tag " +
                               std::to_string(format));
    }
    out.samples[i] = v;
  }
  out.validate();
  return out;
}

}  // namespace adaspike

#endif  // ADASPIKE_WAV_HPP
