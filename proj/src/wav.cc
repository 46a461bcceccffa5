// Copyright 2026 The UNS Codec Authors.
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

#include "uns/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace uns {

namespace {

constexpr std::uint16_t kTagPcm = 1;
constexpr std::uint16_t kTagFloat = 3;
constexpr std::uint16_t kTagExtensible = 0xFFFE;

std::uint16_t Le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t Le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(Le16(b, at)) |
         (static_cast<std::uint32_t>(Le16(b, at + 2)) << 16);
}

void Put16(std::vector<std::uint8_t>& o, std::uint16_t v) {
  o.push_back(static_cast<std::uint8_t>(v));
  o.push_back(static_cast<std::uint8_t>(v >> 8));
}

void Put32(std::vector<std::uint8_t>& o, std::uint32_t v) {
  Put16(o, static_cast<std::uint16_t>(v));
  Put16(o, static_cast<std::uint16_t>(v >> 16));
}

void PutTag(std::vector<std::uint8_t>& o, const char* tag) {
  o.insert(o.end(), tag, tag + 4);
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

}  // namespace

WavData ParseWav(std::span<const std::uint8_t> b) {
  if (b.size() < 12) throw WavError("truncated RIFF header");
  if (!TagIs(b, 0, "RIFF") || !TagIs(b, 8, "WAVE"))
    throw WavError("not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t tag = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = Le32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (TagIs(b, pos, "fmt ")) {
      if (size < 16 || body + size > b.size()) throw WavError("truncated 'fmt ' chunk");
      tag = Le16(b, body);
      channels = Le16(b, body + 2);
      rate = Le32(b, body + 4);
      block_align = Le16(b, body + 12);
      bits = Le16(b, body + 14);
      if (tag == kTagExtensible) {
        if (size < 26) throw WavError("truncated extensible 'fmt ' chunk");
        tag = Le16(b, body + 24);
      }
      have_fmt = true;
    } else if (TagIs(b, pos, "data")) {
      const std::size_t avail = std::min<std::size_t>(size, b.size() - body);
      data = b.subspan(body, avail);
      have_data = true;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw WavError("missing 'fmt ' chunk");
  if (!have_data) throw WavError("missing 'data' chunk");
  if (channels != 1 && channels != 2)
    throw WavError("unsupported channel count " + std::to_string(channels));
  if (rate == 0) throw WavError("zero sample rate");

  const bool pcm16 = tag == kTagPcm && bits == 16;
  const bool f32 = tag == kTagFloat && bits == 32;
  if (!pcm16 && !f32)
    throw WavError("unsupported codec tag " + std::to_string(tag) + " with " +
                   std::to_string(bits) + " bits");
  const std::size_t width = bits / 8;
  if (block_align != width * channels) throw WavError("inconsistent block alignment");

  WavData out;
  out.sample_rate = rate;
  out.channels = channels;
  const std::size_t frames = data.size() / block_align;
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = (i * channels + c) * width;
      if (pcm16)
        acc += static_cast<std::int16_t>(Le16(data, at)) / 32768.0;
      else
        acc += std::bit_cast<float>(Le32(data, at));
    }
    out.samples[i] = acc / channels;
  }
  return out;
}

std::vector<std::uint8_t> EncodeWav(std::span<const double> samples,
                                    std::uint32_t rate, WavFormat format) {
  const bool f32 = format == WavFormat::kFloat32;
  const std::uint16_t width = f32 ? 4 : 2;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * width);
  std::vector<std::uint8_t> o;
  o.reserve(44 + data_bytes);
  PutTag(o, "RIFF");
  Put32(o, 36 + data_bytes);
  PutTag(o, "WAVE");
  PutTag(o, "fmt ");
  Put32(o, 16);
  Put16(o, f32 ? kTagFloat : kTagPcm);
  Put16(o, 1);
  Put32(o, rate);
  Put32(o, rate * width);
  Put16(o, width);
  Put16(o, static_cast<std::uint16_t>(width * 8));
  PutTag(o, "data");
  Put32(o, data_bytes);
  for (double s : samples) {
    if (f32) {
      Put32(o, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    } else {
      const double v = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
      Put16(o, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
  }
  return o;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

WavData ReadWav(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return ParseWav(bytes);
  } catch (const WavError& e) {
    throw WavError(path + ": " + e.what());
  }
}

void WriteWav(const std::string& path, std::span<const double> samples,
              std::uint32_t rate, WavFormat format) {
  WriteFileBytes(path, EncodeWav(samples, rate, format));
}

}  // namespace uns
