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

// RIFF/WAVE reading (16-bit PCM or 32-bit float, mono or stereo) and writing.

#ifndef UNS_WAV_H_
#define UNS_WAV_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uns {

class WavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WavData {
  std::vector<double> samples;  // mono, stereo averaged; in [-1, 1]
  std::uint32_t sample_rate = 0;
  std::uint16_t channels = 0;   // as stored in the file
};

enum class WavFormat { kPcm16, kFloat32 };

WavData ParseWav(std::span<const std::uint8_t> bytes);
WavData ReadWav(const std::string& path);
std::vector<std::uint8_t> EncodeWav(std::span<const double> samples,
                                    std::uint32_t sample_rate,
                                    WavFormat format = WavFormat::kFloat32);
void WriteWav(const std::string& path, std::span<const double> samples,
              std::uint32_t sample_rate, WavFormat format = WavFormat::kFloat32);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace uns

#endif  // UNS_WAV_H_
