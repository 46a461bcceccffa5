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

// Rational-ratio resampling to the 12.8 kHz core rate.

#ifndef UNS_RESAMPLE_H_
#define UNS_RESAMPLE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace uns {

inline constexpr std::uint32_t kCoreRate = 12800;
inline constexpr int kResampleTaps = 64;
inline constexpr double kResampleBeta = 8.0;

// Kaiser-windowed sinc interpolation, 64 taps per output phase, cutoff at the
// lower of the two Nyquist frequencies. Each phase is normalized to unit DC
// gain. Throws InvalidArgument unless both rates lie in [8000, 48000].
std::vector<double> Resample(std::span<const double> x, std::uint32_t in_rate,
                             std::uint32_t out_rate);

inline std::vector<double> ResampleToCore(std::span<const double> x,
                                          std::uint32_t in_rate) {
  return Resample(x, in_rate, kCoreRate);
}

}  // namespace uns

#endif  // UNS_RESAMPLE_H_
