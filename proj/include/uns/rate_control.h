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

// Sub-band partitioning, block sample-entropy bit estimation and the per-band
// scale-factor search that fits each band into its bit budget.

#ifndef UNS_RATE_CONTROL_H_
#define UNS_RATE_CONTROL_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "uns/bands.h"
#include "uns/polar_quant.h"

namespace uns {

inline constexpr int kMinGainDb = -60;
inline constexpr int kMaxGainDb = 60;
inline constexpr int kGainSearchIterations = 24;
inline constexpr std::size_t kEntropyBlock = 4;

std::vector<std::vector<Complex>> SplitBands(std::span<const Complex> bins,
                                             const BandLayout& layout);
std::vector<Complex> JoinBands(std::span<const std::vector<Complex>> bands);

// Sum over consecutive blocks of four indices of the block's empirical
// entropy times its length, plus the exact phase bits.
double EstimateBits(std::span<const int> index1, std::size_t phase_bits = 0);

// Linear factor applied to a band coded with gain index `gain_db` (a divisor
// in dB: residual / 10^(g/20)).
double GainToScale(int gain_db);

struct BandContext {
  const PolarQuantizer* quantizer = nullptr;
  bool high_contrast = false;
  bool first_is_real = false;  // band starts with the DC bin
};

struct ScaleFactorChoice {
  int gain_db = kMinGainDb;     // snapped 1 dB index, shared with the decoder
  double estimated_bits = 0.0;  // estimate at the chosen gain
  bool overflow = false;        // even +60 dB exceeds the budget
};

// Estimated bits of `band` divided by 10^(gain_db/20).
double BandBits(std::span<const Complex> band, double gain_db,
                const BandContext& ctx);

// Finest 1 dB gain whose estimate fits the budget: bisection over
// [-60, 60] dB, then a snap to the grid such that
// bits(g) <= target < bits(g - 1).
ScaleFactorChoice FindScaleFactor(std::span<const Complex> band,
                                  int target_bits, const BandContext& ctx);

}  // namespace uns

#endif  // UNS_RATE_CONTROL_H_
