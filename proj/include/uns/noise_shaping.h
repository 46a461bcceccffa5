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

// Frequency-domain noise shaping (division by the LPC envelope) and complex
// temporal noise shaping (prediction-error filtering along frequency).

#ifndef UNS_NOISE_SHAPING_H_
#define UNS_NOISE_SHAPING_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "uns/lp.h"
#include "uns/transforms.h"

namespace uns {

// First bin strictly above 312 Hz at 12.5 Hz per bin.
inline constexpr std::size_t kCtnsStartBin = 25;
inline constexpr double kCtnsThresholdDb = -4.5;
inline constexpr double kGainFloorDb = -100.0;
inline constexpr double kGainCeilDb = 20.0;

struct CtnsDecision {
  double gain_db = kGainFloorDb;
  bool active = false;
  double threshold_db = kCtnsThresholdDb;
};

// Bins divided by the real envelope; throws InvalidArgument on a
// non-positive envelope value or a length mismatch.
std::vector<Complex> FdnsForward(std::span<const Complex> bins,
                                 const FrequencyEnvelope& env);
std::vector<Complex> FdnsInverse(std::span<const Complex> residual,
                                 const FrequencyEnvelope& env);

// e[f] = x[f] + sum_k a_k x[f-k] for start_bin <= f < N-1; other bins pass.
// The last bin (Nyquist) always passes through.
std::vector<Complex> CtnsFilter(std::span<const Complex> x,
                                std::span<const Complex> coeffs,
                                std::size_t start_bin = kCtnsStartBin);
// x[f] = e[f] - sum_k a_k x[f-k]; exact inverse of CtnsFilter.
std::vector<Complex> CtnsUnfilter(std::span<const Complex> e,
                                  std::span<const Complex> coeffs,
                                  std::size_t start_bin = kCtnsStartBin);

// 10 log10(sum |x_fd - x_ct|^2 / sum |x_fd|^2) over the filtered bins.
CtnsDecision PredictionGain(std::span<const Complex> x_fd,
                            std::span<const Complex> x_ct,
                            std::size_t start_bin = kCtnsStartBin,
                            double threshold_db = kCtnsThresholdDb);

}  // namespace uns

#endif  // UNS_NOISE_SHAPING_H_
