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

// Objective measurements: segmental SNR, per-frame codec diagnostics and the
// comparison of TNS residuals in the MDCT and DFT domains.

#ifndef UNS_METRICS_H_
#define UNS_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uns/codec.h"

namespace uns {

inline constexpr double kEnergyFloorDb = -120.0;

struct SegSnrReport {
  std::vector<double> segments_db;
  double mean_db = 0.0;
  std::size_t segment_len = 256;
  double clamp_lo_db = -10.0;
  double clamp_hi_db = 35.0;
};

// Throws InvalidArgument on a length mismatch. Segments whose reference
// energy is below 1e-12 are skipped.
SegSnrReport SegSnr(std::span<const double> reference,
                    std::span<const double> decoded,
                    std::size_t segment_len = 256, double clamp_lo_db = -10.0,
                    double clamp_hi_db = 35.0);

struct TnsExperimentOptions {
  std::size_t frame_len = 1024;  // sine window, 50% overlap on both tracks
  std::size_t order = 16;
  std::size_t start_bin = 0;
};

struct TnsComparisonReport {
  std::vector<double> energy_mdct_db;  // per hop segment
  std::vector<double> energy_dft_db;
  std::vector<bool> transient;  // an onset lies inside the segment
  double mean_transient_mdct_db = kEnergyFloorDb;
  double mean_transient_dft_db = kEnergyFloorDb;
  std::size_t order = 16;
  std::string signal_name;
};

// Both tracks window with the same sine window, filter each frame's spectrum
// with its own order-p prediction-error filter along frequency, return to
// time by inverse transform, synthesis window and overlap-add, and measure
// the residual energy of each hop segment. Throws InvalidArgument when the
// signal is shorter than two frames.
TnsComparisonReport TnsDomainExperiment(std::span<const double> pcm,
                                        std::span<const std::size_t> onsets,
                                        const TnsExperimentOptions& opt = {});

std::string TnsComparisonCsv(const TnsComparisonReport& r);

// Columns: frame, gain_db, candidate, flag, unstable, frame_bits,
// spectral_bits, estimated_bits, then one scale factor per band.
std::string FrameDiagnosticsCsv(std::span<const FrameRecord> records);

// Decoded-minus-reference energy over [onset, onset + window) summed over
// all onsets.
double PostAttackNoiseEnergy(std::span<const double> reference,
                             std::span<const double> decoded,
                             std::span<const std::size_t> onsets,
                             std::size_t window);

}  // namespace uns

#endif  // UNS_METRICS_H_
