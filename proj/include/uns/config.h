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

// Codec configuration. Every default is the reference operating point; the
// encoder-only knobs (weights, threshold, budgets) are not carried in streams.

#ifndef UNS_CONFIG_H_
#define UNS_CONFIG_H_

#include <cstddef>
#include <cstdint>

#include "uns/bands.h"
#include "uns/lp.h"
#include "uns/noise_shaping.h"
#include "uns/polar_quant.h"
#include "uns/transforms.h"

namespace uns {

struct CodecConfig {
  WindowSpec window;
  std::uint32_t sample_rate_hz = 12800;
  BandLayout layout;
  BitBudget budget;
  BitrateMode mode = BitrateMode::k12kbps;

  std::size_t lpc_order = 16;
  double fdns_weight = 0.98;
  double ctns_weight = 0.9;
  double ctns_threshold_db = kCtnsThresholdDb;
  std::size_t ctns_start_bin = kCtnsStartBin;
  double fer_threshold = 0.125;

  PhaseCellSets phase_sets;
  EcupqTable table = DefaultEcupqTable();
  LsfQuantizer lsf_quantizer;
  ComplexLpcQuantizer cplx_quantizer;

  // Encoder switch: false codes every frame with the flag off (FDNS only).
  bool ctns_enabled = true;
  // Debug path: every quantizer is the identity and nothing is entropy coded.
  bool bypass = false;

  std::size_t num_bins() const { return window.frame_len / 2 + 1; }
  // Throws InvalidArgument on inconsistent dimensions or parameters.
  void Validate() const;
};

}  // namespace uns

#endif  // UNS_CONFIG_H_
