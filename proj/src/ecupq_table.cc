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

// Generated by `uns design-ecupq` (DesignEcupqTable with default arguments).
// The design is deterministic; tests check these values against a fresh run.

#include <limits>

#include "uns/polar_quant.h"

namespace uns {

const EcupqTable& DefaultEcupqTable() {
  static const EcupqTable kTable = [] {
    EcupqTable t;
    t.thresholds = {0.48511721902992294, 1.2821142654094664,
                    2.0368640990929308,  2.7795137401892624,
                    3.5595492637843202,  4.3788116332902698,
                    5.056,               std::numeric_limits<double>::infinity()};
    t.levels = {0.0,                0.87564738108576212, 1.6010499628127859,
                2.3067404834988858, 3.0332565362782744,  3.7849083796339467,
                4.5671599706196968, 5.2447077339516603};
    t.design_rate = 2.495;
    t.version = "ecupq-rayleigh-v1";
    return t;
  }();
  return kTable;
}

}  // namespace uns
