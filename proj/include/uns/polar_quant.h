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

// Modified unrestricted polar quantizer: a hybrid magnitude quantizer
// (entropy-constrained core cells, x^(3/4) companded middle range, integer
// outlier range behind an escape index) and a uniform phase quantizer whose
// resolution follows the magnitude index and the band's envelope contrast.

#ifndef UNS_POLAR_QUANT_H_
#define UNS_POLAR_QUANT_H_

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uns/bands.h"
#include "uns/lp.h"

namespace uns {

// Highest decision threshold of the entropy-constrained quantizer; magnitudes
// at or above it leave the core region.
inline constexpr double kEcupqTopThreshold = 5.056;
// Lower edge of the outlier region, 8.5^(4/3).
extern const double kOutlierThreshold;

inline constexpr int kEcupqCells = 8;
inline constexpr int kEscapeIndex = 8;
inline constexpr int kNonlinearOffset = 6;
inline constexpr int kMaxIndex1 = 14;
inline constexpr int kMagnitudeAlphabet = kMaxIndex1 + 1;
inline constexpr int kMinOutlier = 18;
inline constexpr int kMaxOutlier = 65535;

// Eight magnitude rings. Ring j covers [thresholds[j-1], thresholds[j]) with
// thresholds[-1] = 0. thresholds[6] is the pinned highest threshold and
// thresholds[7] = +inf is a sentinel: the unbounded top ring belongs to the
// design only, since the hybrid quantizer routes magnitudes >= thresholds[6]
// to the companded and outlier regions. levels[0] = 0 is the dead zone.
struct EcupqTable {
  std::array<double, kEcupqCells> thresholds{};
  std::array<double, kEcupqCells> levels{};
  double design_rate = 2.495;
  std::string version;

  double top() const { return thresholds[kEcupqCells - 2]; }
  void Validate() const;
};

// The versioned table produced by DesignEcupqTable() with default arguments.
const EcupqTable& DefaultEcupqTable();

struct EcupqDesign {
  EcupqTable table;
  // Ring entropy plus phase bits of the high-contrast cell set, per real
  // dimension, on the design density.
  double entropy_bits = 0.0;
  double mse = 0.0;  // complex-domain squared error
  int iterations = 0;
};

class EcupqDesignError : public std::runtime_error {
 public:
  EcupqDesignError(const std::string& what, EcupqDesign last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const EcupqDesign& last_iterate() const { return last_; }

 private:
  EcupqDesign last_;
};

// Entropy-constrained Lloyd design of a polar quantizer on a Rayleigh
// magnitude density with E[A^2] = 2 (unit-variance complex Gaussian
// components). Levels are phase-attenuated centroids, so ring 0 (one phase
// cell) reconstructs at zero.
EcupqDesign DesignEcupqTable(double rate_target = 2.495,
                             double top_threshold = kEcupqTopThreshold,
                             int max_iterations = 500);

struct MagnitudeCode {
  int index1 = 0;
  std::optional<int> index2;

  friend bool operator==(const MagnitudeCode&, const MagnitudeCode&) = default;
};

MagnitudeCode QuantizeMagnitude(double a, const EcupqTable& table);
double DequantizeMagnitude(const MagnitudeCode& code, const EcupqTable& table);

struct PhaseCellSets {
  std::array<int, kEcupqCells> high{1, 8, 16, 16, 32, 32, 64, 64};
  std::array<int, kEcupqCells> low{1, 4, 8, 8, 16, 16, 32, 32};
};

int PhaseCells(int index1, bool high_contrast, const PhaseCellSets& sets);
// log2 of a power-of-two cell count.
int PhaseBits(int cells);

double WrapPhase(double theta);
int QuantizePhase(double theta, int cells);
double DequantizePhase(int index, int cells);

struct FerProfile {
  std::vector<double> fer;
  std::vector<bool> high_contrast;
  double threshold = 0.125;
};

FerProfile ComputeFer(const FrequencyEnvelope& env, const BandLayout& layout,
                      double threshold = 0.125);

// Polar codes for a run of coefficients sharing one contrast decision. When
// `first_is_real` is set, coefficient 0 is a real DC/Nyquist value and its
// "phase" is a sign bit (2 cells) rather than a polar phase.
struct CoefficientCodes {
  std::vector<int> index1;
  std::vector<int> index2;  // escape values, in coefficient order
  std::vector<int> phase;
  std::vector<int> cells;

  std::size_t PhaseBitCount() const;
};

struct PolarQuantizer {
  const EcupqTable* table = nullptr;
  PhaseCellSets sets;

  CoefficientCodes Quantize(std::span<const Complex> coeffs, bool high_contrast,
                            bool first_is_real) const;
  // Index1 only plus the exact phase-bit count; the hot path of the
  // scale-factor search.
  std::size_t QuantizeIndices(std::span<const Complex> coeffs, double scale,
                              bool high_contrast, bool first_is_real,
                              std::vector<int>& index1) const;
  std::vector<Complex> Dequantize(const CoefficientCodes& codes,
                                  bool first_is_real) const;
  // Cell counts implied by decoded magnitude indices.
  std::vector<int> CellsFor(std::span<const int> index1, bool high_contrast,
                            bool first_is_real) const;
};

}  // namespace uns

#endif  // UNS_POLAR_QUANT_H_
