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

#include "uns/polar_quant.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uns/errors.h"

namespace uns {

const double kOutlierThreshold = std::pow(8.5, 4.0 / 3.0);

namespace {

constexpr double kPi = std::numbers::pi;

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

int EcupqCell(double a, const EcupqTable& table) {
  int j = 0;
  while (j < kEcupqCells - 2 && a >= table.thresholds[j]) ++j;
  return j;
}

}  // namespace

void EcupqTable::Validate() const {
  double prev = 0.0;
  if (!std::isinf(thresholds[kEcupqCells - 1]))
    throw InvalidArgument("ECUPQ top ring must be unbounded");
  for (int j = 0; j < kEcupqCells; ++j) {
    if (!(thresholds[j] > prev))
      throw InvalidArgument("ECUPQ thresholds must be strictly increasing");
    const double lo = j == 0 ? 0.0 : thresholds[j - 1];
    if (j == 0 ? levels[0] != 0.0
               : !(levels[j] > lo && levels[j] < thresholds[j]))
      throw InvalidArgument("ECUPQ level " + std::to_string(j) +
                            " lies outside its cell");
    prev = thresholds[j];
  }
}

MagnitudeCode QuantizeMagnitude(double a, const EcupqTable& table) {
  if (!(a >= 0.0) || !std::isfinite(a))
    throw InvalidArgument("magnitude must be finite and non-negative");
  MagnitudeCode code;
  if (a < table.top()) {
    code.index1 = EcupqCell(a, table);
  } else if (a < kOutlierThreshold) {
    const int raw = static_cast<int>(std::floor(std::pow(a, 0.75) + 0.5));
    code.index1 = std::min(raw, kEscapeIndex) + kNonlinearOffset;
  } else {
    code.index1 = kEscapeIndex;
    const double r = std::round(a);
    code.index2 = static_cast<int>(
        std::clamp(r, static_cast<double>(kMinOutlier),
                   static_cast<double>(kMaxOutlier)));
  }
  return code;
}

double DequantizeMagnitude(const MagnitudeCode& code, const EcupqTable& table) {
  if (code.index1 < 0 || code.index1 > kMaxIndex1)
    throw InvalidArgument("magnitude index1 out of range: " +
                          std::to_string(code.index1));
  if (code.index1 < kEscapeIndex) return table.levels[code.index1];
  if (code.index1 == kEscapeIndex) {
    if (!code.index2) throw InvalidArgument("escape index1 without index2");
    return static_cast<double>(*code.index2);
  }
  // The lowest companded cell would reconstruct below the region floor; hold
  // it at the floor so requantization stays in the companded region.
  const double raw = static_cast<double>(code.index1 - kNonlinearOffset);
  return std::max(std::pow(raw, 4.0 / 3.0), table.top());
}

int PhaseCells(int index1, bool high_contrast, const PhaseCellSets& sets) {
  const int j = std::clamp(index1, 0, kEcupqCells - 1);
  return high_contrast ? sets.high[j] : sets.low[j];
}

int PhaseBits(int cells) {
  if (!IsPowerOfTwo(cells))
    throw InvalidArgument("phase cell count must be a power of two");
  int bits = 0;
  while ((1 << bits) < cells) ++bits;
  return bits;
}

double WrapPhase(double theta) {
  double w = std::remainder(theta, 2.0 * kPi);
  if (w >= kPi) w -= 2.0 * kPi;
  return w;
}

int QuantizePhase(double theta, int cells) {
  if (cells < 1) throw InvalidArgument("phase cell count must be >= 1");
  if (!std::isfinite(theta)) throw InvalidArgument("phase must be finite");
  const double u = (WrapPhase(theta) + kPi) * cells / (2.0 * kPi);
  const int idx = static_cast<int>(std::floor(u));
  return ((idx % cells) + cells) % cells;
}

double DequantizePhase(int index, int cells) {
  if (cells < 1) throw InvalidArgument("phase cell count must be >= 1");
  if (cells == 1) return 0.0;
  return -kPi + (index + 0.5) * 2.0 * kPi / cells;
}

FerProfile ComputeFer(const FrequencyEnvelope& env, const BandLayout& layout,
                      double threshold) {
  if (env.values_db.size() < layout.num_bins())
    throw InvalidArgument("envelope shorter than band layout");
  const std::size_t nb = layout.size();
  const double floor =
      *std::min_element(env.values_db.begin(), env.values_db.end());
  std::vector<double> peak(nb, 0.0);
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    double m = 0.0;
    for (std::size_t f = layout.begin(b); f < layout.end(b); ++f)
      m = std::max(m, env.values_db[f] - floor);
    peak[b] = m;
    total += m;
  }
  FerProfile out;
  out.threshold = threshold;
  out.fer.resize(nb);
  out.high_contrast.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    out.fer[b] = total > 0.0 ? peak[b] / total : 1.0 / static_cast<double>(nb);
    out.high_contrast[b] = out.fer[b] > threshold;
  }
  return out;
}

std::size_t CoefficientCodes::PhaseBitCount() const {
  std::size_t bits = 0;
  for (int c : cells) bits += static_cast<std::size_t>(PhaseBits(c));
  return bits;
}

CoefficientCodes PolarQuantizer::Quantize(std::span<const Complex> coeffs,
                                          bool high_contrast,
                                          bool first_is_real) const {
  CoefficientCodes out;
  const std::size_t n = coeffs.size();
  out.index1.resize(n);
  out.phase.resize(n);
  out.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MagnitudeCode m = QuantizeMagnitude(std::abs(coeffs[i]), *table);
    out.index1[i] = m.index1;
    if (m.index2) out.index2.push_back(*m.index2);
    if (i == 0 && first_is_real) {
      out.cells[i] = m.index1 == 0 ? 1 : 2;
      out.phase[i] = (m.index1 != 0 && coeffs[i].real() < 0.0) ? 1 : 0;
    } else {
      out.cells[i] = PhaseCells(m.index1, high_contrast, sets);
      out.phase[i] = out.cells[i] == 1 ? 0
                                       : QuantizePhase(std::arg(coeffs[i]),
                                                       out.cells[i]);
    }
  }
  return out;
}

std::size_t PolarQuantizer::QuantizeIndices(std::span<const Complex> coeffs,
                                            double scale, bool high_contrast,
                                            bool first_is_real,
                                            std::vector<int>& index1) const {
  index1.resize(coeffs.size());
  std::size_t phase_bits = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int idx = QuantizeMagnitude(std::abs(coeffs[i]) * scale, *table).index1;
    index1[i] = idx;
    if (i == 0 && first_is_real)
      phase_bits += idx == 0 ? 0 : 1;
    else
      phase_bits += static_cast<std::size_t>(
          PhaseBits(PhaseCells(idx, high_contrast, sets)));
  }
  return phase_bits;
}

std::vector<Complex> PolarQuantizer::Dequantize(const CoefficientCodes& codes,
                                                bool first_is_real) const {
  const std::size_t n = codes.index1.size();
  std::vector<Complex> out(n);
  std::size_t esc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    MagnitudeCode m{codes.index1[i], std::nullopt};
    if (m.index1 == kEscapeIndex) {
      if (esc >= codes.index2.size())
        throw InvalidArgument("missing escape value for index1 = 8");
      m.index2 = codes.index2[esc++];
    }
    const double mag = DequantizeMagnitude(m, *table);
    if (i == 0 && first_is_real) {
      out[i] = Complex(codes.phase[i] ? -mag : mag, 0.0);
    } else {
      out[i] = std::polar(mag, DequantizePhase(codes.phase[i], codes.cells[i]));
    }
  }
  return out;
}

std::vector<int> PolarQuantizer::CellsFor(std::span<const int> index1,
                                          bool high_contrast,
                                          bool first_is_real) const {
  std::vector<int> cells(index1.size());
  for (std::size_t i = 0; i < index1.size(); ++i) {
    if (i == 0 && first_is_real)
      cells[i] = index1[i] == 0 ? 1 : 2;
    else
      cells[i] = PhaseCells(index1[i], high_contrast, sets);
  }
  return cells;
}

}  // namespace uns
