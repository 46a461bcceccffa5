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

// Linear prediction: autocorrelation, Levinson-Durbin (real and complex),
// bandwidth expansion, LSF conversion, scalar LPC quantizers and the
// frequency envelope derived from a quantized model.

#ifndef UNS_LP_H_
#define UNS_LP_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uns {

using Complex = std::complex<double>;

// Prediction-error filter A(z) = 1 + sum_k coeffs[k-1] z^-k.
struct LpModel {
  std::vector<double> coeffs;
  double error = 0.0;      // residual energy of the recursion
  bool clamped = false;    // a reflection coefficient was clamped

  std::size_t order() const { return coeffs.size(); }
};

struct ComplexLpModel {
  std::vector<Complex> coeffs;
  double error = 0.0;
  bool clamped = false;

  std::size_t order() const { return coeffs.size(); }
};

struct FrequencyEnvelope {
  std::vector<double> values;     // H(f) = 1 / |A(e^{jw_f})|
  std::vector<double> values_db;  // 20 log10 H(f)
  bool clamped = false;
};

// Uniform scalar LSF quantizer (stand-in for a trained VQ).
struct LsfQuantizer {
  double step = 0.01 * 3.14159265358979323846;
  double min_gap = 1e-3;

  int MaxIndex() const;
};

// Per-coefficient polar scalar quantizer for complex LPC.
struct ComplexLpcQuantizer {
  double step_db = 0.5;
  double min_db = -60.0;
  double max_db = 20.0;
  int phase_cells = 64;

  // Magnitude indices run 0..MaxMagIndex(); kZeroCell marks a zero coefficient.
  static constexpr int kZeroCell = -1;
  int MaxMagIndex() const;
};

struct QuantizedLpc {
  std::vector<int> indices;        // LSF indices (real model)
  std::vector<int> mag_indices;    // complex model magnitudes
  std::vector<int> phase_indices;  // complex model phases
  std::size_t bits_used = 0;
};

std::vector<double> Autocorr(std::span<const double> x, std::size_t max_lag);
// r[k] = sum_t x[t] conj(x[t-k]).
std::vector<Complex> Autocorr(std::span<const Complex> x, std::size_t max_lag);

// Reflection coefficients beyond this magnitude are clamped.
inline constexpr double kMaxReflection = 0.999;

// Levinson-Durbin. Throws DegenerateInput when r[0] <= 0.
LpModel Levinson(std::span<const double> r, std::size_t order);
ComplexLpModel Levinson(std::span<const Complex> r, std::size_t order);

// Adds the 1e-9 r[0] white-noise floor, then runs the recursion. A
// zero-energy input yields the all-zero (flat) model instead of throwing.
LpModel AnalyzeLp(std::span<const double> x, std::size_t order);
ComplexLpModel AnalyzeLp(std::span<const Complex> x, std::size_t order);

// a_k <- gamma^k a_k.
LpModel BandwidthExpand(const LpModel& m, double gamma);
ComplexLpModel BandwidthExpand(const ComplexLpModel& m, double gamma);

// Step-down recursion; true when every reflection coefficient is < 1 in
// magnitude (all zeros of A(z) strictly inside the unit circle).
bool IsMinimumPhase(std::span<const double> coeffs);
bool IsMinimumPhase(std::span<const Complex> coeffs);

// Throws InvalidArgument when the model is not minimum phase.
std::vector<double> LpcToLsf(std::span<const double> coeffs);
std::vector<double> LsfToLpc(std::span<const double> lsf);

QuantizedLpc QuantizeLsf(std::span<const double> lsf, const LsfQuantizer& q);
std::vector<double> DequantizeLsf(const QuantizedLpc& code,
                                  const LsfQuantizer& q);

QuantizedLpc QuantizeComplexLpc(std::span<const Complex> coeffs,
                                const ComplexLpcQuantizer& q);
std::vector<Complex> DequantizeComplexLpc(const QuantizedLpc& code,
                                          const ComplexLpcQuantizer& q);

// Envelope evaluated at bins 0..n_bins-1 of a 2(n_bins-1)-point DFT grid.
FrequencyEnvelope ComputeFrequencyEnvelope(std::span<const double> coeffs,
                                           std::size_t n_bins = 513);

}  // namespace uns

#endif  // UNS_LP_H_
