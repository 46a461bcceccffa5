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

#include "uns/noise_shaping.h"

#include <algorithm>
#include <cmath>

#include "uns/errors.h"

namespace uns {

namespace {

void CheckEnvelope(std::size_t n, const FrequencyEnvelope& env) {
  if (env.values.size() != n)
    throw InvalidArgument("envelope length does not match spectrum");
  for (double v : env.values)
    if (!(v > 0.0)) throw InvalidArgument("envelope must be strictly positive");
}

}  // namespace

std::vector<Complex> FdnsForward(std::span<const Complex> bins,
                                 const FrequencyEnvelope& env) {
  CheckEnvelope(bins.size(), env);
  std::vector<Complex> out(bins.size());
  for (std::size_t f = 0; f < bins.size(); ++f) out[f] = bins[f] / env.values[f];
  return out;
}

std::vector<Complex> FdnsInverse(std::span<const Complex> residual,
                                 const FrequencyEnvelope& env) {
  CheckEnvelope(residual.size(), env);
  std::vector<Complex> out(residual.size());
  for (std::size_t f = 0; f < residual.size(); ++f)
    out[f] = residual[f] * env.values[f];
  return out;
}

std::vector<Complex> CtnsFilter(std::span<const Complex> x,
                                std::span<const Complex> coeffs,
                                std::size_t start_bin) {
  std::vector<Complex> e(x.begin(), x.end());
  if (x.empty()) return e;
  const std::size_t last = x.size() - 1;
  for (std::size_t f = start_bin; f < last; ++f) {
    Complex acc = x[f];
    for (std::size_t k = 1; k <= coeffs.size() && k <= f; ++k)
      acc += coeffs[k - 1] * x[f - k];
    e[f] = acc;
  }
  return e;
}

std::vector<Complex> CtnsUnfilter(std::span<const Complex> e,
                                  std::span<const Complex> coeffs,
                                  std::size_t start_bin) {
  std::vector<Complex> x(e.begin(), e.end());
  if (e.empty()) return x;
  const std::size_t last = e.size() - 1;
  for (std::size_t f = start_bin; f < last; ++f) {
    Complex acc = e[f];
    for (std::size_t k = 1; k <= coeffs.size() && k <= f; ++k)
      acc -= coeffs[k - 1] * x[f - k];
    x[f] = acc;
  }
  return x;
}

CtnsDecision PredictionGain(std::span<const Complex> x_fd,
                            std::span<const Complex> x_ct,
                            std::size_t start_bin, double threshold_db) {
  if (x_fd.size() != x_ct.size())
    throw InvalidArgument("prediction gain needs equal-length inputs");
  CtnsDecision d;
  d.threshold_db = threshold_db;
  if (x_fd.empty()) return d;
  double num = 0.0, den = 0.0;
  for (std::size_t f = start_bin; f + 1 < x_fd.size(); ++f) {
    num += std::norm(x_fd[f] - x_ct[f]);
    den += std::norm(x_fd[f]);
  }
  if (den > 0.0 && num > 0.0)
    d.gain_db = std::clamp(10.0 * std::log10(num / den), kGainFloorDb, kGainCeilDb);
  d.active = den > 0.0 && d.gain_db > threshold_db;
  return d;
}

}  // namespace uns
