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

#include "uns/resample.h"

#include <cmath>
#include <numeric>

#include "uns/errors.h"

namespace uns {

namespace {

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

double Kaiser(double t, double half_width) {
  const double r = t / half_width;
  if (std::abs(r) > 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kResampleBeta * std::sqrt(1.0 - r * r)) /
         std::cyl_bessel_i(0.0, kResampleBeta);
}

}  // namespace

std::vector<double> Resample(std::span<const double> x, std::uint32_t in_rate,
                             std::uint32_t out_rate) {
  for (std::uint32_t r : {in_rate, out_rate})
    if (r < 8000 || r > 48000)
      throw InvalidArgument("unsupported sample rate " + std::to_string(r));
  if (in_rate == out_rate) return {x.begin(), x.end()};

  const std::uint64_t g = std::gcd(in_rate, out_rate);
  const std::uint64_t up = out_rate / g;    // L
  const std::uint64_t down = in_rate / g;   // M
  const double cutoff = std::min(1.0, static_cast<double>(out_rate) / in_rate);
  constexpr int kHalf = kResampleTaps / 2;

  // Phase p interpolates at fractional offset p / L past an input sample.
  std::vector<double> table(up * kResampleTaps);
  for (std::uint64_t p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(up);
    double sum = 0.0;
    for (int k = 0; k < kResampleTaps; ++k) {
      const double t = static_cast<double>(k - kHalf + 1) - frac;
      const double h = cutoff * Sinc(cutoff * t) * Kaiser(t, kHalf);
      table[p * kResampleTaps + k] = h;
      sum += h;
    }
    for (int k = 0; k < kResampleTaps; ++k) table[p * kResampleTaps + k] /= sum;
  }

  const std::uint64_t n_out = (x.size() * up + down - 1) / down;
  std::vector<double> y(n_out, 0.0);
  const auto n_in = static_cast<std::int64_t>(x.size());
  for (std::uint64_t n = 0; n < n_out; ++n) {
    const std::uint64_t pos = n * down;
    const auto base = static_cast<std::int64_t>(pos / up);
    const double* h = &table[(pos % up) * kResampleTaps];
    double acc = 0.0;
    for (int k = 0; k < kResampleTaps; ++k) {
      const std::int64_t i = base + k - kHalf + 1;
      if (i >= 0 && i < n_in) acc += h[k] * x[static_cast<std::size_t>(i)];
    }
    y[n] = acc;
  }
  return y;
}

}  // namespace uns
