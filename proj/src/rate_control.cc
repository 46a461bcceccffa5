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

#include "uns/rate_control.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "uns/errors.h"

namespace uns {

std::vector<std::vector<Complex>> SplitBands(std::span<const Complex> bins,
                                             const BandLayout& layout) {
  if (bins.size() != layout.num_bins())
    throw InvalidArgument("band split expects exactly the laid-out bins");
  std::vector<std::vector<Complex>> out(layout.size());
  for (std::size_t b = 0; b < layout.size(); ++b)
    out[b].assign(bins.begin() + static_cast<std::ptrdiff_t>(layout.begin(b)),
                  bins.begin() + static_cast<std::ptrdiff_t>(layout.end(b)));
  return out;
}

std::vector<Complex> JoinBands(std::span<const std::vector<Complex>> bands) {
  std::vector<Complex> out;
  for (const auto& b : bands) out.insert(out.end(), b.begin(), b.end());
  return out;
}

double EstimateBits(std::span<const int> index1, std::size_t phase_bits) {
  double bits = 0.0;
  for (std::size_t start = 0; start < index1.size(); start += kEntropyBlock) {
    const std::size_t len = std::min(kEntropyBlock, index1.size() - start);
    std::array<int, kEntropyBlock> sym{};
    std::array<int, kEntropyBlock> count{};
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const int s = index1[start + i];
      std::size_t j = 0;
      while (j < distinct && sym[j] != s) ++j;
      if (j == distinct) {
        sym[distinct] = s;
        ++distinct;
      }
      ++count[j];
    }
    for (std::size_t j = 0; j < distinct; ++j) {
      const double p = static_cast<double>(count[j]) / static_cast<double>(len);
      bits -= count[j] * std::log2(p);
    }
  }
  return bits + static_cast<double>(phase_bits);
}

double GainToScale(int gain_db) { return std::pow(10.0, -gain_db / 20.0); }

double BandBits(std::span<const Complex> band, double gain_db,
                const BandContext& ctx) {
  thread_local std::vector<int> index1;
  const double scale = std::pow(10.0, -gain_db / 20.0);
  const std::size_t phase_bits = ctx.quantizer->QuantizeIndices(
      band, scale, ctx.high_contrast, ctx.first_is_real, index1);
  return EstimateBits(index1, phase_bits);
}

ScaleFactorChoice FindScaleFactor(std::span<const Complex> band,
                                  int target_bits, const BandContext& ctx) {
  if (target_bits <= 0) throw InvalidArgument("band budget must be positive");
  const double target = static_cast<double>(target_bits);
  ScaleFactorChoice out;
  auto bits_at = [&](double g) { return BandBits(band, g, ctx); };

  if (bits_at(kMinGainDb) <= target) {
    out.gain_db = kMinGainDb;
    out.estimated_bits = bits_at(kMinGainDb);
    return out;
  }
  if (bits_at(kMaxGainDb) > target) {
    out.gain_db = kMaxGainDb;
    out.estimated_bits = bits_at(kMaxGainDb);
    out.overflow = true;
    return out;
  }
  // bits(lo) > target >= bits(hi)
  double lo = kMinGainDb, hi = kMaxGainDb;
  for (int it = 0; it < kGainSearchIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bits_at(mid) <= target)
      hi = mid;
    else
      lo = mid;
  }
  int g = std::clamp(static_cast<int>(std::ceil(hi)), kMinGainDb, kMaxGainDb);
  while (g < kMaxGainDb && bits_at(g) > target) ++g;
  while (g > kMinGainDb && bits_at(g - 1) <= target) --g;
  out.gain_db = g;
  out.estimated_bits = bits_at(g);
  out.overflow = out.estimated_bits > target;
  return out;
}

}  // namespace uns
