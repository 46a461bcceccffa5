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

#include "uns/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uns/errors.h"
#include "uns/lp.h"
#include "uns/noise_shaping.h"
#include "uns/transforms.h"

namespace uns {

namespace {

double ToDb(double energy) {
  return energy > 0.0 ? std::max(kEnergyFloorDb, 10.0 * std::log10(energy))
                      : kEnergyFloorDb;
}

std::vector<double> RealPredictionError(std::span<const double> c,
                                        std::span<const double> a,
                                        std::size_t start) {
  std::vector<double> e(c.begin(), c.end());
  for (std::size_t f = start; f < c.size(); ++f) {
    double acc = c[f];
    for (std::size_t k = 1; k <= a.size() && k <= f; ++k) acc += a[k - 1] * c[f - k];
    e[f] = acc;
  }
  return e;
}

double Energy(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

SegSnrReport SegSnr(std::span<const double> ref, std::span<const double> dec,
                    std::size_t segment_len, double lo, double hi) {
  if (ref.size() != dec.size())
    throw InvalidArgument("segSNR needs signals of equal length");
  if (segment_len == 0 || !(lo < hi))
    throw InvalidArgument("invalid segSNR parameters");
  SegSnrReport r;
  r.segment_len = segment_len;
  r.clamp_lo_db = lo;
  r.clamp_hi_db = hi;
  double total_noise = 0.0;
  for (std::size_t b = 0; b < ref.size(); b += segment_len) {
    const std::size_t e = std::min(ref.size(), b + segment_len);
    double sig = 0.0, noise = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      sig += ref[i] * ref[i];
      noise += (ref[i] - dec[i]) * (ref[i] - dec[i]);
    }
    total_noise += noise;
    if (sig < 1e-12) continue;
    const double snr = noise > 0.0 ? 10.0 * std::log10(sig / noise) : hi;
    r.segments_db.push_back(std::clamp(snr, lo, hi));
  }
  if (r.segments_db.empty()) {
    r.mean_db = total_noise < 1e-12 ? hi : lo;
  } else {
    double s = 0.0;
    for (double v : r.segments_db) s += v;
    r.mean_db = s / static_cast<double>(r.segments_db.size());
  }
  return r;
}

TnsComparisonReport TnsDomainExperiment(std::span<const double> pcm,
                                        std::span<const std::size_t> onsets,
                                        const TnsExperimentOptions& opt) {
  const std::size_t n = opt.frame_len;
  if (n < 4 || n % 2 != 0)
    throw InvalidArgument("TNS experiment frame length must be even");
  if (pcm.size() < 2 * n)
    throw InvalidArgument("signal shorter than two frames");
  const std::size_t hop = n / 2;
  const std::size_t segments = (pcm.size() + hop - 1) / hop;
  // One hop of zeros in front so every input sample sees two frames.
  std::vector<double> padded(hop + segments * hop + hop, 0.0);
  std::copy(pcm.begin(), pcm.end(), padded.begin() + static_cast<std::ptrdiff_t>(hop));
  const std::size_t frames = segments + 1;
  const std::vector<double> w = SineWindow(n);

  std::vector<double> out_mdct(padded.size(), 0.0), out_dft(padded.size(), 0.0);
  std::vector<double> seg(n);
  for (std::size_t m = 0; m < frames; ++m) {
    const std::size_t at = m * hop;
    for (std::size_t i = 0; i < n; ++i) seg[i] = padded[at + i] * w[i];

    std::vector<double> c = Mdct(seg);
    if (opt.order > 0 && Energy(c) > 0.0)
      c = RealPredictionError(c, AnalyzeLp(c, opt.order).coeffs, opt.start_bin);
    const std::vector<double> ya = Imdct(c);

    AnalysisFrame f{m, seg};
    Spectrum s = Dft(f);
    if (opt.order > 0) {
      const auto x = std::span<const Complex>(s.bins).first(hop);
      double e = 0.0;
      for (const Complex& v : x) e += std::norm(v);
      if (e > 0.0)
        s.bins = CtnsFilter(s.bins, AnalyzeLp(x, opt.order).coeffs, opt.start_bin);
    }
    const std::vector<double> yb = Idft(s).samples;

    for (std::size_t i = 0; i < n; ++i) {
      out_mdct[at + i] += ya[i] * w[i];
      out_dft[at + i] += yb[i] * w[i];
    }
  }

  TnsComparisonReport r;
  r.order = opt.order;
  double sum_a = 0.0, sum_b = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t b = hop + s * hop;
    const auto a = std::span<const double>(out_mdct).subspan(b, hop);
    const auto d = std::span<const double>(out_dft).subspan(b, hop);
    r.energy_mdct_db.push_back(ToDb(Energy(a)));
    r.energy_dft_db.push_back(ToDb(Energy(d)));
    const bool t = std::any_of(onsets.begin(), onsets.end(), [&](std::size_t o) {
      return o >= s * hop && o < (s + 1) * hop;
    });
    r.transient.push_back(t);
    if (t) {
      sum_a += r.energy_mdct_db.back();
      sum_b += r.energy_dft_db.back();
      ++count;
    }
  }
  if (count > 0) {
    r.mean_transient_mdct_db = sum_a / static_cast<double>(count);
    r.mean_transient_dft_db = sum_b / static_cast<double>(count);
  }
  return r;
}

std::string TnsComparisonCsv(const TnsComparisonReport& r) {
  std::ostringstream os;
  os << "frame,energy_mdct_db,energy_dft_db,transient\n";
  char line[96];
  for (std::size_t i = 0; i < r.energy_mdct_db.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.4f,%.4f,%d\n", i, r.energy_mdct_db[i],
                  r.energy_dft_db[i], r.transient[i] ? 1 : 0);
    os << line;
  }
  return os.str();
}

std::string FrameDiagnosticsCsv(std::span<const FrameRecord> records) {
  std::ostringstream os;
  os << "frame,gain_db,candidate,flag,unstable,frame_bits,spectral_bits,"
        "estimated_bits";
  const std::size_t bands = records.empty() ? 0 : records[0].scale_factors.size();
  for (std::size_t b = 0; b < bands; ++b) os << ",sf" << b;
  os << '\n';
  char line[160];
  for (const FrameRecord& r : records) {
    std::snprintf(line, sizeof line, "%zu,%.4f,%d,%d,%d,%zu,%.2f,%.2f", r.index,
                  r.prediction_gain_db, r.ctns_candidate ? 1 : 0,
                  r.ctns_flag ? 1 : 0, r.ctns_unstable ? 1 : 0,
                  r.frame_bytes * 8, r.spectral_bits, r.estimated_bits);
    os << line;
    for (int g : r.scale_factors) os << ',' << g;
    os << '\n';
  }
  return os.str();
}

double PostAttackNoiseEnergy(std::span<const double> ref,
                             std::span<const double> dec,
                             std::span<const std::size_t> onsets,
                             std::size_t window) {
  if (ref.size() != dec.size())
    throw InvalidArgument("noise measurement needs signals of equal length");
  double e = 0.0;
  for (std::size_t o : onsets)
    for (std::size_t i = o; i < std::min(ref.size(), o + window); ++i)
      e += (dec[i] - ref[i]) * (dec[i] - ref[i]);
  return e;
}

}  // namespace uns
