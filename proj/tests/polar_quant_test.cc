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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "uns/errors.h"
#include "uns/polar_quant.h"

namespace uns {
namespace {

constexpr double kPi = std::numbers::pi;

FrequencyEnvelope BlockEnvelope(const BandLayout& layout, const std::vector<double>& band_db) {
  FrequencyEnvelope env;
  env.values_db.assign(layout.num_bins() + 1, 0.0);
  for (std::size_t b = 0; b < layout.size(); ++b)
    for (std::size_t f = layout.begin(b); f < layout.end(b); ++f) env.values_db[f] = band_db[b];
  env.values_db.back() = band_db.back();
  for (double db : env.values_db) env.values.push_back(std::pow(10.0, db / 20.0));
  return env;
}

// Largest reconstruction error the cell containing `a` allows.
double CellBound(double a, const EcupqTable& t) {
  if (a < t.top()) {
    for (int j = 0; j < kEcupqCells - 1; ++j)
      if (a < t.thresholds[j]) return t.thresholds[j] - (j == 0 ? 0.0 : t.thresholds[j - 1]);
  }
  if (a < kOutlierThreshold) {
    const double raw = std::floor(std::pow(a, 0.75) + 0.5);
    return 4.0 / 3.0 * std::cbrt(raw + 0.5);
  }
  return a >= 17.5 ? 0.5 : kMinOutlier - kOutlierThreshold;
}

TEST_SUITE("polar_quant") {

TEST_CASE("FER of a flat envelope is low contrast everywhere") {
  const BandLayout layout;
  const auto fer = ComputeFer(BlockEnvelope(layout, std::vector<double>(8, 3.0)), layout);
  for (std::size_t b = 0; b < 8; ++b) {
    CHECK(fer.fer[b] == doctest::Approx(0.125));
    CHECK_FALSE(fer.high_contrast[b]);
  }
}

TEST_CASE("FER of a single dominant band") {
  const BandLayout layout;
  const auto fer = ComputeFer(BlockEnvelope(layout, {70, 0, 0, 0, 0, 0, 0, 0}), layout);
  CHECK(fer.fer[0] == doctest::Approx(1.0));
  CHECK(fer.high_contrast[0]);
  for (std::size_t b = 1; b < 8; ++b) CHECK(fer.fer[b] == 0.0);
}

TEST_CASE("FER sums to one on random models") {
  const BandLayout layout;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(16);
    for (double& v : a) v = u(rng) / 4.0;
    const auto fer = ComputeFer(ComputeFrequencyEnvelope(a), layout);
    double sum = 0.0;
    for (double v : fer.fer) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("FER is equivariant under band relabeling") {
  BandLayout layout;
  layout.upper_edges = {64, 128, 192, 256, 320, 384, 448, 512};
  const std::vector<double> db{5, 12, -3, 0, 20, 7, 1, 9};
  std::vector<std::size_t> perm{3, 0, 7, 1, 6, 2, 5, 4};
  std::vector<double> permuted(8);
  for (std::size_t b = 0; b < 8; ++b) permuted[b] = db[perm[b]];
  // Keep the shared floor bin equal in both envelopes.
  auto env_a = BlockEnvelope(layout, db);
  auto env_b = BlockEnvelope(layout, permuted);
  env_a.values_db.back() = env_b.values_db.back() = -3.0;
  const auto fa = ComputeFer(env_a, layout), fb = ComputeFer(env_b, layout);
  for (std::size_t b = 0; b < 8; ++b) CHECK(fb.fer[b] == doctest::Approx(fa.fer[perm[b]]));
}

TEST_CASE("magnitude regions") {
  const EcupqTable& t = DefaultEcupqTable();
  CHECK(QuantizeMagnitude(0.0, t).index1 == 0);
  CHECK(DequantizeMagnitude({0, std::nullopt}, t) == 0.0);

  const MagnitudeCode ten = QuantizeMagnitude(10.0, t);
  CHECK(ten.index1 == 12);
  CHECK_FALSE(ten.index2.has_value());
  CHECK(DequantizeMagnitude(ten, t) == doctest::Approx(std::pow(6.0, 4.0 / 3.0)));
  CHECK(DequantizeMagnitude(ten, t) == doctest::Approx(10.903).epsilon(1e-4));

  const MagnitudeCode twenty = QuantizeMagnitude(20.0, t);
  CHECK(twenty.index1 == 8);
  CHECK(twenty.index2 == 20);
  CHECK(DequantizeMagnitude(twenty, t) == 20.0);
  CHECK(DequantizeMagnitude({8, 25}, t) == 25.0);

  CHECK(kOutlierThreshold == doctest::Approx(17.34703).epsilon(1e-6));
  CHECK(QuantizeMagnitude(1e9, t).index2 == kMaxOutlier);
  CHECK_THROWS_AS(QuantizeMagnitude(-1.0, t), InvalidArgument);
  CHECK_THROWS_AS(DequantizeMagnitude({15, std::nullopt}, t), InvalidArgument);
  CHECK_THROWS_AS(DequantizeMagnitude({8, std::nullopt}, t), InvalidArgument);
}

TEST_CASE("every index1 value decodes and regions do not overlap") {
  const EcupqTable& t = DefaultEcupqTable();
  double prev = -1.0;
  for (int i : {0, 1, 2, 3, 4, 5, 6}) {
    const double v = DequantizeMagnitude({i, std::nullopt}, t);
    CHECK(v > prev);
    CHECK(v < t.top());
    prev = v;
  }
  for (int i = 9; i <= kMaxIndex1; ++i) {
    const double v = DequantizeMagnitude({i, std::nullopt}, t);
    CHECK(v >= t.top());
    CHECK(v < kOutlierThreshold);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("magnitude round trip within the cell and requantization fixpoint") {
  const EcupqTable& t = DefaultEcupqTable();
  std::mt19937_64 rng(99);
  std::exponential_distribution<double> e(0.15);
  for (int i = 0; i < 100000; ++i) {
    const double a = e(rng);
    const MagnitudeCode c = QuantizeMagnitude(a, t);
    const double r = DequantizeMagnitude(c, t);
    REQUIRE(std::abs(r - a) <= CellBound(a, t) + 1e-12);
    REQUIRE(QuantizeMagnitude(r, t) == c);
  }
}

TEST_CASE("phase cell sets") {
  const PhaseCellSets sets;
  CHECK(PhaseCells(0, true, sets) == 1);
  CHECK(PhaseCells(0, false, sets) == 1);
  CHECK(PhaseCells(7, true, sets) == 64);
  CHECK(PhaseCells(7, false, sets) == 32);
  CHECK(PhaseCells(12, true, sets) == 64);
  CHECK(PhaseCells(8, false, sets) == 32);
  for (int n : {1, 2, 4, 8, 16, 32, 64}) CHECK((1 << PhaseBits(n)) == n);
  CHECK_THROWS_AS(PhaseBits(12), InvalidArgument);
}

TEST_CASE("phase quantizer grid") {
  CHECK(QuantizePhase(1.3, 1) == 0);
  CHECK(DequantizePhase(0, 1) == 0.0);
  CHECK(QuantizePhase(0.0, 16) == 8);
  CHECK(DequantizePhase(8, 16) == doctest::Approx(kPi / 16));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int n = 4; n <= 64; n *= 2) {
    for (int i = 0; i < 5000; ++i) {
      const double th = u(rng);
      const int idx = QuantizePhase(th, n);
      REQUIRE(idx >= 0);
      REQUIRE(idx < n);
      const double d = std::abs(std::remainder(DequantizePhase(idx, n) - th, 2 * kPi));
      REQUIRE(d <= kPi / n + 1e-12);
    }
  }
}

TEST_CASE("default table matches a fresh design") {
  const EcupqDesign d = DesignEcupqTable();
  const EcupqTable& t = DefaultEcupqTable();
  CHECK(t.version == d.table.version);
  for (int j = 0; j < kEcupqCells - 1; ++j) {
    CHECK(t.thresholds[j] == doctest::Approx(d.table.thresholds[j]).epsilon(1e-9));
    CHECK(t.levels[j] == doctest::Approx(d.table.levels[j]).epsilon(1e-9));
  }
  CHECK(t.thresholds[6] == kEcupqTopThreshold);
  CHECK(t.levels[0] == 0.0);
  for (int j = 1; j < kEcupqCells; ++j) CHECK(t.levels[j] > t.levels[j - 1]);
}

TEST_CASE("designed table rate and distortion by quadrature") {
  const EcupqDesign d = DesignEcupqTable();
  const std::vector<int> cells{1, 8, 16, 16, 32, 32, 64, 64};
  const auto perf = oracle::PolarQuadrature(d.table.thresholds, d.table.levels, cells);
  CHECK(perf.rate_bits == doctest::Approx(2.495).epsilon(0.05 / 2.495));
  CHECK(perf.rate_bits == doctest::Approx(d.entropy_bits).epsilon(1e-5));
  CHECK(perf.mse == doctest::Approx(d.mse).epsilon(1e-5));

  // Eight-level uniform quantizer on [0, 5.056] with the same phase sets.
  const double step = kEcupqTopThreshold / 8.0;
  std::vector<double> thr(8), lev(8);
  for (int j = 0; j < 8; ++j) {
    thr[j] = j == 7 ? 1e9 : (j + 1) * step;
    lev[j] = (j + 0.5) * step;
  }
  const auto uniform = oracle::PolarQuadrature(thr, lev, cells);
  CHECK(perf.mse < uniform.mse);
}

TEST_CASE("design rejects impossible targets") {
  CHECK_THROWS_AS(DesignEcupqTable(-1.0), InvalidArgument);
  CHECK_THROWS_AS(DesignEcupqTable(50.0), EcupqDesignError);
}

TEST_CASE("polar quantizer codes real edge bins with a sign") {
  PolarQuantizer q{&DefaultEcupqTable(), {}};
  const std::vector<Complex> c{Complex(-3.0, 0.0), Complex(0.0, 2.0), Complex(0.0, 0.0)};
  const CoefficientCodes codes = q.Quantize(c, true, true);
  CHECK(codes.cells[0] == 2);
  CHECK(codes.phase[0] == 1);
  CHECK(codes.cells[2] == 1);
  const auto back = q.Dequantize(codes, true);
  CHECK(back[0].real() < 0.0);
  CHECK(back[0].imag() == 0.0);
  CHECK(back[2] == Complex(0.0, 0.0));
  CHECK(q.CellsFor(codes.index1, true, true) == codes.cells);
  std::vector<int> idx;
  CHECK(q.QuantizeIndices(c, 1.0, true, true, idx) == codes.PhaseBitCount());
  CHECK(idx == codes.index1);
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
