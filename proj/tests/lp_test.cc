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
#include "uns/lp.h"

namespace uns {
namespace {

constexpr double kPi = std::numbers::pi;

// Step-up recursion from reflection coefficients; a stable model for any
// |k| < 1.
template <typename T>
std::vector<T> StepUp(const std::vector<T>& k) {
  std::vector<T> a;
  for (const T& km : k) {
    std::vector<T> next(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if constexpr (std::is_same_v<T, Complex>)
        next[i] = a[i] + km * std::conj(a[a.size() - 1 - i]);
      else
        next[i] = a[i] + km * a[a.size() - 1 - i];
    }
    next.back() = km;
    a = std::move(next);
  }
  return a;
}

std::vector<double> RandomStableReal(std::size_t order, std::mt19937_64& rng,
                                     double max_k = 0.9) {
  std::uniform_real_distribution<double> u(-max_k, max_k);
  std::vector<double> k(order);
  for (double& v : k) v = u(rng);
  return StepUp(k);
}

std::vector<double> ArOne(std::size_t n, double pole, std::uint64_t seed) {
  const auto e = oracle::Gaussian(n, seed);
  std::vector<double> x(n);
  double prev = 0.0;
  for (std::size_t t = 0; t < n; ++t) prev = x[t] = pole * prev + e[t];
  return x;
}

TEST_SUITE("lp") {

TEST_CASE("autocorrelation of a delta") {
  std::vector<double> x(32, 0.0);
  x[0] = 1.0;
  const auto r = Autocorr(x, 8);
  CHECK(r[0] == 1.0);
  for (std::size_t k = 1; k <= 8; ++k) CHECK(r[k] == 0.0);
}

TEST_CASE("autocorrelation of AR(1) noise") {
  const auto x = ArOne(1'000'000, 0.9, 42);
  const auto r = Autocorr(x, 2);
  CHECK(r[1] / r[0] == doctest::Approx(0.9).epsilon(0.02 / 0.9));
}

TEST_CASE("complex exponential autocorrelation keeps full modulus") {
  const std::size_t n = 4096;
  std::vector<Complex> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = std::polar(1.0, 0.37 * t);
  const auto r = Autocorr(x, 16);
  // Biased estimate: lag k sums n - k unit products.
  for (std::size_t k = 0; k <= 16; ++k) {
    CHECK(std::abs(r[k]) == doctest::Approx(static_cast<double>(n - k)));
    CHECK(std::abs(r[k]) / r[0].real() > 1.0 - 16.0 / n - 1e-12);
  }
}

TEST_CASE("autocorrelation needs more samples than lags") {
  std::vector<double> x(4, 1.0);
  CHECK_THROWS_AS(Autocorr(x, 4), InvalidArgument);
}

TEST_CASE("Levinson on an AR(1) sequence") {
  std::vector<double> r(17);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::pow(0.9, k);
  const LpModel m = Levinson(r, 16);
  const auto ref = oracle::NormalEquations<double>(r, 16);
  CHECK(m.coeffs[0] == doctest::Approx(-0.9));
  CHECK(ref[0] == doctest::Approx(-0.9));
  for (std::size_t k = 1; k < 16; ++k) CHECK(std::abs(m.coeffs[k]) < 1e-9);
}

TEST_CASE("Levinson on white input") {
  std::vector<double> r(9, 0.0);
  r[0] = 1.0;
  const LpModel m = Levinson(r, 8);
  for (double a : m.coeffs) CHECK(a == 0.0);
  CHECK(m.error == doctest::Approx(1.0));
}

TEST_CASE("Levinson matches direct normal-equation solves") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a_true = RandomStableReal(6, rng, 0.7);
    // Filter noise through the model to get a well-conditioned r.
    const auto e = oracle::Gaussian(20000, 100 + trial);
    std::vector<double> x(e.size(), 0.0);
    for (std::size_t t = 0; t < x.size(); ++t) {
      double v = e[t];
      for (std::size_t k = 0; k < a_true.size() && k < t; ++k) v -= a_true[k] * x[t - 1 - k];
      x[t] = v;
    }
    for (std::size_t order : {1u, 4u, 9u, 16u}) {
      const auto r = Autocorr(x, order);
      const auto got = Levinson(r, order).coeffs;
      const auto ref = oracle::NormalEquations<double>(r, order);
      for (std::size_t k = 0; k < order; ++k) REQUIRE(std::abs(got[k] - ref[k]) < 1e-8);
    }
  }
}

TEST_CASE("complex Levinson recovers a rotated AR(1) pole") {
  const double theta = 0.7;
  const Complex pole = std::polar(0.9, theta);
  const auto n = oracle::ComplexGaussian(200000, 5);
  std::vector<Complex> x(n.size());
  Complex prev = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) prev = x[t] = pole * prev + n[t];
  const auto r = Autocorr(x, 4);
  const ComplexLpModel m = Levinson(r, 4);
  CHECK(std::abs(m.coeffs[0] + pole) < 0.01);
  const auto ref = oracle::NormalEquations<Complex>(r, 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(m.coeffs[k] - ref[k]) < 1e-8);
}

TEST_CASE("prediction error is non-increasing in order") {
  const auto x = ArOne(5000, 0.6, 3);
  const auto r = Autocorr(x, 16);
  double prev = r[0];
  for (std::size_t p = 1; p <= 16; ++p) {
    const double e = Levinson(r, p).error;
    CHECK(e <= prev * (1.0 + 1e-12));
    prev = e;
  }
}

TEST_CASE("LP analysis of a frame is minimum phase") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = oracle::Gaussian(1024, 300 + trial);
    // Mix in a strong tone; pure tones are the hard case.
    for (std::size_t t = 0; t < x.size(); ++t) x[t] = 1e-3 * x[t] + std::sin(0.05 * (trial + 1) * t);
    const LpModel m = AnalyzeLp(x, 16);
    CHECK(oracle::MaxPoleRadius<double>(m.coeffs) < 1.0);
    CHECK(IsMinimumPhase(std::span<const double>(m.coeffs)));
  }
}

TEST_CASE("bandwidth expansion") {
  LpModel m;
  m.coeffs = {-0.9};
  CHECK(BandwidthExpand(m, 0.98).coeffs[0] == doctest::Approx(-0.882));
  std::mt19937_64 rng(4);
  m.coeffs = RandomStableReal(6, rng);
  CHECK(BandwidthExpand(m, 1.0).coeffs == m.coeffs);
  const double r0 = oracle::MaxPoleRadius<double>(m.coeffs);
  const double r1 = oracle::MaxPoleRadius<double>(BandwidthExpand(m, 0.9).coeffs);
  CHECK(r1 == doctest::Approx(0.9 * r0).epsilon(1e-9));
}

TEST_CASE("minimum-phase test agrees with root finding") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(4);
    for (double& v : a) v = u(rng);
    const double radius = oracle::MaxPoleRadius<double>(a);
    if (std::abs(radius - 1.0) < 1e-6) continue;
    CHECK(IsMinimumPhase(std::span<const double>(a)) == (radius < 1.0));
    std::vector<Complex> c{Complex(a[0], a[1]), Complex(a[2], a[3])};
    const double rc = oracle::MaxPoleRadius<Complex>(c);
    if (std::abs(rc - 1.0) > 1e-6)
      CHECK(IsMinimumPhase(std::span<const Complex>(c)) == (rc < 1.0));
  }
}

TEST_CASE("LSFs of the flat order-2 model") {
  const std::vector<double> flat{0.0, 0.0};
  const auto lsf = LpcToLsf(flat);
  // P(z) = 1 + z^-3 and Q(z) = 1 - z^-3 without their trivial roots.
  const std::vector<Complex> p{0.0, 0.0, 1.0}, q{0.0, 0.0, -1.0};
  std::vector<double> ref;
  for (const auto& z : oracle::PolyRoots(p)) {
    const double w = std::arg(z);
    if (w > 1e-6 && w < kPi - 1e-6) ref.push_back(w);
  }
  for (const auto& z : oracle::PolyRoots(q)) {
    const double w = std::arg(z);
    if (w > 1e-6 && w < kPi - 1e-6) ref.push_back(w);
  }
  std::sort(ref.begin(), ref.end());
  REQUIRE(lsf.size() == 2);
  REQUIRE(ref.size() == 2);
  CHECK(lsf[0] == doctest::Approx(ref[0]));
  CHECK(lsf[1] == doctest::Approx(ref[1]));
  CHECK(lsf[0] == doctest::Approx(kPi / 3));
  CHECK(lsf[1] == doctest::Approx(2 * kPi / 3));
}

TEST_CASE("LSFs increase and round-trip on random stable models") {
  std::mt19937_64 rng(12);
  for (std::size_t order : {2u, 5u, 10u, 16u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = RandomStableReal(order, rng);
      const auto lsf = LpcToLsf(a);
      REQUIRE(lsf.size() == order);
      for (std::size_t i = 1; i < order; ++i) REQUIRE(lsf[i] > lsf[i - 1]);
      CHECK(lsf.front() > 0.0);
      CHECK(lsf.back() < kPi);
      const auto back = LsfToLpc(lsf);
      for (std::size_t i = 0; i < order; ++i) REQUIRE(std::abs(back[i] - a[i]) < 1e-8);
    }
  }
}

TEST_CASE("LSF conversion rejects unstable models") {
  const std::vector<double> unstable{-2.5, 1.5};
  CHECK_THROWS_AS(LpcToLsf(unstable), InvalidArgument);
}

TEST_CASE("scalar LSF quantizer grid") {
  const LsfQuantizer q;
  const std::vector<double> lsf{0.505 * kPi};
  const auto code = QuantizeLsf(lsf, q);
  CHECK(code.indices[0] == 51);
  CHECK(DequantizeLsf(code, q)[0] == doctest::Approx(0.51 * kPi));
  CHECK(q.MaxIndex() == 100);
}

TEST_CASE("LSF quantization of the flat model stays flat") {
  const LsfQuantizer q;
  const std::vector<double> flat(16, 0.0);
  const auto back = LsfToLpc(DequantizeLsf(QuantizeLsf(LpcToLsf(flat), q), q));
  // The 0.01 pi grid moves the evenly spaced flat LSFs by up to half a step,
  // which leaves ripple of about 1.8 dB.
  const auto env = ComputeFrequencyEnvelope(back);
  for (double db : env.values_db) CHECK(std::abs(db) < 2.0);
}

TEST_CASE("decoded LSF models are minimum phase and requantize to themselves") {
  const LsfQuantizer q;
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = RandomStableReal(16, rng, 0.98);
    const auto code = QuantizeLsf(LpcToLsf(a), q);
    const auto lsf = DequantizeLsf(code, q);
    for (std::size_t i = 1; i < lsf.size(); ++i) REQUIRE(lsf[i] - lsf[i - 1] >= q.min_gap * 0.999);
    const auto back = LsfToLpc(lsf);
    CHECK(oracle::MaxPoleRadius<double>(back) < 1.0);
    CHECK(QuantizeLsf(lsf, q).indices == QuantizeLsf(DequantizeLsf(QuantizeLsf(lsf, q), q), q).indices);
  }
}

TEST_CASE("complex LPC quantizer grid") {
  const ComplexLpcQuantizer q;
  CHECK(q.MaxMagIndex() == 160);
  const std::vector<Complex> c{Complex(0.0, 0.0), Complex(1.0, 0.0)};
  const auto code = QuantizeComplexLpc(c, q);
  CHECK(code.mag_indices[0] == ComplexLpcQuantizer::kZeroCell);
  CHECK(code.phase_indices[0] == 0);
  CHECK(code.mag_indices[1] == 120);
  const auto back = DequantizeComplexLpc(code, q);
  CHECK(back[0] == Complex(0.0, 0.0));
  CHECK(std::abs(back[1]) == doctest::Approx(1.0));
}

TEST_CASE("complex LPC phase error and fixpoint") {
  const ComplexLpcQuantizer q;
  const auto c = oracle::ComplexGaussian(2000, 17, 0.3);
  const auto code = QuantizeComplexLpc(c, q);
  const auto back = DequantizeComplexLpc(code, q);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (code.mag_indices[i] < 0) continue;
    double d = std::abs(std::remainder(std::arg(back[i]) - std::arg(c[i]), 2 * kPi));
    REQUIRE(d <= kPi / 64 + 1e-12);
  }
  const auto again = QuantizeComplexLpc(back, q);
  CHECK(again.mag_indices == code.mag_indices);
  CHECK(again.phase_indices == code.phase_indices);
}

TEST_CASE("frequency envelope") {
  const auto flat = ComputeFrequencyEnvelope(std::vector<double>(16, 0.0));
  for (double v : flat.values) CHECK(v == 1.0);
  const std::vector<double> a{-0.9};
  const auto env = ComputeFrequencyEnvelope(a);
  CHECK(env.values[0] == doctest::Approx(10.0));
  CHECK(env.values[512] == doctest::Approx(1.0 / 1.9));
  CHECK(env.values_db[0] == doctest::Approx(20.0));
}

TEST_CASE("bandwidth expansion smooths the envelope") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    LpModel m;
    m.coeffs = RandomStableReal(10, rng, 0.95);
    auto ratio = [](const FrequencyEnvelope& e) {
      const auto [lo, hi] = std::minmax_element(e.values.begin(), e.values.end());
      return *hi / *lo;
    };
    const double r1 = ratio(ComputeFrequencyEnvelope(m.coeffs));
    const double r2 = ratio(ComputeFrequencyEnvelope(BandwidthExpand(m, 0.9).coeffs));
    CHECK(r2 < r1);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
