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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "uns/errors.h"
#include "uns/resample.h"
#include "uns/signals.h"

namespace uns {
namespace {

TEST_SUITE("resample") {

TEST_CASE("the core rate passes through untouched") {
  const TestSignal s = WhiteNoise(0.3, 0.5, 2);
  CHECK(ResampleToCore(s.pcm, kCoreRate) == s.pcm);
}

TEST_CASE("a 1 kHz tone at 48 kHz lands on the analytic sine") {
  const TestSignal s = Sinusoid(1000.0, 0.5, 1.0, 48000.0);
  const std::vector<double> y = ResampleToCore(s.pcm, 48000);
  CHECK(y.size() == 12800);
  double sig = 0.0, err = 0.0;
  // Skip the filter's edge transients.
  for (std::size_t n = 64; n + 64 < y.size(); ++n) {
    const double ref = 0.5 * std::cos(2.0 * std::numbers::pi * 1000.0 * n / 12800.0);
    sig += ref * ref;
    err += (y[n] - ref) * (y[n] - ref);
  }
  CHECK(10.0 * std::log10(sig / err) > 60.0);
}

TEST_CASE("upsampling from 8 kHz keeps the tone") {
  const TestSignal s = Sinusoid(440.0, 0.5, 1.0, 8000.0);
  const std::vector<double> y = ResampleToCore(s.pcm, 8000);
  CHECK(y.size() == 12800);
  double sig = 0.0, err = 0.0;
  for (std::size_t n = 64; n + 64 < y.size(); ++n) {
    const double ref = 0.5 * std::cos(2.0 * std::numbers::pi * 440.0 * n / 12800.0);
    sig += ref * ref;
    err += (y[n] - ref) * (y[n] - ref);
  }
  CHECK(10.0 * std::log10(sig / err) > 60.0);
}

TEST_CASE("DC survives within 1e-4") {
  for (std::uint32_t rate : {8000u, 16000u, 44100u, 48000u}) {
    const std::vector<double> x(rate, 0.3);
    const std::vector<double> y = ResampleToCore(x, rate);
    for (std::size_t n = 64; n + 64 < y.size(); ++n)
      REQUIRE(std::abs(y[n] - 0.3) < 1e-4);
  }
}

TEST_CASE("energy above the new Nyquist is removed") {
  const TestSignal s = Sinusoid(10000.0, 0.5, 1.0, 48000.0);
  const std::vector<double> y = ResampleToCore(s.pcm, 48000);
  double e = 0.0;
  for (std::size_t n = 64; n + 64 < y.size(); ++n) e += y[n] * y[n];
  CHECK(10.0 * std::log10(e / (0.125 * (y.size() - 128))) < -40.0);
}

TEST_CASE("unsupported rates are rejected") {
  const std::vector<double> x(100);
  CHECK_THROWS_AS(ResampleToCore(x, 96000), InvalidArgument);
  CHECK_THROWS_AS(ResampleToCore(x, 0), InvalidArgument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
