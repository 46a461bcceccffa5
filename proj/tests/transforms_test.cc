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
#include "oracles.h"
#include "uns/errors.h"
#include "uns/transforms.h"

namespace uns {
namespace {

TEST_SUITE("transforms") {

TEST_CASE("raised-cosine window shape") {
  const WindowSpec spec;
  const std::vector<double> w = MakeWindow(spec);
  REQUIRE(w.size() == 1024);
  CHECK(w[512] == doctest::Approx(1.0));
  CHECK(w[128] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w[0] == 0.0);
  for (std::size_t i = 0; i < spec.overlap_len; ++i)
    CHECK(std::abs(w[i] + w[spec.hop() + i] - 1.0) < 1e-12);
}

TEST_CASE("complementarity holds for every overlap") {
  for (std::size_t ov : {1u, 2u, 64u, 255u, 256u, 512u}) {
    WindowSpec spec;
    spec.overlap_len = ov;
    const auto w = MakeWindow(spec);
    for (std::size_t i = 0; i < ov; ++i)
      REQUIRE(std::abs(w[i] + w[spec.hop() + i] - 1.0) < 1e-12);
    const auto a = AnalysisWindow(spec), s = SynthesisWindow(spec);
    for (std::size_t i = 0; i < w.size(); ++i)
      REQUIRE(std::abs(a[i] * s[i] - w[i]) < 1e-12);
  }
}

TEST_CASE("invalid overlap is rejected") {
  WindowSpec spec;
  spec.overlap_len = 0;
  CHECK_THROWS_AS(MakeWindow(spec), InvalidArgument);
  spec.overlap_len = 513;
  CHECK_THROWS_AS(MakeWindow(spec), InvalidArgument);
}

TEST_CASE("frame count and zero padding") {
  const WindowSpec spec;
  std::vector<double> x(2048, 1.0);
  const auto frames = FrameSignal(x, spec);
  REQUIRE(frames.size() == 3);
  // Third frame starts at 1536; samples past 2047 are zero.
  CHECK(frames[2].samples[511] != 0.0);
  CHECK(frames[2].samples[512] == 0.0);
  CHECK(NumFrames(12800, spec) == 17);
}

TEST_CASE("constant input frames equal the analysis window") {
  for (WindowSplit split : {WindowSplit::kSquareRoot, WindowSplit::kAnalysisOnly}) {
    WindowSpec spec;
    spec.split = split;
    const std::vector<double> x(4096, 1.0);
    const auto w = AnalysisWindow(spec);
    for (const auto& f : FrameSignal(x, spec))
      if (f.index < 3)
        for (std::size_t i = 0; i < w.size(); ++i) REQUIRE(f.samples[i] == w[i]);
  }
  CHECK(AnalysisWindow(WindowSpec{1024, 256, WindowSplit::kAnalysisOnly}) ==
        MakeWindow(WindowSpec{}));
}

TEST_CASE("frame and overlap-add reconstruct the interior") {
  const auto x = oracle::Gaussian(10000, 3);
  for (WindowSplit split : {WindowSplit::kSquareRoot, WindowSplit::kAnalysisOnly}) {
    WindowSpec spec;
    spec.split = split;
    const auto frames = FrameSignal(x, spec);
    std::vector<std::vector<double>> blocks;
    for (const auto& f : frames) blocks.push_back(f.samples);
    const auto y = OverlapAdd(blocks, spec, x.size());
    const std::size_t ov = spec.overlap_len;
    const std::span<const double> ref(x.data() + ov, x.size() - 2 * ov);
    const std::span<const double> got(y.data() + ov, y.size() - 2 * ov);
    CHECK(oracle::RelativeRms(ref, got) < 1e-10);
  }
}

TEST_CASE("overlap-add checks frame length") {
  const std::vector<std::vector<double>> bad{std::vector<double>(100)};
  CHECK_THROWS_AS(OverlapAdd(bad, WindowSpec{}, 100), InvalidArgument);
}

TEST_CASE("DFT of a delta is flat") {
  AnalysisFrame f;
  f.samples.assign(1024, 0.0);
  f.samples[0] = 1.0;
  const Spectrum s = Dft(f);
  REQUIRE(s.bins.size() == 513);
  CHECK(s.bin_hz == doctest::Approx(12.5));
  for (const auto& b : s.bins) {
    CHECK(b.real() == doctest::Approx(1.0));
    CHECK(std::abs(b.imag()) < 1e-12);
  }
}

TEST_CASE("DFT of an unwindowed cosine on bin 4") {
  AnalysisFrame f;
  f.samples.resize(1024);
  for (std::size_t t = 0; t < 1024; ++t)
    f.samples[t] = std::cos(2.0 * std::numbers::pi * 4.0 * t / 1024.0);
  const Spectrum s = Dft(f);
  CHECK(std::abs(s.bins[4]) == doctest::Approx(512.0));
  for (std::size_t k = 0; k < s.bins.size(); ++k)
    if (k != 4) CHECK(std::abs(s.bins[k]) < 1e-9);
}

TEST_CASE("DFT matches the direct sum, Parseval and real edge bins") {
  AnalysisFrame f;
  f.samples = oracle::Gaussian(1024, 11);
  const Spectrum s = Dft(f);
  const auto ref = oracle::NaiveDft(f.samples);
  double max_err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < 513; ++k) {
    max_err = std::max(max_err, std::abs(s.bins[k] - ref[k]));
    scale = std::max(scale, std::abs(ref[k]));
  }
  CHECK(max_err / scale < 1e-12);
  CHECK(s.bins[0].imag() == 0.0);
  CHECK(s.bins[512].imag() == 0.0);

  double time_energy = 0.0;
  for (double v : f.samples) time_energy += v * v;
  double freq = std::norm(s.bins[0]) + std::norm(s.bins[512]);
  for (std::size_t k = 1; k < 512; ++k) freq += 2.0 * std::norm(s.bins[k]);
  CHECK(std::abs(freq / 1024.0 - time_energy) / time_energy < 1e-9);

  const AnalysisFrame back = Idft(s);
  CHECK(oracle::RelativeRms(f.samples, back.samples) < 1e-12);
}

TEST_CASE("DFT is linear") {
  AnalysisFrame a, b, c;
  a.samples = oracle::Gaussian(1024, 1);
  b.samples = oracle::Gaussian(1024, 2);
  c.samples.resize(1024);
  for (std::size_t i = 0; i < 1024; ++i) c.samples[i] = 2.0 * a.samples[i] - 0.5 * b.samples[i];
  const auto sa = Dft(a), sb = Dft(b), sc = Dft(c);
  double err = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < 513; ++k) {
    err += std::norm(sc.bins[k] - (2.0 * sa.bins[k] - 0.5 * sb.bins[k]));
    ref += std::norm(sc.bins[k]);
  }
  CHECK(std::sqrt(err / ref) < 1e-9);
}

TEST_CASE("non power-of-two frames are rejected") {
  AnalysisFrame f;
  f.samples.assign(1000, 0.0);
  CHECK_THROWS_AS(Dft(f), InvalidArgument);
}

TEST_CASE("MDCT zero input and single-frame aliasing") {
  const std::vector<double> zero(64, 0.0);
  for (double c : Mdct(zero)) CHECK(c == 0.0);
  const auto x = oracle::Gaussian(64, 5);
  const auto y = Imdct(Mdct(x));
  CHECK(oracle::RelativeRms(x, y) > 0.1);
}

TEST_CASE("MDCT TDAC with 50 percent overlap") {
  const std::size_t n = 128;
  const auto x = oracle::Gaussian(n * 20, 9);
  const auto w = SineWindow(2 * n);
  std::vector<double> y(x.size() + 2 * n, 0.0);
  for (std::size_t start = 0; start + 2 * n <= x.size(); start += n) {
    std::vector<double> frame(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) frame[i] = x[start + i] * w[i];
    const auto back = Imdct(Mdct(frame));
    for (std::size_t i = 0; i < 2 * n; ++i) y[start + i] += back[i] * w[i];
  }
  const std::span<const double> ref(x.data() + n, x.size() - 2 * n);
  const std::span<const double> got(y.data() + n, x.size() - 2 * n);
  CHECK(oracle::RelativeRms(ref, got) < 1e-10);
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
