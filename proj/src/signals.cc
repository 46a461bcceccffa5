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

#include "uns/signals.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace uns {

namespace {

std::size_t Samples(double seconds, double fs) {
  return static_cast<std::size_t>(std::llround(seconds * fs));
}

// One castanet-like hit: a few damped resonances plus a noise transient.
void AddHit(std::vector<double>& x, std::size_t at, double fs, double amp,
            double noise_decay_s, double mode_decay_s, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(0.9, 1.1);
  const double modes[] = {1800.0, 2700.0, 4300.0};
  double freq[3];
  for (int m = 0; m < 3; ++m) freq[m] = modes[m] * jitter(rng);
  const std::size_t len = std::min(x.size() - at, Samples(0.04, fs));
  std::vector<double> hit(len);
  double peak = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double t = static_cast<double>(i) / fs;
    double v = 0.5 * noise(rng) * std::exp(-t / noise_decay_s);
    for (int m = 0; m < 3; ++m)
      v += std::sin(2.0 * std::numbers::pi * freq[m] * t) * std::exp(-t / mode_decay_s);
    hit[i] = v;
    peak = std::max(peak, std::abs(v));
  }
  // amp is the peak of the hit.
  if (peak > 0.0)
    for (std::size_t i = 0; i < len; ++i) x[at + i] += amp * hit[i] / peak;
}

}  // namespace

TestSignal Sinusoid(double freq_hz, double amplitude, double seconds, double fs) {
  TestSignal s{"sine", std::vector<double>(Samples(seconds, fs)), fs, {}};
  for (std::size_t i = 0; i < s.pcm.size(); ++i)
    s.pcm[i] = amplitude *
               std::cos(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / fs);
  return s;
}

TestSignal WhiteNoise(double amplitude, double seconds, std::uint64_t seed,
                      double fs) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, amplitude);
  TestSignal s{"noise", std::vector<double>(Samples(seconds, fs)), fs, {}};
  for (double& v : s.pcm) v = std::clamp(n(rng), -1.0, 1.0);
  return s;
}

TestSignal Castanet(double seconds, double period_s, std::uint64_t seed,
                    double fs) {
  std::mt19937_64 rng(seed);
  TestSignal s{"castanet", std::vector<double>(Samples(seconds, fs)), fs, {}};
  const std::size_t step = Samples(period_s, fs);
  for (std::size_t at = step / 2; at < s.pcm.size(); at += step) {
    AddHit(s.pcm, at, fs, 0.8, 0.002, 0.006, rng);
    s.onsets.push_back(at);
  }
  return s;
}

TestSignal ClickTrain(double seconds, double period_s, double fs) {
  TestSignal s{"clicks", std::vector<double>(Samples(seconds, fs)), fs, {}};
  const std::size_t step = Samples(period_s, fs);
  for (std::size_t at = step / 2; at < s.pcm.size(); at += step) {
    s.pcm[at] = 1.0;
    s.onsets.push_back(at);
  }
  return s;
}

TestSignal AmNoiseBursts(double seconds, double period_s, std::uint64_t seed,
                         double fs) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 0.25);
  TestSignal s{"am-noise", std::vector<double>(Samples(seconds, fs)), fs, {}};
  const std::size_t step = Samples(period_s, fs);
  for (std::size_t i = 0; i < s.pcm.size(); ++i) {
    const std::size_t phase = i % step;
    if (phase == 0) s.onsets.push_back(i);
    const double t = static_cast<double>(phase) / fs;
    s.pcm[i] = std::clamp(n(rng) * std::exp(-t / 0.05), -1.0, 1.0);
  }
  return s;
}

TestSignal HarmonicTone(double f0_hz, double seconds, double fs) {
  TestSignal s{"harmonic", std::vector<double>(Samples(seconds, fs)), fs, {}};
  double phase = 0.0;
  for (std::size_t i = 0; i < s.pcm.size(); ++i) {
    const double t = static_cast<double>(i) / fs;
    const double f = f0_hz * (1.0 + 0.01 * std::sin(2.0 * std::numbers::pi * 5.0 * t));
    phase += 2.0 * std::numbers::pi * f / fs;
    double v = 0.0;
    for (int h = 1; h <= 12 && h * f0_hz < fs / 2.0; ++h)
      v += std::sin(h * phase) / h;
    s.pcm[i] = 0.3 * v;
  }
  return s;
}

TestSignal AttackScene(std::uint64_t seed, double fs) {
  std::mt19937_64 rng(seed);
  TestSignal s{"attack-scene", std::vector<double>(Samples(4.0, fs)), fs, {}};
  for (double t : {0.5, 0.9, 1.3}) {
    const std::size_t at = Samples(t, fs);
    AddHit(s.pcm, at, fs, 0.8, 0.001, 0.002, rng);
    s.onsets.push_back(at);
  }
  const TestSignal tone = HarmonicTone(220.0, 1.5, fs);
  const std::size_t begin = Samples(2.0, fs);
  const std::size_t ramp = Samples(0.1, fs);
  for (std::size_t i = 0; i < tone.pcm.size(); ++i) {
    const double g = std::min({1.0, static_cast<double>(i) / ramp,
                               static_cast<double>(tone.pcm.size() - i) / ramp});
    s.pcm[begin + i] += g * tone.pcm[i];
  }
  return s;
}

std::vector<TestSignal> MixedCorpus(std::uint64_t seed) {
  std::vector<TestSignal> c;
  c.push_back(HarmonicTone(196.0, 5.0));
  c.push_back(WhiteNoise(0.2, 5.0, seed));
  c.push_back(Castanet(5.0, 0.25, seed + 1));
  c.push_back(AmNoiseBursts(5.0, 0.4, seed + 2));
  TestSignal chord = HarmonicTone(261.63, 5.0);
  const TestSignal fifth = HarmonicTone(392.0, 5.0);
  for (std::size_t i = 0; i < chord.pcm.size(); ++i)
    chord.pcm[i] = 0.6 * (chord.pcm[i] + fifth.pcm[i]);
  chord.name = "chord";
  c.push_back(std::move(chord));
  TestSignal mix = AttackScene(seed + 3);
  mix.pcm.resize(Samples(5.0, 12800.0), 0.0);
  const TestSignal bed = WhiteNoise(0.02, 5.0, seed + 4);
  for (std::size_t i = 0; i < mix.pcm.size(); ++i) mix.pcm[i] += bed.pcm[i];
  mix.name = "scene-on-noise";
  c.push_back(std::move(mix));
  return c;
}

}  // namespace uns
