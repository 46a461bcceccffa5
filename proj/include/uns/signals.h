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

// Deterministic synthetic test signals at the core rate. Each generator
// records where its attacks are so transient-region statistics can be taken.

#ifndef UNS_SIGNALS_H_
#define UNS_SIGNALS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace uns {

struct TestSignal {
  std::string name;
  std::vector<double> pcm;
  double sample_rate_hz = 12800.0;
  std::vector<std::size_t> onsets;  // attack sample positions
};

TestSignal Sinusoid(double freq_hz, double amplitude, double seconds,
                    double sample_rate_hz = 12800.0);
TestSignal WhiteNoise(double amplitude, double seconds, std::uint64_t seed,
                      double sample_rate_hz = 12800.0);
// Silence broken by short decaying resonant bursts, one every `period_s`.
TestSignal Castanet(double seconds, double period_s, std::uint64_t seed,
                    double sample_rate_hz = 12800.0);
// Unit clicks spaced `period_s` apart on silence.
TestSignal ClickTrain(double seconds, double period_s,
                      double sample_rate_hz = 12800.0);
// Noise gated on and off with a sharp attack and exponential release.
TestSignal AmNoiseBursts(double seconds, double period_s, std::uint64_t seed,
                         double sample_rate_hz = 12800.0);
// Sum of harmonics with slow vibrato and a steady amplitude.
TestSignal HarmonicTone(double f0_hz, double seconds,
                        double sample_rate_hz = 12800.0);
// Silence with three sharp hits (1-2 ms decay), then a sustained harmonic
// tone, then silence.
TestSignal AttackScene(std::uint64_t seed, double sample_rate_hz = 12800.0);
// Six five-second items, steady tones next to noise and attacks.
std::vector<TestSignal> MixedCorpus(std::uint64_t seed);

}  // namespace uns

#endif  // UNS_SIGNALS_H_
