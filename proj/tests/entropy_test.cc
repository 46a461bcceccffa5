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
#include <random>
#include <vector>

#include "doctest.h"
#include "uns/entropy.h"
#include "uns/errors.h"

namespace uns {
namespace {

TEST_SUITE("entropy") {

TEST_CASE("empty input flushes to nothing") {
  RangeEncoder enc;
  CHECK(enc.Finish().empty());
  CHECK(enc.information_bits() == 0.0);
}

TEST_CASE("uniform symbols cost close to log2 of the alphabet") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(0, 14);
  std::vector<std::size_t> sym(1000);
  for (auto& s : sym) s = static_cast<std::size_t>(u(rng));
  RangeEncoder enc;
  AdaptiveModel model(15, 32);
  for (auto s : sym) enc.Encode(model, s);
  const auto bytes = enc.Finish();
  const double per_symbol = bytes.size() * 8.0 / sym.size();
  CHECK(per_symbol >= 3.85);
  CHECK(per_symbol <= std::log2(15.0) + 0.1);

  RangeDecoder dec(bytes);
  AdaptiveModel back(15, 32);
  for (auto s : sym) REQUIRE(dec.Decode(back) == s);
  CHECK_FALSE(dec.overrun());
}

TEST_CASE("a constant symbol becomes nearly free") {
  RangeEncoder enc;
  AdaptiveModel model(15, 32);
  for (int i = 0; i < 1000; ++i) enc.Encode(model, 4);
  const auto bytes = enc.Finish();
  CHECK(bytes.size() * 8.0 / 1000.0 < 0.1);
  RangeDecoder dec(bytes);
  AdaptiveModel back(15, 32);
  for (int i = 0; i < 1000; ++i) REQUIRE(dec.Decode(back) == 4);
}

TEST_CASE("model halves at the limit and keeps every symbol codable") {
  AdaptiveModel model(3, 1000);
  for (int i = 0; i < 200; ++i) {
    model.Update(0);
    REQUIRE(model.total() <= AdaptiveModel::kLimit);
    for (std::size_t s = 0; s < 3; ++s) REQUIRE(model.freq(s) > 0);
  }
  std::uint32_t cum = 0;
  CHECK(model.Find(0, cum) == 0);
  CHECK(cum == 0);
}

TEST_CASE("mixed adaptive, raw and Exp-Golomb fields round trip") {
  std::mt19937_64 rng(5);
  std::geometric_distribution<int> geo(0.3);
  std::uniform_int_distribution<std::uint32_t> raw(0, 63);
  std::vector<int> sym(3000);
  std::vector<std::uint32_t> bits(3000), eg(3000);
  RangeEncoder enc;
  AdaptiveModel model(15, 32);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    sym[i] = std::min(geo(rng), 14);
    bits[i] = raw(rng);
    eg[i] = static_cast<std::uint32_t>(geo(rng)) * 37u;
    enc.Encode(model, static_cast<std::size_t>(sym[i]));
    enc.EncodeBits(bits[i], 6);
    enc.EncodeExpGolomb(eg[i], 2);
  }
  const auto bytes = enc.Finish();
  RangeDecoder dec(bytes);
  AdaptiveModel back(15, 32);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    REQUIRE(dec.Decode(back) == static_cast<std::size_t>(sym[i]));
    REQUIRE(dec.DecodeBits(6) == bits[i]);
    REQUIRE(dec.DecodeExpGolomb(2) == eg[i]);
  }
  CHECK_FALSE(dec.overrun());
  // Real size stays within a few bytes of the model cost.
  CHECK(bytes.size() * 8.0 <= enc.information_bits() + 40.0);
}

TEST_CASE("zero data bytes at the end are not mistaken for flush") {
  for (int ones : {0, 1}) {
    for (int n = 1; n <= 300; n += 7) {
      RangeEncoder enc;
      enc.EncodeBits(1, 1);
      for (int i = 0; i < n; ++i) enc.EncodeBits(static_cast<std::uint32_t>(ones), 1);
      const auto bytes = enc.Finish();
      RangeDecoder dec(bytes);
      REQUIRE(dec.DecodeBits(1) == 1u);
      for (int i = 0; i < n; ++i) REQUIRE(dec.DecodeBits(1) == static_cast<std::uint32_t>(ones));
      REQUIRE_FALSE(dec.overrun());
    }
  }
}

TEST_CASE("short messages never read past the flush") {
  // Carries into a pending run of 0xFF bytes turn it into zeros at the very
  // end of the message; those bytes are data and must survive the trim.
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(1, 400), sym(0, 14), nbits(1, 6);
  std::bernoulli_distribution zero_heavy(0.9);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = len(rng);
    std::vector<int> s(n), b(n), w(n);
    RangeEncoder enc;
    AdaptiveModel model(15, 32);
    for (int i = 0; i < n; ++i) {
      s[i] = zero_heavy(rng) ? 0 : sym(rng);
      w[i] = nbits(rng);
      b[i] = static_cast<int>(rng() & ((1u << w[i]) - 1));
      enc.Encode(model, static_cast<std::size_t>(s[i]));
      enc.EncodeBits(static_cast<std::uint32_t>(b[i]), w[i]);
    }
    const auto bytes = enc.Finish();
    RangeDecoder dec(bytes);
    AdaptiveModel back(15, 32);
    for (int i = 0; i < n; ++i) {
      REQUIRE(dec.Decode(back) == static_cast<std::size_t>(s[i]));
      REQUIRE(dec.DecodeBits(w[i]) == static_cast<std::uint32_t>(b[i]));
    }
    REQUIRE_FALSE(dec.overrun());
  }
}

TEST_CASE("Exp-Golomb code lengths") {
  for (std::uint32_t v : {0u, 3u, 4u, 11u, 12u, 1000u}) {
    RangeEncoder enc;
    enc.EncodeExpGolomb(v, 2);
    const int expected = 2 * static_cast<int>(std::floor(std::log2(v / 4.0 + 1.0))) + 1 + 2;
    CHECK(enc.information_bits() == doctest::Approx(expected));
  }
}

TEST_CASE("reading far past the data is reported") {
  RangeEncoder enc;
  AdaptiveModel model(15, 32);
  for (int i = 0; i < 50; ++i) enc.Encode(model, static_cast<std::size_t>(i % 15));
  auto bytes = enc.Finish();
  bytes.resize(bytes.size() / 2);
  RangeDecoder dec(bytes);
  AdaptiveModel back(15, 32);
  for (int i = 0; i < 200; ++i) dec.Decode(back);
  CHECK(dec.overrun());
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
