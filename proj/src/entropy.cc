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

#include "uns/entropy.h"

#include <cmath>

#include "uns/errors.h"

namespace uns {

namespace {
constexpr std::uint32_t kTop = 1u << 24;
}  // namespace

AdaptiveModel::AdaptiveModel(std::size_t alphabet, std::uint32_t increment)
    : freq_(alphabet, 1), total_(static_cast<std::uint32_t>(alphabet)),
      increment_(increment) {
  if (alphabet == 0 || alphabet > kLimit / 2)
    throw InvalidArgument("unsupported model alphabet size");
}

AdaptiveModel::AdaptiveModel(std::span<const std::uint32_t> initial,
                             std::uint32_t increment)
    : freq_(initial.begin(), initial.end()), increment_(increment) {
  for (std::uint32_t f : freq_) {
    if (f == 0) throw InvalidArgument("initial frequencies must be positive");
    total_ += f;
  }
  if (freq_.empty() || total_ > kLimit)
    throw InvalidArgument("unsupported initial model");
}

std::uint32_t AdaptiveModel::cumulative(std::size_t s) const {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < s; ++i) c += freq_[i];
  return c;
}

std::size_t AdaptiveModel::Find(std::uint32_t target, std::uint32_t& cum) const {
  std::uint32_t c = 0;
  for (std::size_t s = 0; s < freq_.size(); ++s) {
    if (target < c + freq_[s]) {
      cum = c;
      return s;
    }
    c += freq_[s];
  }
  cum = c - freq_.back();
  return freq_.size() - 1;
}

void AdaptiveModel::Update(std::size_t s) {
  freq_[s] += increment_;
  total_ += increment_;
  if (total_ > kLimit) {
    total_ = 0;
    for (std::uint32_t& f : freq_) {
      f = (f + 1) / 2;
      total_ += f;
    }
  }
}

void RangeEncoder::EncodeRange(std::uint32_t cum, std::uint32_t freq,
                               std::uint32_t total) {
  range_ /= total;
  low_ += static_cast<std::uint64_t>(cum) * range_;
  range_ *= freq;
  Normalize();
}

void RangeEncoder::Encode(AdaptiveModel& model, std::size_t symbol) {
  if (symbol >= model.alphabet())
    throw InvalidArgument("symbol outside model alphabet");
  const std::uint32_t f = model.freq(symbol);
  const std::uint32_t t = model.total();
  info_bits_ += std::log2(static_cast<double>(t) / f);
  EncodeRange(model.cumulative(symbol), f, t);
  model.Update(symbol);
}

void RangeEncoder::EncodeBits(std::uint32_t value, int nbits) {
  for (int i = nbits - 1; i >= 0; --i) {
    range_ >>= 1;
    if ((value >> i) & 1u) low_ += range_;
    Normalize();
  }
  info_bits_ += nbits;
}

void RangeEncoder::EncodeExpGolomb(std::uint32_t value, int k) {
  // Unary prefix of the bucket, then the offset within it.
  const std::uint64_t v = static_cast<std::uint64_t>(value) + (1u << k);
  int len = 0;
  while ((v >> (len + 1)) != 0) ++len;
  const int prefix = len - k;
  for (int i = 0; i < prefix; ++i) EncodeBits(0, 1);
  EncodeBits(1, 1);
  const std::uint32_t rest = static_cast<std::uint32_t>(v - (std::uint64_t{1} << len));
  for (int i = len - 1; i >= 0; --i) EncodeBits((rest >> i) & 1u, 1);
}

void RangeEncoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void RangeEncoder::ShiftLow() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t temp = cache_;
    do {
      // The very first byte is always zero and is implied by the decoder.
      if (first_byte_)
        first_byte_ = false;
      else
        out_.push_back(static_cast<std::uint8_t>(temp + carry));
      temp = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

std::vector<std::uint8_t> RangeEncoder::Finish() {
  // Pick the value in [low, low + range) with the most trailing zeros.
  const std::uint64_t hi = low_ + range_;
  for (int k = 32; k >= 0; --k) {
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t v = (low_ + mask) & ~mask;
    if (v >= low_ && v < hi) {
      low_ = v;
      break;
    }
  }
  // Bytes still held in the carry cache are coded data, not flush.
  const std::size_t coded =
      out_.size() + static_cast<std::size_t>(cache_size_) - (first_byte_ ? 1 : 0);
  for (int i = 0; i < 5; ++i) ShiftLow();
  // Only flush bytes are trimmed, which bounds how far the decoder may read
  // past the end of a valid frame.
  while (out_.size() > coded && out_.back() == 0) out_.pop_back();
  std::vector<std::uint8_t> bytes;
  bytes.swap(out_);
  return bytes;
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> data) : data_(data) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

std::uint8_t RangeDecoder::NextByte() {
  const std::uint8_t b = pos_ < data_.size() ? data_[pos_] : 0;
  ++pos_;
  return b;
}

void RangeDecoder::Normalize() {
  while (range_ < kTop) {
    code_ = (code_ << 8) | NextByte();
    range_ <<= 8;
  }
}

std::size_t RangeDecoder::Decode(AdaptiveModel& model) {
  const std::uint32_t total = model.total();
  range_ /= total;
  std::uint32_t target = code_ / range_;
  if (target >= total) target = total - 1;
  std::uint32_t cum = 0;
  const std::size_t s = model.Find(target, cum);
  code_ -= cum * range_;
  range_ *= model.freq(s);
  Normalize();
  model.Update(s);
  return s;
}

std::uint32_t RangeDecoder::DecodeBits(int nbits) {
  std::uint32_t v = 0;
  for (int i = 0; i < nbits; ++i) {
    range_ >>= 1;
    std::uint32_t bit = 0;
    if (code_ >= range_) {
      code_ -= range_;
      bit = 1;
    }
    v = (v << 1) | bit;
    Normalize();
  }
  return v;
}

std::uint32_t RangeDecoder::DecodeExpGolomb(int k) {
  int prefix = 0;
  while (DecodeBits(1) == 0) {
    if (++prefix > 32 || overrun())
      throw CorruptStream("runaway Exp-Golomb prefix");
  }
  const int len = prefix + k;
  std::uint64_t rest = 0;
  for (int i = 0; i < len; ++i) rest = (rest << 1) | DecodeBits(1);
  const std::uint64_t v = (std::uint64_t{1} << len) + rest - (1u << k);
  if (v > 0xFFFFFFFFu) throw CorruptStream("Exp-Golomb value out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace uns
