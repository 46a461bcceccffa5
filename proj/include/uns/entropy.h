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

// Byte-oriented range coder with adaptive multi-symbol frequency models.
// All coder arithmetic is integer; identical inputs give identical bytes.

#ifndef UNS_ENTROPY_H_
#define UNS_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uns {

// Frequency table with increment-on-emit adaptation. Counts are halved when
// the total exceeds kLimit.
class AdaptiveModel {
 public:
  static constexpr std::uint32_t kLimit = 1u << 15;

  AdaptiveModel(std::size_t alphabet, std::uint32_t increment);
  AdaptiveModel(std::span<const std::uint32_t> initial, std::uint32_t increment);

  std::size_t alphabet() const { return freq_.size(); }
  std::uint32_t total() const { return total_; }
  std::uint32_t freq(std::size_t s) const { return freq_[s]; }
  std::uint32_t cumulative(std::size_t s) const;
  // Symbol whose cumulative interval contains `target`; sets its cumulative.
  std::size_t Find(std::uint32_t target, std::uint32_t& cum) const;
  void Update(std::size_t s);

 private:
  std::vector<std::uint32_t> freq_;
  std::uint32_t total_ = 0;
  std::uint32_t increment_;
};

class RangeEncoder {
 public:
  void Encode(AdaptiveModel& model, std::size_t symbol);
  // Equiprobable bits, most significant first. nbits <= 16.
  void EncodeBits(std::uint32_t value, int nbits);
  // Exp-Golomb code of order k, sent as raw bits.
  void EncodeExpGolomb(std::uint32_t value, int k);

  // Flushes the shortest tail that decodes unambiguously; trailing zero
  // flush bytes are dropped (the decoder reads zeros past the end).
  std::vector<std::uint8_t> Finish();

  // Model cost of everything coded so far: sum of log2(total/freq) plus raw
  // bits. Bookkeeping only; never feeds back into the coded bytes.
  double information_bits() const { return info_bits_; }

 private:
  void EncodeRange(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  void Normalize();
  void ShiftLow();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool first_byte_ = true;
  std::vector<std::uint8_t> out_;
  double info_bits_ = 0.0;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> data);

  std::size_t Decode(AdaptiveModel& model);
  std::uint32_t DecodeBits(int nbits);
  std::uint32_t DecodeExpGolomb(int k);

  // True once the decoder has consumed more bytes than the flush can account
  // for, i.e. the input was truncated or corrupt.
  bool overrun() const { return pos_ > data_.size() + 5; }

 private:
  std::uint8_t NextByte();
  void Normalize();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

}  // namespace uns

#endif  // UNS_ENTROPY_H_
