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

#include "uns/bitstream.h"

#include <algorithm>
#include <bit>
#include <cstring>

#include "uns/entropy.h"
#include "uns/errors.h"
#include "uns/polar_quant.h"
#include "uns/rate_control.h"

namespace uns {

namespace {

constexpr std::uint32_t kIndexIncrement = 32;
constexpr std::uint32_t kScaleIncrement = 32;
constexpr int kScaleAlphabet = 2 * (kMaxGainDb - kMinGainDb) + 1;  // 241
constexpr int kScaleOffset = kMaxGainDb - kMinGainDb;              // 120
constexpr int kEscapeOrder = 2;
constexpr int kIndexContexts = 4;

// Context of a magnitude index: whether either of its two predecessors is
// nonzero, split between the lower and the upper half of the bands.
int IndexContext(int prev1, int prev2, std::size_t band, std::size_t num_bands) {
  const int nz = (prev1 != 0 || prev2 != 0) ? 1 : 0;
  return nz + (band * 2 >= num_bands ? 2 : 0);
}

std::vector<std::uint32_t> IndexPrior() {
  std::vector<std::uint32_t> f(kMagnitudeAlphabet, 1);
  f[0] = 96;
  f[1] = 12;
  f[2] = 3;
  f[3] = 2;
  return f;
}

std::vector<std::uint32_t> ScalePrior() {
  std::vector<std::uint32_t> f(kScaleAlphabet);
  for (int s = 0; s < kScaleAlphabet; ++s) {
    const int d = std::abs(s - kScaleOffset);
    f[s] = 1 + static_cast<std::uint32_t>(std::max(0, 12 - d));
  }
  return f;
}

struct Models {
  std::vector<AdaptiveModel> index;
  AdaptiveModel scale;

  Models()
      : scale(ScalePrior(), kScaleIncrement) {
    const auto prior = IndexPrior();
    for (int c = 0; c < kIndexContexts; ++c)
      index.emplace_back(prior, kIndexIncrement);
  }
};

std::vector<std::size_t> BandOfCoefficient(const FrameFormat& format) {
  std::vector<std::size_t> band(format.num_coeffs, format.layout.size() - 1);
  for (std::size_t b = 0; b < format.layout.size(); ++b)
    for (std::size_t f = format.layout.begin(b);
         f < format.layout.end(b) && f < format.num_coeffs; ++f)
      band[f] = b;
  return band;
}

int BitsOf(int cells) { return PhaseBits(cells); }

// Big-endian writer/reader for the header.
class ByteWriter {
 public:
  void U8(std::uint8_t v) { out.push_back(v); }
  void U16(std::uint16_t v) {
    U8(static_cast<std::uint8_t>(v >> 8));
    U8(static_cast<std::uint8_t>(v));
  }
  void U32(std::uint32_t v) {
    U16(static_cast<std::uint16_t>(v >> 16));
    U16(static_cast<std::uint16_t>(v));
  }
  void F64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    U32(static_cast<std::uint32_t>(bits >> 32));
    U32(static_cast<std::uint32_t>(bits));
  }
  std::vector<std::uint8_t> out;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> d) : data(d) {}
  std::uint8_t U8() {
    if (pos >= data.size()) throw CorruptStream("truncated stream header");
    return data[pos++];
  }
  std::uint16_t U16() {
    const std::uint16_t hi = U8();
    return static_cast<std::uint16_t>((hi << 8) | U8());
  }
  std::uint32_t U32() {
    const std::uint32_t hi = U16();
    return (hi << 16) | U16();
  }
  double F64() {
    const std::uint64_t hi = U32();
    return std::bit_cast<double>((hi << 32) | U32());
  }
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
};

}  // namespace

std::vector<std::uint8_t> WriteHeader(const StreamHeader& h) {
  ByteWriter w;
  for (char c : kStreamMagic) w.U8(static_cast<std::uint8_t>(c));
  w.U16(h.version);
  w.U32(h.sample_rate_hz);
  w.U16(h.frame_len);
  w.U16(h.overlap_len);
  w.U8(h.window_split);
  w.U8(h.mode == BitrateMode::k12kbps ? 12 : 16);
  w.U32(h.original_length);
  w.U8(h.lpc_order);
  w.U32(h.num_frames);
  w.U16(h.ctns_start_bin);
  w.F64(h.fer_threshold);
  w.U8(static_cast<std::uint8_t>(h.band_edges.size()));
  for (std::uint16_t e : h.band_edges) w.U16(e);
  for (std::uint8_t b : h.phase_bits_high) w.U8(b);
  for (std::uint8_t b : h.phase_bits_low) w.U8(b);
  w.F64(h.lsf_step);
  w.F64(h.lsf_min_gap);
  w.F64(h.cplx_step_db);
  w.F64(h.cplx_min_db);
  w.F64(h.cplx_max_db);
  w.U16(h.cplx_phase_cells);
  w.U8(static_cast<std::uint8_t>(h.table_version.size()));
  for (char c : h.table_version) w.U8(static_cast<std::uint8_t>(c));
  return w.out;
}

StreamHeader ReadHeader(std::span<const std::uint8_t> data,
                        std::size_t& consumed) {
  ByteReader r(data);
  for (char c : kStreamMagic)
    if (r.U8() != static_cast<std::uint8_t>(c))
      throw CorruptStream("bad stream magic");
  StreamHeader h;
  h.version = r.U16();
  if (h.version != kStreamVersion)
    throw CorruptStream("unsupported stream version " + std::to_string(h.version));
  h.sample_rate_hz = r.U32();
  h.frame_len = r.U16();
  h.overlap_len = r.U16();
  h.window_split = r.U8();
  if (h.window_split > 1) throw CorruptStream("unknown window split");
  const std::uint8_t mode = r.U8();
  if (mode != 12 && mode != 16) throw CorruptStream("unknown bit-rate mode");
  h.mode = mode == 12 ? BitrateMode::k12kbps : BitrateMode::k16kbps;
  h.original_length = r.U32();
  h.lpc_order = r.U8();
  h.num_frames = r.U32();
  h.ctns_start_bin = r.U16();
  h.fer_threshold = r.F64();
  h.band_edges.resize(r.U8());
  for (auto& e : h.band_edges) e = r.U16();
  for (auto& b : h.phase_bits_high) b = r.U8();
  for (auto& b : h.phase_bits_low) b = r.U8();
  h.lsf_step = r.F64();
  h.lsf_min_gap = r.F64();
  h.cplx_step_db = r.F64();
  h.cplx_min_db = r.F64();
  h.cplx_max_db = r.F64();
  h.cplx_phase_cells = r.U16();
  h.table_version.resize(r.U8());
  for (char& c : h.table_version) c = static_cast<char>(r.U8());
  consumed = r.pos;
  return h;
}

PackedFrame PackFrame(const FramePayload& p, std::span<const int> cells,
                      const FrameFormat& format) {
  if (p.index1.size() != format.num_coeffs || p.phase.size() != format.num_coeffs ||
      cells.size() != format.num_coeffs)
    throw InvalidArgument("frame payload does not match the frame format");
  if (p.lsf_indices.size() != format.lpc_order ||
      p.scale_factors.size() != format.layout.size())
    throw InvalidArgument("frame side information has the wrong size");

  RangeEncoder enc;
  Models models;
  for (int idx : p.lsf_indices)
    enc.EncodeBits(static_cast<std::uint32_t>(idx), format.lsf_index_bits);
  enc.EncodeBits(p.ctns_flag ? 1 : 0, 1);
  if (p.ctns_flag) {
    for (std::size_t k = 0; k < format.lpc_order; ++k) {
      const int m = p.cplx_mag_indices[k];
      enc.EncodeBits(static_cast<std::uint32_t>(m + 1), format.cplx_mag_bits);
      if (m >= 0)
        enc.EncodeBits(static_cast<std::uint32_t>(p.cplx_phase_indices[k]),
                       format.cplx_phase_bits);
    }
  }
  int prev_gain = 0;
  for (int g : p.scale_factors) {
    enc.Encode(models.scale, static_cast<std::size_t>(g - prev_gain + kScaleOffset));
    prev_gain = g;
  }
  PackedFrame out;
  out.side_bits = enc.information_bits();

  const auto band = BandOfCoefficient(format);
  std::size_t esc = 0;
  int prev = 0, prev2 = 0;
  for (std::size_t i = 0; i < format.num_coeffs; ++i) {
    const int ctx = IndexContext(prev, prev2, band[i], format.layout.size());
    enc.Encode(models.index[static_cast<std::size_t>(ctx)],
               static_cast<std::size_t>(p.index1[i]));
    if (p.index1[i] == kEscapeIndex) {
      if (esc >= p.index2.size())
        throw InvalidArgument("escape index without an escape value");
      enc.EncodeExpGolomb(static_cast<std::uint32_t>(p.index2[esc++] - kMinOutlier),
                          kEscapeOrder);
    }
    prev2 = prev;
    prev = p.index1[i];
  }
  for (std::size_t i = 0; i < format.num_coeffs; ++i)
    if (cells[i] > 1)
      enc.EncodeBits(static_cast<std::uint32_t>(p.phase[i]), BitsOf(cells[i]));
  out.spectral_bits = enc.information_bits() - out.side_bits;
  out.bytes = enc.Finish();
  return out;
}

FramePayload UnpackFrame(std::span<const std::uint8_t> bytes,
                         const FrameFormat& format, const CellCounter& cells,
                         std::size_t frame_index) {
  RangeDecoder dec(bytes);
  Models models;
  FramePayload p;
  for (std::size_t k = 0; k < format.lpc_order; ++k) {
    const int idx = static_cast<int>(dec.DecodeBits(format.lsf_index_bits));
    if (idx > format.lsf_max_index)
      throw CorruptStream("LSF index out of range", frame_index);
    p.lsf_indices.push_back(idx);
  }
  p.ctns_flag = dec.DecodeBits(1) != 0;
  if (p.ctns_flag) {
    for (std::size_t k = 0; k < format.lpc_order; ++k) {
      const int m = static_cast<int>(dec.DecodeBits(format.cplx_mag_bits)) - 1;
      if (m > format.cplx_max_mag_index)
        throw CorruptStream("complex LPC magnitude out of range", frame_index);
      p.cplx_mag_indices.push_back(m);
      p.cplx_phase_indices.push_back(
          m >= 0 ? static_cast<int>(dec.DecodeBits(format.cplx_phase_bits)) : 0);
    }
  }
  int prev_gain = 0;
  for (std::size_t b = 0; b < format.layout.size(); ++b) {
    const int g = prev_gain + static_cast<int>(dec.Decode(models.scale)) - kScaleOffset;
    if (g < kMinGainDb || g > kMaxGainDb)
      throw CorruptStream("scale factor out of range", frame_index);
    p.scale_factors.push_back(g);
    prev_gain = g;
  }
  const auto band = BandOfCoefficient(format);
  p.index1.resize(format.num_coeffs);
  int prev = 0, prev2 = 0;
  for (std::size_t i = 0; i < format.num_coeffs; ++i) {
    const int ctx = IndexContext(prev, prev2, band[i], format.layout.size());
    const int idx = static_cast<int>(dec.Decode(models.index[static_cast<std::size_t>(ctx)]));
    p.index1[i] = idx;
    if (idx == kEscapeIndex) {
      const std::uint32_t v = dec.DecodeExpGolomb(kEscapeOrder);
      if (v > static_cast<std::uint32_t>(kMaxOutlier - kMinOutlier))
        throw CorruptStream("escape magnitude out of range", frame_index);
      p.index2.push_back(static_cast<int>(v) + kMinOutlier);
    }
    prev2 = prev;
    prev = idx;
    if (dec.overrun()) throw CorruptStream("truncated frame", frame_index);
  }
  const std::vector<int> n = cells(p);
  if (n.size() != format.num_coeffs)
    throw InvalidArgument("cell counter returned the wrong length");
  p.phase.assign(format.num_coeffs, 0);
  for (std::size_t i = 0; i < format.num_coeffs; ++i)
    if (n[i] > 1) p.phase[i] = static_cast<int>(dec.DecodeBits(BitsOf(n[i])));
  if (dec.overrun()) throw CorruptStream("truncated frame", frame_index);
  return p;
}

void AppendFrame(std::vector<std::uint8_t>& stream,
                 std::span<const std::uint8_t> body) {
  if (body.size() > 0xFFFF) throw InvalidArgument("frame body too large");
  stream.push_back(static_cast<std::uint8_t>(body.size() >> 8));
  stream.push_back(static_cast<std::uint8_t>(body.size()));
  stream.insert(stream.end(), body.begin(), body.end());
}

std::span<const std::uint8_t> NextFrame(std::span<const std::uint8_t> stream,
                                        std::size_t& pos,
                                        std::size_t frame_index) {
  if (pos + 2 > stream.size())
    throw CorruptStream("missing frame length", frame_index);
  const std::size_t len = (std::size_t{stream[pos]} << 8) | stream[pos + 1];
  pos += 2;
  if (pos + len > stream.size())
    throw CorruptStream("truncated frame body", frame_index);
  auto body = stream.subspan(pos, len);
  pos += len;
  return body;
}

}  // namespace uns
