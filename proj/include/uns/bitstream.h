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

// On-disk stream format: a fixed header followed by length-prefixed frames.
// Each frame is one range-coded payload; models reset at every frame.
//
// Frame field order: LSF indices, CTNS flag, complex LPC (flag on only),
// scale factors, magnitude indices for every coded bin (escape values inline),
// then phase fields for every bin with more than one phase cell.

#ifndef UNS_BITSTREAM_H_
#define UNS_BITSTREAM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uns/bands.h"
#include "uns/transforms.h"

namespace uns {

inline constexpr std::array<char, 4> kStreamMagic{'U', 'N', 'S', '1'};
inline constexpr std::uint16_t kStreamVersion = 1;

struct StreamHeader {
  std::uint16_t version = kStreamVersion;
  std::uint32_t sample_rate_hz = 12800;
  std::uint16_t frame_len = 1024;
  std::uint16_t overlap_len = 256;
  std::uint8_t window_split = 0;  // 0 square-root split, 1 analysis only
  BitrateMode mode = BitrateMode::k12kbps;
  std::uint32_t original_length = 0;
  std::uint8_t lpc_order = 16;
  std::uint32_t num_frames = 0;
  std::uint16_t ctns_start_bin = 25;
  double fer_threshold = 0.125;
  std::vector<std::uint16_t> band_edges{40, 90, 140, 200, 260, 330, 410, 512};
  std::array<std::uint8_t, 8> phase_bits_high{0, 3, 4, 4, 5, 5, 6, 6};
  std::array<std::uint8_t, 8> phase_bits_low{0, 2, 3, 3, 4, 4, 5, 5};
  double lsf_step = 0.0;
  double lsf_min_gap = 0.0;
  double cplx_step_db = 0.0;
  double cplx_min_db = 0.0;
  double cplx_max_db = 0.0;
  std::uint16_t cplx_phase_cells = 64;
  std::string table_version;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

std::vector<std::uint8_t> WriteHeader(const StreamHeader& h);
// Parses a header starting at data[0]; `consumed` receives its byte length.
StreamHeader ReadHeader(std::span<const std::uint8_t> data,
                        std::size_t& consumed);

// Dimensions a frame coder needs; all derivable from the header.
struct FrameFormat {
  std::size_t lpc_order = 16;
  int lsf_index_bits = 7;
  int lsf_max_index = 100;
  int cplx_mag_bits = 8;
  int cplx_max_mag_index = 160;
  int cplx_phase_bits = 6;
  BandLayout layout;
  std::size_t num_coeffs = 513;  // bins 0..N/2, Nyquist coded last
};

struct FramePayload {
  std::vector<int> lsf_indices;
  bool ctns_flag = false;
  std::vector<int> cplx_mag_indices;  // -1 marks the zero cell
  std::vector<int> cplx_phase_indices;
  std::vector<int> scale_factors;     // dB, one per band
  std::vector<int> index1;            // one per coefficient
  std::vector<int> index2;            // escape values in coefficient order
  std::vector<int> phase;             // one per coefficient (0 when 1 cell)

  friend bool operator==(const FramePayload&, const FramePayload&) = default;
};

struct PackedFrame {
  std::vector<std::uint8_t> bytes;  // range-coded body, without the prefix
  double side_bits = 0.0;           // LSF, flag, complex LPC, scale factors
  double spectral_bits = 0.0;       // magnitudes, escapes and phases
};

// Phase cell count per coefficient implied by the magnitudes decoded so far
// (index1 and the side information are filled in when this is called).
using CellCounter = std::function<std::vector<int>(const FramePayload&)>;

PackedFrame PackFrame(const FramePayload& payload, std::span<const int> cells,
                      const FrameFormat& format);
FramePayload UnpackFrame(std::span<const std::uint8_t> bytes,
                         const FrameFormat& format, const CellCounter& cells,
                         std::size_t frame_index);

// Appends a 16-bit big-endian length prefix and the frame body.
void AppendFrame(std::vector<std::uint8_t>& stream,
                 std::span<const std::uint8_t> body);
// Reads one prefixed frame at `pos`, advancing it. Throws on truncation.
std::span<const std::uint8_t> NextFrame(std::span<const std::uint8_t> stream,
                                        std::size_t& pos,
                                        std::size_t frame_index);

}  // namespace uns

#endif  // UNS_BITSTREAM_H_
