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

// Encoder and decoder pipelines, frame by frame and over whole streams.

#ifndef UNS_CODEC_H_
#define UNS_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uns/bitstream.h"
#include "uns/config.h"
#include "uns/lp.h"
#include "uns/noise_shaping.h"
#include "uns/polar_quant.h"

namespace uns {

// A module error raised while processing one frame.
class FrameError : public std::runtime_error {
 public:
  FrameError(const std::string& what, std::size_t frame)
      : std::runtime_error("frame " + std::to_string(frame) + ": " + what),
        frame_(frame) {}
  std::size_t frame() const { return frame_; }

 private:
  std::size_t frame_;
};

// Quantities both ends derive from a payload. The encoder fills this from
// the values it transmits, the decoder from the values it receives.
struct DecoderState {
  FrequencyEnvelope envelope;
  std::vector<Complex> ctns_coeffs;  // dequantized; empty when the flag is off
  std::vector<bool> high_contrast;   // per band
  std::vector<int> cells;            // per coefficient
  std::vector<Complex> residual;     // dequantized, unscaled, pre-CTNS-inverse
  std::vector<Complex> spectrum;     // after inverse CTNS and inverse FDNS
};

// Per-frame introspection.
struct FrameRecord {
  std::size_t index = 0;
  double prediction_gain_db = kGainFloorDb;
  bool ctns_candidate = false;  // G above threshold
  bool ctns_flag = false;       // transmitted flag
  bool ctns_unstable = false;   // candidate dropped: quantized model unstable
  std::vector<int> scale_factors;
  std::vector<double> band_estimated_bits;
  std::vector<bool> band_overflow;
  double estimated_bits = 0.0;  // block-entropy estimate, all coded bins
  double side_bits = 0.0;       // coder information content
  double spectral_bits = 0.0;
  std::size_t frame_bytes = 0;  // body plus the 2-byte length prefix
};

struct EncodedFrame {
  FramePayload payload;
  std::vector<int> cells;
  FrameRecord record;
  DecoderState state;
};

// Encodes one windowed frame. Throws FrameError.
EncodedFrame EncodeFrame(const AnalysisFrame& frame, const CodecConfig& cfg);
// Reconstructs the windowed time-domain frame from a payload.
std::vector<double> DecodeFrame(const FramePayload& payload,
                                const CodecConfig& cfg,
                                DecoderState* state = nullptr);

FrameFormat MakeFrameFormat(const CodecConfig& cfg);
StreamHeader MakeHeader(const CodecConfig& cfg, std::uint32_t original_length,
                        std::uint32_t num_frames);
// Decoder configuration rebuilt from a header. Throws CorruptStream when the
// header names a table other than `table`.
CodecConfig ConfigFromHeader(const StreamHeader& h, const EcupqTable& table);

// Frames covering a signal of `length` samples once it is padded by one
// overlap on each side.
std::size_t StreamFrameCount(std::size_t length, const WindowSpec& spec);

struct EncodeResult {
  std::vector<std::uint8_t> stream;
  StreamHeader header;
  std::vector<FrameRecord> frames;
};

// Mono PCM at the configured core rate. Throws InvalidArgument in bypass
// mode, which produces no stream (see BypassRoundTrip).
EncodeResult EncodeStream(std::span<const double> pcm, const CodecConfig& cfg);

struct DecodeResult {
  std::vector<double> pcm;
  StreamHeader header;
  std::vector<FramePayload> payloads;
};

DecodeResult DecodeStream(std::span<const std::uint8_t> stream,
                          const EcupqTable& table = DefaultEcupqTable());

// Runs the full shaping chain with identity quantizers and no entropy coding.
std::vector<double> BypassRoundTrip(std::span<const double> pcm,
                                    const CodecConfig& cfg);

}  // namespace uns

#endif  // UNS_CODEC_H_
