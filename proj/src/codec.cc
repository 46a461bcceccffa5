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

#include "uns/codec.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "uns/errors.h"
#include "uns/rate_control.h"

namespace uns {

namespace {

constexpr int kStabilityRetries = 8;
constexpr double kStabilityShrink = 0.97;

// Real envelope model. A model that rounding left on the unit circle is
// pulled inward until its line spectral frequencies separate.
LpModel EnvelopeModel(std::span<const double> samples, const CodecConfig& cfg) {
  const LpModel raw = AnalyzeLp(samples, cfg.lpc_order);
  double gamma = cfg.fdns_weight;
  for (int retry = 0;; ++retry, gamma *= kStabilityShrink) {
    LpModel lp = BandwidthExpand(raw, gamma);
    if (retry == kStabilityRetries) return LpModel{std::vector<double>(cfg.lpc_order, 0.0)};
    try {
      LpcToLsf(lp.coeffs);
      return lp;
    } catch (const InvalidArgument&) {
    }
  }
}

// A run of coefficients quantized with one band's gain and contrast. Bands
// cover bins 0..N/2-1; the real Nyquist bin is a one-coefficient run that
// borrows the last band's parameters.

struct CoefRun {
  std::size_t begin;
  std::size_t end;
  std::size_t band;
  bool first_is_real;
};

std::vector<CoefRun> Runs(const CodecConfig& cfg) {
  std::vector<CoefRun> runs;
  const BandLayout& l = cfg.layout;
  for (std::size_t b = 0; b < l.size(); ++b)
    runs.push_back({l.begin(b), l.end(b), b, b == 0});
  const std::size_t nyq = cfg.num_bins() - 1;
  runs.push_back({nyq, nyq + 1, l.size() - 1, true});
  return runs;
}

int BitWidth(int max_value) {
  return static_cast<int>(std::bit_width(static_cast<unsigned>(max_value)));
}

PolarQuantizer MakeQuantizer(const CodecConfig& cfg) {
  return PolarQuantizer{&cfg.table, cfg.phase_sets};
}

FrequencyEnvelope EnvelopeFromIndices(const std::vector<int>& indices,
                                      const CodecConfig& cfg) {
  QuantizedLpc q;
  q.indices = indices;
  const auto lsf = DequantizeLsf(q, cfg.lsf_quantizer);
  return ComputeFrequencyEnvelope(LsfToLpc(lsf), cfg.num_bins());
}

std::vector<Complex> CtnsFromIndices(const FramePayload& p,
                                     const CodecConfig& cfg) {
  QuantizedLpc q;
  q.mag_indices = p.cplx_mag_indices;
  q.phase_indices = p.cplx_phase_indices;
  return DequantizeComplexLpc(q, cfg.cplx_quantizer);
}

std::vector<bool> Contrast(const FrequencyEnvelope& env,
                           const CodecConfig& cfg) {
  return ComputeFer(env, cfg.layout, cfg.fer_threshold).high_contrast;
}

std::vector<int> CellsFor(std::span<const int> index1,
                          const std::vector<bool>& high, const CodecConfig& cfg) {
  const PolarQuantizer pq = MakeQuantizer(cfg);
  std::vector<int> cells;
  cells.reserve(index1.size());
  for (const CoefRun& r : Runs(cfg)) {
    const auto c = pq.CellsFor(index1.subspan(r.begin, r.end - r.begin),
                               high[r.band], r.first_is_real);
    cells.insert(cells.end(), c.begin(), c.end());
  }
  return cells;
}

std::vector<Complex> DequantizeResidual(const FramePayload& p,
                                        std::span<const int> cells,
                                        const CodecConfig& cfg) {
  const PolarQuantizer pq = MakeQuantizer(cfg);
  std::vector<Complex> out;
  out.reserve(cfg.num_bins());
  std::size_t esc = 0;
  for (const CoefRun& r : Runs(cfg)) {
    CoefficientCodes codes;
    codes.index1.assign(p.index1.begin() + r.begin, p.index1.begin() + r.end);
    codes.phase.assign(p.phase.begin() + r.begin, p.phase.begin() + r.end);
    codes.cells.assign(cells.begin() + r.begin, cells.begin() + r.end);
    for (int i1 : codes.index1) {
      if (i1 != kEscapeIndex) continue;
      if (esc >= p.index2.size())
        throw InvalidArgument("missing escape value");
      codes.index2.push_back(p.index2[esc++]);
    }
    const double inv = 1.0 / GainToScale(p.scale_factors[r.band]);
    for (const Complex& c : pq.Dequantize(codes, r.first_is_real))
      out.push_back(c * inv);
  }
  return out;
}

std::vector<Complex> ShapeInverse(std::span<const Complex> residual,
                                  std::span<const Complex> ctns_coeffs,
                                  const FrequencyEnvelope& env,
                                  const CodecConfig& cfg) {
  if (ctns_coeffs.empty()) return FdnsInverse(residual, env);
  return FdnsInverse(CtnsUnfilter(residual, ctns_coeffs, cfg.ctns_start_bin),
                     env);
}

std::vector<double> Synthesize(std::vector<Complex> bins, const CodecConfig& cfg) {
  Spectrum s;
  s.bins = std::move(bins);
  s.bin_hz = static_cast<double>(cfg.sample_rate_hz) /
             static_cast<double>(cfg.window.frame_len);
  return Idft(s).samples;
}

std::vector<double> Padded(std::span<const double> pcm, const WindowSpec& w) {
  std::vector<double> out(pcm.size() + 2 * w.overlap_len, 0.0);
  std::copy(pcm.begin(), pcm.end(), out.begin() + static_cast<std::ptrdiff_t>(w.overlap_len));
  return out;
}

std::vector<double> Unpadded(std::span<const std::vector<double>> frames,
                             const WindowSpec& w, std::size_t length) {
  const auto full = OverlapAdd(frames, w, length + 2 * w.overlap_len);
  const auto first = full.begin() + static_cast<std::ptrdiff_t>(w.overlap_len);
  return {first, first + static_cast<std::ptrdiff_t>(length)};
}

EncodedFrame EncodeFrameImpl(const AnalysisFrame& frame, const CodecConfig& cfg) {
  const std::size_t n_bins = cfg.num_bins();
  const Spectrum spec = Dft(frame, cfg.sample_rate_hz);
  const PolarQuantizer pq = MakeQuantizer(cfg);

  EncodedFrame out;
  FramePayload& p = out.payload;
  FrameRecord& rec = out.record;
  DecoderState& st = out.state;
  rec.index = frame.index;

  // Envelope from the quantized real model, exactly as the decoder sees it.
  const LpModel lp =
      EnvelopeModel(frame.samples, cfg);
  p.lsf_indices = QuantizeLsf(LpcToLsf(lp.coeffs), cfg.lsf_quantizer).indices;
  st.envelope = EnvelopeFromIndices(p.lsf_indices, cfg);
  const std::vector<Complex> x_fd = FdnsForward(spec.bins, st.envelope);

  // Complex prediction along frequency, evaluated with the dequantized model.
  // Quantization can push a sharp model outside the unit circle; the encoder
  // then widens the bandwidth expansion until the quantized model is stable.
  const ComplexLpModel cm =
      AnalyzeLp(std::span<const Complex>(x_fd).first(n_bins - 1), cfg.lpc_order);
  QuantizedLpc cq;
  std::vector<Complex> cq_coeffs;
  bool stable = false;
  double gamma = cfg.ctns_weight;
  for (int attempt = 0; attempt <= kStabilityRetries && !stable; ++attempt) {
    cq = QuantizeComplexLpc(BandwidthExpand(cm, gamma).coeffs, cfg.cplx_quantizer);
    cq_coeffs = DequantizeComplexLpc(cq, cfg.cplx_quantizer);
    stable = IsMinimumPhase(std::span<const Complex>(cq_coeffs));
    gamma *= kStabilityShrink;
  }
  std::vector<Complex> x_ct = CtnsFilter(x_fd, cq_coeffs, cfg.ctns_start_bin);
  const CtnsDecision d =
      PredictionGain(x_fd, x_ct, cfg.ctns_start_bin, cfg.ctns_threshold_db);
  rec.prediction_gain_db = d.gain_db;
  rec.ctns_candidate = d.active;
  rec.ctns_unstable = cfg.ctns_enabled && d.active && !stable;
  p.ctns_flag = cfg.ctns_enabled && d.active && stable;
  rec.ctns_flag = p.ctns_flag;
  if (p.ctns_flag) {
    p.cplx_mag_indices = cq.mag_indices;
    p.cplx_phase_indices = cq.phase_indices;
    st.ctns_coeffs = cq_coeffs;
  }
  const std::vector<Complex>& coded = p.ctns_flag ? x_ct : x_fd;

  st.high_contrast = Contrast(st.envelope, cfg);
  const auto& budget = cfg.budget.For(cfg.mode);
  const std::size_t n_bands = cfg.layout.size();
  p.scale_factors.assign(n_bands, kMinGainDb);
  rec.band_estimated_bits.assign(n_bands, 0.0);
  rec.band_overflow.assign(n_bands, false);

  for (const CoefRun& r : Runs(cfg)) {
    const auto band = std::span<const Complex>(coded).subspan(r.begin, r.end - r.begin);
    const BandContext ctx{&pq, static_cast<bool>(st.high_contrast[r.band]),
                          r.first_is_real};
    if (r.band != n_bands - 1 || r.begin != n_bins - 1) {
      const ScaleFactorChoice c = FindScaleFactor(band, budget[r.band], ctx);
      p.scale_factors[r.band] = c.gain_db;
      rec.band_estimated_bits[r.band] = c.estimated_bits;
      rec.band_overflow[r.band] = c.overflow;
      rec.estimated_bits += c.estimated_bits;
    } else {
      rec.estimated_bits += BandBits(band, p.scale_factors[r.band], ctx);
    }
    const double scale = GainToScale(p.scale_factors[r.band]);
    std::vector<Complex> scaled(band.begin(), band.end());
    for (Complex& c : scaled) c *= scale;
    const CoefficientCodes codes =
        pq.Quantize(scaled, ctx.high_contrast, r.first_is_real);
    p.index1.insert(p.index1.end(), codes.index1.begin(), codes.index1.end());
    p.index2.insert(p.index2.end(), codes.index2.begin(), codes.index2.end());
    p.phase.insert(p.phase.end(), codes.phase.begin(), codes.phase.end());
    out.cells.insert(out.cells.end(), codes.cells.begin(), codes.cells.end());
    const double inv = 1.0 / scale;
    for (const Complex& c : pq.Dequantize(codes, r.first_is_real))
      st.residual.push_back(c * inv);
  }
  rec.scale_factors = p.scale_factors;
  st.cells = out.cells;
  st.spectrum = ShapeInverse(st.residual, st.ctns_coeffs, st.envelope, cfg);
  return out;
}

}  // namespace

void CodecConfig::Validate() const {
  window.Validate();
  if (!std::has_single_bit(window.frame_len) || window.frame_len > 0xFFFF)
    throw InvalidArgument("frame length must be a power of two below 65536");
  layout.Validate();
  if (layout.num_bins() != window.frame_len / 2)
    throw InvalidArgument("band layout must cover bins 0..frame_len/2-1");
  for (BitrateMode m : {BitrateMode::k12kbps, BitrateMode::k16kbps}) {
    const auto& b = budget.For(m);
    if (b.size() != layout.size())
      throw InvalidArgument("bit budget needs one entry per band");
    if (std::any_of(b.begin(), b.end(), [](int v) { return v <= 0; }))
      throw InvalidArgument("bit budgets must be positive");
  }
  if (lpc_order < 1 || lpc_order > 255)
    throw InvalidArgument("LPC order must be in [1, 255]");
  if (!(fdns_weight > 0.0 && fdns_weight <= 1.0) ||
      !(ctns_weight > 0.0 && ctns_weight <= 1.0))
    throw InvalidArgument("bandwidth-expansion weights must be in (0, 1]");
  if (ctns_start_bin >= num_bins() - 1)
    throw InvalidArgument("CTNS start bin beyond the spectrum");
  if (!(fer_threshold > 0.0 && fer_threshold < 1.0))
    throw InvalidArgument("FER threshold must be in (0, 1)");
  if (!std::isfinite(ctns_threshold_db))
    throw InvalidArgument("CTNS threshold must be finite");
  for (const auto& set : {phase_sets.high, phase_sets.low})
    for (int c : set)
      if (c < 1 || c > 128 || !std::has_single_bit(static_cast<unsigned>(c)))
        throw InvalidArgument("phase cell counts must be powers of two <= 128");
  if (!std::has_single_bit(static_cast<unsigned>(cplx_quantizer.phase_cells)))
    throw InvalidArgument("complex LPC phase cells must be a power of two");
  if (!(lsf_quantizer.step > 0.0) || lsf_quantizer.min_gap < 0.0)
    throw InvalidArgument("invalid LSF quantizer");
  if (!(cplx_quantizer.step_db > 0.0) ||
      !(cplx_quantizer.max_db > cplx_quantizer.min_db))
    throw InvalidArgument("invalid complex LPC quantizer");
  table.Validate();
}

FrameFormat MakeFrameFormat(const CodecConfig& cfg) {
  FrameFormat f;
  f.lpc_order = cfg.lpc_order;
  f.lsf_max_index = cfg.lsf_quantizer.MaxIndex();
  f.lsf_index_bits = BitWidth(f.lsf_max_index);
  f.cplx_max_mag_index = cfg.cplx_quantizer.MaxMagIndex();
  f.cplx_mag_bits = BitWidth(f.cplx_max_mag_index + 1);
  f.cplx_phase_bits = PhaseBits(cfg.cplx_quantizer.phase_cells);
  f.layout = cfg.layout;
  f.num_coeffs = cfg.num_bins();
  return f;
}

StreamHeader MakeHeader(const CodecConfig& cfg, std::uint32_t original_length,
                        std::uint32_t num_frames) {
  StreamHeader h;
  h.sample_rate_hz = cfg.sample_rate_hz;
  h.frame_len = static_cast<std::uint16_t>(cfg.window.frame_len);
  h.overlap_len = static_cast<std::uint16_t>(cfg.window.overlap_len);
  h.window_split = cfg.window.split == WindowSplit::kSquareRoot ? 0 : 1;
  h.mode = cfg.mode;
  h.original_length = original_length;
  h.lpc_order = static_cast<std::uint8_t>(cfg.lpc_order);
  h.num_frames = num_frames;
  h.ctns_start_bin = static_cast<std::uint16_t>(cfg.ctns_start_bin);
  h.fer_threshold = cfg.fer_threshold;
  h.band_edges.assign(cfg.layout.upper_edges.begin(), cfg.layout.upper_edges.end());
  for (std::size_t i = 0; i < h.phase_bits_high.size(); ++i) {
    h.phase_bits_high[i] = static_cast<std::uint8_t>(PhaseBits(cfg.phase_sets.high[i]));
    h.phase_bits_low[i] = static_cast<std::uint8_t>(PhaseBits(cfg.phase_sets.low[i]));
  }
  h.lsf_step = cfg.lsf_quantizer.step;
  h.lsf_min_gap = cfg.lsf_quantizer.min_gap;
  h.cplx_step_db = cfg.cplx_quantizer.step_db;
  h.cplx_min_db = cfg.cplx_quantizer.min_db;
  h.cplx_max_db = cfg.cplx_quantizer.max_db;
  h.cplx_phase_cells = static_cast<std::uint16_t>(cfg.cplx_quantizer.phase_cells);
  h.table_version = cfg.table.version;
  return h;
}

CodecConfig ConfigFromHeader(const StreamHeader& h, const EcupqTable& table) {
  if (h.table_version != table.version)
    throw CorruptStream("stream uses quantizer table '" + h.table_version +
                        "', have '" + table.version + "'");
  CodecConfig cfg;
  cfg.window.frame_len = h.frame_len;
  cfg.window.overlap_len = h.overlap_len;
  cfg.window.split =
      h.window_split == 0 ? WindowSplit::kSquareRoot : WindowSplit::kAnalysisOnly;
  cfg.sample_rate_hz = h.sample_rate_hz;
  cfg.mode = h.mode;
  cfg.lpc_order = h.lpc_order;
  cfg.ctns_start_bin = h.ctns_start_bin;
  cfg.fer_threshold = h.fer_threshold;
  cfg.layout.upper_edges.assign(h.band_edges.begin(), h.band_edges.end());
  for (std::size_t i = 0; i < h.phase_bits_high.size(); ++i) {
    if (h.phase_bits_high[i] > 7 || h.phase_bits_low[i] > 7)
      throw CorruptStream("phase cell count out of range");
    cfg.phase_sets.high[i] = 1 << h.phase_bits_high[i];
    cfg.phase_sets.low[i] = 1 << h.phase_bits_low[i];
  }
  cfg.lsf_quantizer.step = h.lsf_step;
  cfg.lsf_quantizer.min_gap = h.lsf_min_gap;
  cfg.cplx_quantizer.step_db = h.cplx_step_db;
  cfg.cplx_quantizer.min_db = h.cplx_min_db;
  cfg.cplx_quantizer.max_db = h.cplx_max_db;
  cfg.cplx_quantizer.phase_cells = h.cplx_phase_cells;
  cfg.table = table;
  // Budgets are encoder-side only; keep defaults sized to the layout.
  cfg.budget.kbps12.resize(cfg.layout.size(), 16);
  cfg.budget.kbps16.resize(cfg.layout.size(), 23);
  try {
    cfg.Validate();
  } catch (const InvalidArgument& e) {
    throw CorruptStream(std::string("inconsistent header: ") + e.what());
  }
  return cfg;
}

std::size_t StreamFrameCount(std::size_t length, const WindowSpec& spec) {
  return NumFrames(length + 2 * spec.overlap_len, spec);
}

EncodedFrame EncodeFrame(const AnalysisFrame& frame, const CodecConfig& cfg) {
  try {
    if (frame.samples.size() != cfg.window.frame_len)
      throw InvalidArgument("frame length does not match the configuration");
    return EncodeFrameImpl(frame, cfg);
  } catch (const FrameError&) {
    throw;
  } catch (const std::exception& e) {
    throw FrameError(e.what(), frame.index);
  }
}

std::vector<double> DecodeFrame(const FramePayload& p, const CodecConfig& cfg,
                                DecoderState* state) {
  DecoderState st;
  st.envelope = EnvelopeFromIndices(p.lsf_indices, cfg);
  if (p.ctns_flag) st.ctns_coeffs = CtnsFromIndices(p, cfg);
  st.high_contrast = Contrast(st.envelope, cfg);
  st.cells = CellsFor(p.index1, st.high_contrast, cfg);
  st.residual = DequantizeResidual(p, st.cells, cfg);
  st.spectrum = ShapeInverse(st.residual, st.ctns_coeffs, st.envelope, cfg);
  auto samples = Synthesize(st.spectrum, cfg);
  if (state) *state = std::move(st);
  return samples;
}

EncodeResult EncodeStream(std::span<const double> pcm, const CodecConfig& cfg) {
  cfg.Validate();
  if (cfg.bypass)
    throw InvalidArgument("bypass mode produces no stream; use BypassRoundTrip");
  if (pcm.size() > 0xFFFFFFFFu - 2 * cfg.window.overlap_len)
    throw InvalidArgument("signal too long for the stream header");
  for (double v : pcm)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite input sample");

  const auto frames = FrameSignal(Padded(pcm, cfg.window), cfg.window);
  EncodeResult res;
  res.header = MakeHeader(cfg, static_cast<std::uint32_t>(pcm.size()),
                          static_cast<std::uint32_t>(frames.size()));
  res.stream = WriteHeader(res.header);
  const FrameFormat format = MakeFrameFormat(cfg);
  for (const AnalysisFrame& f : frames) {
    EncodedFrame ef = EncodeFrame(f, cfg);
    const PackedFrame packed = PackFrame(ef.payload, ef.cells, format);
    AppendFrame(res.stream, packed.bytes);
    ef.record.side_bits = packed.side_bits;
    ef.record.spectral_bits = packed.spectral_bits;
    ef.record.frame_bytes = packed.bytes.size() + 2;
    res.frames.push_back(std::move(ef.record));
  }
  return res;
}

DecodeResult DecodeStream(std::span<const std::uint8_t> stream,
                          const EcupqTable& table) {
  DecodeResult res;
  std::size_t pos = 0;
  res.header = ReadHeader(stream, pos);
  const CodecConfig cfg = ConfigFromHeader(res.header, table);
  if (res.header.num_frames !=
      StreamFrameCount(res.header.original_length, cfg.window))
    throw CorruptStream("frame count does not match the signal length");

  const FrameFormat format = MakeFrameFormat(cfg);
  const CellCounter cells = [&cfg](const FramePayload& p) {
    const auto env = EnvelopeFromIndices(p.lsf_indices, cfg);
    return CellsFor(p.index1, Contrast(env, cfg), cfg);
  };
  std::vector<std::vector<double>> out;
  out.reserve(res.header.num_frames);
  for (std::size_t n = 0; n < res.header.num_frames; ++n) {
    const auto body = NextFrame(stream, pos, n);
    FramePayload p = UnpackFrame(body, format, cells, n);
    try {
      out.push_back(DecodeFrame(p, cfg));
    } catch (const CorruptStream&) {
      throw;
    } catch (const std::exception& e) {
      throw CorruptStream(e.what(), n);
    }
    res.payloads.push_back(std::move(p));
  }
  if (pos != stream.size())
    throw CorruptStream("trailing bytes after the last frame");
  res.pcm = Unpadded(out, cfg.window, res.header.original_length);
  return res;
}

std::vector<double> BypassRoundTrip(std::span<const double> pcm,
                                    const CodecConfig& cfg) {
  cfg.Validate();
  const std::size_t n_bins = cfg.num_bins();
  std::vector<std::vector<double>> out;
  for (const AnalysisFrame& f : FrameSignal(Padded(pcm, cfg.window), cfg.window)) {
    const Spectrum spec = Dft(f, cfg.sample_rate_hz);
    const LpModel lp = EnvelopeModel(f.samples, cfg);
    const FrequencyEnvelope env = ComputeFrequencyEnvelope(lp.coeffs, n_bins);
    const auto x_fd = FdnsForward(spec.bins, env);
    const ComplexLpModel cm = BandwidthExpand(
        AnalyzeLp(std::span<const Complex>(x_fd).first(n_bins - 1), cfg.lpc_order),
        cfg.ctns_weight);
    const auto x_ct = CtnsFilter(x_fd, cm.coeffs, cfg.ctns_start_bin);
    const CtnsDecision d =
        PredictionGain(x_fd, x_ct, cfg.ctns_start_bin, cfg.ctns_threshold_db);
    const bool on = cfg.ctns_enabled && d.active &&
                    IsMinimumPhase(std::span<const Complex>(cm.coeffs));
    const std::vector<Complex> none;
    const auto bins = on ? ShapeInverse(x_ct, cm.coeffs, env, cfg)
                         : ShapeInverse(x_fd, none, env, cfg);
    out.push_back(Synthesize(bins, cfg));
  }
  return Unpadded(out, cfg.window, pcm.size());
}

}  // namespace uns
