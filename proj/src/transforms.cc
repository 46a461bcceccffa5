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

#include "uns/transforms.h"

#include <cmath>
#include <numbers>
#include <string>

#include "uns/errors.h"

namespace uns {

namespace {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

const Fft& FftFor(std::size_t n) {
  static const Fft kFft1024(1024);
  if (n == 1024) return kFft1024;
  thread_local std::vector<Fft> cache;
  for (const Fft& f : cache)
    if (f.size() == n) return f;
  cache.emplace_back(n);
  return cache.back();
}

// Cosine kernel of the MDCT, cached per N. Rows are coefficients k.
const std::vector<double>& MdctKernel(std::size_t n) {
  thread_local std::size_t cached_n = 0;
  thread_local std::vector<double> kernel;
  if (cached_n != n) {
    kernel.assign(n * 2 * n, 0.0);
    const double pi = std::numbers::pi;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < 2 * n; ++i)
        kernel[k * 2 * n + i] = std::cos(pi / static_cast<double>(n) *
                                         (i + 0.5 + n / 2.0) * (k + 0.5));
    cached_n = n;
  }
  return kernel;
}

}  // namespace

void WindowSpec::Validate() const {
  if (overlap_len == 0 || overlap_len > frame_len / 2)
    throw InvalidArgument("window overlap must be in (0, frame_len/2], got " +
                          std::to_string(overlap_len));
}

std::vector<double> MakeWindow(const WindowSpec& spec) {
  spec.Validate();
  const std::size_t ov = spec.overlap_len;
  const std::size_t hop = spec.hop();
  std::vector<double> w(spec.frame_len, 1.0);
  for (std::size_t i = 0; i < ov; ++i) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(ov));
    w[i] = 0.5 * (1.0 - c);
    w[hop + i] = 0.5 * (1.0 + c);
  }
  return w;
}

std::size_t NumFrames(std::size_t num_samples, const WindowSpec& spec) {
  if (num_samples == 0) return 0;
  if (num_samples <= spec.frame_len) return 1;
  const std::size_t rest = num_samples - spec.frame_len;
  return (rest + spec.hop() - 1) / spec.hop() + 1;
}

std::vector<double> AnalysisWindow(const WindowSpec& spec) {
  std::vector<double> w = MakeWindow(spec);
  if (spec.split == WindowSplit::kSquareRoot)
    for (double& v : w) v = std::sqrt(v);
  return w;
}

std::vector<double> SynthesisWindow(const WindowSpec& spec) {
  if (spec.split == WindowSplit::kSquareRoot) return AnalysisWindow(spec);
  spec.Validate();
  return std::vector<double>(spec.frame_len, 1.0);
}

std::vector<AnalysisFrame> FrameSignal(std::span<const double> pcm,
                                       const WindowSpec& spec) {
  const std::vector<double> window = AnalysisWindow(spec);
  const std::size_t count = NumFrames(pcm.size(), spec);
  std::vector<AnalysisFrame> frames(count);
  for (std::size_t n = 0; n < count; ++n) {
    AnalysisFrame& f = frames[n];
    f.index = n;
    f.samples.assign(spec.frame_len, 0.0);
    const std::size_t start = n * spec.hop();
    for (std::size_t i = 0; i < spec.frame_len && start + i < pcm.size(); ++i)
      f.samples[i] = pcm[start + i] * window[i];
  }
  return frames;
}

std::vector<double> OverlapAdd(std::span<const std::vector<double>> frames,
                               const WindowSpec& spec, std::size_t out_len) {
  const std::vector<double> window = SynthesisWindow(spec);
  std::vector<double> out(out_len, 0.0);
  for (std::size_t n = 0; n < frames.size(); ++n) {
    const std::size_t start = n * spec.hop();
    const auto& f = frames[n];
    if (f.size() != spec.frame_len)
      throw InvalidArgument("overlap-add frame has the wrong length");
    for (std::size_t i = 0; i < f.size() && start + i < out_len; ++i)
      out[start + i] += f[i] * window[i];
  }
  return out;
}

Fft::Fft(std::size_t n) : n_(n), twiddle_(n / 2), bitrev_(n) {
  if (!IsPowerOfTwo(n)) throw InvalidArgument("FFT size must be a power of two");
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi *
                                      static_cast<double>(k) /
                                      static_cast<double>(n));
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bitrev_[i] = r;
  }
}

void Fft::Forward(std::span<Complex> data) const { Transform(data, false); }

void Fft::Inverse(std::span<Complex> data) const {
  Transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (Complex& c : data) c *= scale;
}

void Fft::Transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) throw InvalidArgument("FFT length mismatch");
  for (std::size_t i = 0; i < n_; ++i)
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = twiddle_[j * stride];
        if (inverse) w = std::conj(w);
        const Complex t = w * data[start + j + half];
        data[start + j + half] = data[start + j] - t;
        data[start + j] += t;
      }
    }
  }
}

Spectrum Dft(const AnalysisFrame& frame, double sample_rate_hz) {
  const std::size_t n = frame.samples.size();
  if (!IsPowerOfTwo(n) || n < 2)
    throw InvalidArgument("DFT frame length must be a power of two, got " +
                          std::to_string(n));
  std::vector<Complex> buf(frame.samples.begin(), frame.samples.end());
  FftFor(n).Forward(buf);
  Spectrum s;
  s.frame_index = frame.index;
  s.bin_hz = sample_rate_hz / static_cast<double>(n);
  s.bins.assign(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n / 2 + 1));
  s.bins.front().imag(0.0);
  s.bins.back().imag(0.0);
  return s;
}

AnalysisFrame Idft(const Spectrum& spectrum) {
  const std::size_t half = spectrum.bins.size() - 1;
  const std::size_t n = 2 * half;
  if (spectrum.bins.size() < 2 || !IsPowerOfTwo(n))
    throw InvalidArgument("IDFT expects N/2+1 bins with N a power of two");
  std::vector<Complex> buf(n);
  buf[0] = spectrum.bins[0].real();
  buf[half] = spectrum.bins[half].real();
  for (std::size_t k = 1; k < half; ++k) {
    buf[k] = spectrum.bins[k];
    buf[n - k] = std::conj(spectrum.bins[k]);
  }
  FftFor(n).Inverse(buf);
  AnalysisFrame f;
  f.index = spectrum.frame_index;
  f.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.samples[i] = buf[i].real();
  return f;
}

std::vector<double> Mdct(std::span<const double> input) {
  if (input.empty() || input.size() % 2 != 0)
    throw InvalidArgument("MDCT input length must be even and non-zero");
  const std::size_t n = input.size() / 2;
  const auto& kernel = MdctKernel(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = &kernel[k * 2 * n];
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += input[i] * row[i];
    out[k] = acc;
  }
  return out;
}

std::vector<double> Imdct(std::span<const double> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("IMDCT input must be non-empty");
  const std::size_t n = coeffs.size();
  const auto& kernel = MdctKernel(n);
  std::vector<double> out(2 * n, 0.0);
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = &kernel[k * 2 * n];
    const double c = coeffs[k] * scale;
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < 2 * n; ++i) out[i] += c * row[i];
  }
  return out;
}

std::vector<double> SineWindow(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i)
    w[i] = std::sin(std::numbers::pi * (i + 0.5) / static_cast<double>(length));
  return w;
}

}  // namespace uns
