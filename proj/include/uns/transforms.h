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

// Framing, tapered windowing, overlap-add and the real DFT used by the codec,
// plus a direct MDCT used by the TNS domain comparison.

#ifndef UNS_TRANSFORMS_H_
#define UNS_TRANSFORMS_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uns {

using Complex = std::complex<double>;

// How the overlap-add window is shared between analysis and synthesis.
// kSquareRoot applies sqrt(w) on both sides (sine tapers); kAnalysisOnly
// applies w before the transform and nothing after it.
enum class WindowSplit { kSquareRoot, kAnalysisOnly };

struct WindowSpec {
  std::size_t frame_len = 1024;
  std::size_t overlap_len = 256;
  WindowSplit split = WindowSplit::kSquareRoot;

  std::size_t hop() const { return frame_len - overlap_len; }
  // Throws InvalidArgument unless 0 < overlap_len <= frame_len / 2.
  void Validate() const;
};

struct AnalysisFrame {
  std::size_t index = 0;
  std::vector<double> samples;
};

// One-sided spectrum of a real frame: bins 0..N/2.
struct Spectrum {
  std::size_t frame_index = 0;
  std::vector<Complex> bins;
  double bin_hz = 12.5;
};

// Raised-cosine rise over [0, overlap), flat middle, mirrored fall.
// w[i] + w[hop + i] == 1 for i in [0, overlap).
std::vector<double> MakeWindow(const WindowSpec& spec);

// Per-side weights; their product is MakeWindow(spec).
std::vector<double> AnalysisWindow(const WindowSpec& spec);
std::vector<double> SynthesisWindow(const WindowSpec& spec);
// Number of frames needed to cover `num_samples` (last frame zero padded).
std::size_t NumFrames(std::size_t num_samples, const WindowSpec& spec);

// Frames are multiplied by the analysis window.
std::vector<AnalysisFrame> FrameSignal(std::span<const double> pcm,
                                       const WindowSpec& spec);

// Overlap-add of frames advancing by spec.hop() after the synthesis window;
// output is truncated or zero-extended to `out_len`.
std::vector<double> OverlapAdd(std::span<const std::vector<double>> frames,
                               const WindowSpec& spec, std::size_t out_len);

// In-place radix-2 complex FFT. Forward is unnormalized, inverse scales 1/N.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void Forward(std::span<Complex> data) const;
  void Inverse(std::span<Complex> data) const;

 private:
  void Transform(std::span<Complex> data, bool inverse) const;

  std::size_t n_;
  std::vector<Complex> twiddle_;
  std::vector<std::size_t> bitrev_;
};

Spectrum Dft(const AnalysisFrame& frame, double sample_rate_hz = 12800.0);
// Inverse of Dft using the Hermitian extension of the one-sided bins. The
// imaginary parts of the DC and Nyquist bins are ignored.
AnalysisFrame Idft(const Spectrum& spectrum);

// Direct MDCT: 2N samples in, N coefficients out. No window is applied.
std::vector<double> Mdct(std::span<const double> input);
// IMDCT scaled so that sine-windowed analysis + synthesis with 50% overlap-add
// reconstructs the input (time-domain aliasing cancels between neighbours).
std::vector<double> Imdct(std::span<const double> coeffs);
// Sine window of length 2N satisfying the Princen-Bradley condition.
std::vector<double> SineWindow(std::size_t length);

}  // namespace uns

#endif  // UNS_TRANSFORMS_H_
