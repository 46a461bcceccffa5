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

#include "uns/lp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uns/errors.h"
#include "uns/polar_quant.h"

namespace uns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNoiseFloor = 1e-9;
// White-noise correction for the real envelope model (-40 dB). Pure tones
// otherwise leave Levinson at the edge of stability.
constexpr double kRealNoiseFloor = 1e-4;
constexpr int kLsfGrid = 8192;

template <typename T>
std::vector<T> AutocorrImpl(std::span<const T> x, std::size_t max_lag) {
  if (max_lag >= x.size())
    throw InvalidArgument("autocorrelation lag " + std::to_string(max_lag) +
                          " needs more than " + std::to_string(x.size()) +
                          " samples");
  std::vector<T> r(max_lag + 1, T{});
  for (std::size_t k = 0; k <= max_lag; ++k) {
    T acc{};
    for (std::size_t t = k; t < x.size(); ++t) {
      if constexpr (std::is_same_v<T, Complex>)
        acc += x[t] * std::conj(x[t - k]);
      else
        acc += x[t] * x[t - k];
    }
    r[k] = acc;
  }
  return r;
}

double Conj(double v) { return v; }
Complex Conj(Complex v) { return std::conj(v); }
double Norm(double v) { return v * v; }
double Norm(Complex v) { return std::norm(v); }
double Real(double v) { return v; }
double Real(Complex v) { return v.real(); }

template <typename T, typename Model>
Model LevinsonImpl(std::span<const T> r, std::size_t order) {
  if (r.size() <= order)
    throw InvalidArgument("Levinson needs order+1 autocorrelation lags");
  if (!(Real(r[0]) > 0.0))
    throw DegenerateInput("Levinson recursion needs r[0] > 0");
  Model m;
  m.coeffs.assign(order, T{});
  std::vector<T> prev(order, T{});
  double err = Real(r[0]);
  for (std::size_t i = 1; i <= order; ++i) {
    T acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += m.coeffs[j - 1] * r[i - j];
    T k = -acc / err;
    const double mag = std::sqrt(Norm(k));
    if (mag >= kMaxReflection) {
      k *= kMaxReflection / mag;
      m.clamped = true;
    }
    prev = m.coeffs;
    for (std::size_t j = 1; j < i; ++j)
      m.coeffs[j - 1] = prev[j - 1] + k * Conj(prev[i - j - 1]);
    m.coeffs[i - 1] = k;
    err *= 1.0 - Norm(k);
  }
  m.error = err;
  return m;
}

template <typename T>
bool IsMinimumPhaseImpl(std::span<const T> coeffs) {
  std::vector<T> a(coeffs.begin(), coeffs.end());
  for (std::size_t m = a.size(); m > 0; --m) {
    const T k = a[m - 1];
    const double kk = Norm(k);
    if (!(kk < 1.0)) return false;
    std::vector<T> next(m - 1);
    for (std::size_t i = 1; i < m; ++i)
      next[i - 1] = (a[i - 1] - k * Conj(a[m - i - 1])) / (1.0 - kk);
    a = std::move(next);
  }
  return true;
}

// Divides p (ascending powers of z^-1) by (1 + c z^-1), dropping the
// remainder.
std::vector<double> DivideLinear(const std::vector<double>& p, double c) {
  std::vector<double> q(p.size() - 1);
  double carry = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = p[i] - c * carry;
    carry = q[i];
  }
  return q;
}

// Divides p by (1 - z^-2).
std::vector<double> DivideQuadratic(const std::vector<double>& p) {
  std::vector<double> q(p.size() - 2);
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = p[i] + (i >= 2 ? q[i - 2] : 0.0);
  return q;
}

// Real function whose zeros on (0, pi) are the unit-circle roots of the
// symmetric polynomial b of even degree d.
double EvalSymmetric(const std::vector<double>& b, double w) {
  const std::size_t half = (b.size() - 1) / 2;
  double acc = b[half];
  const double c = std::cos(w);
  double t_prev = 1.0, t_cur = c;  // Chebyshev T_0, T_1
  for (std::size_t k = 1; k <= half; ++k) {
    acc += 2.0 * b[half - k] * t_cur;
    const double t_next = 2.0 * c * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
  }
  return acc;
}

std::vector<double> UnitCircleRoots(const std::vector<double>& b) {
  std::vector<double> roots;
  double w0 = 0.0;
  double f0 = EvalSymmetric(b, w0);
  for (int i = 1; i <= kLsfGrid; ++i) {
    const double w1 = kPi * i / kLsfGrid;
    const double f1 = EvalSymmetric(b, w1);
    if (f1 == 0.0 && i < kLsfGrid) {
      roots.push_back(w1);
    } else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double lo = w0, hi = w1, flo = f0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = EvalSymmetric(b, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    w0 = w1;
    f0 = f1;
  }
  return roots;
}

std::vector<double> MultiplyPoly(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> PolyFromRoots(std::span<const double> angles) {
  std::vector<double> p{1.0};
  for (double w : angles) p = MultiplyPoly(p, {1.0, -2.0 * std::cos(w), 1.0});
  return p;
}

int BitsFor(int max_value) {
  int bits = 0;
  while ((1 << bits) <= max_value) ++bits;
  return bits;
}

}  // namespace

std::vector<double> Autocorr(std::span<const double> x, std::size_t max_lag) {
  return AutocorrImpl<double>(x, max_lag);
}

std::vector<Complex> Autocorr(std::span<const Complex> x, std::size_t max_lag) {
  return AutocorrImpl<Complex>(x, max_lag);
}

LpModel Levinson(std::span<const double> r, std::size_t order) {
  return LevinsonImpl<double, LpModel>(r, order);
}

ComplexLpModel Levinson(std::span<const Complex> r, std::size_t order) {
  return LevinsonImpl<Complex, ComplexLpModel>(r, order);
}

LpModel AnalyzeLp(std::span<const double> x, std::size_t order) {
  std::vector<double> r = Autocorr(x, order);
  if (!(r[0] > 0.0)) {
    LpModel flat;
    flat.coeffs.assign(order, 0.0);
    return flat;
  }
  r[0] *= 1.0 + kRealNoiseFloor;
  return Levinson(r, order);
}

ComplexLpModel AnalyzeLp(std::span<const Complex> x, std::size_t order) {
  std::vector<Complex> r = Autocorr(x, order);
  if (!(r[0].real() > 0.0)) {
    ComplexLpModel flat;
    flat.coeffs.assign(order, Complex{});
    return flat;
  }
  r[0] = Complex(r[0].real() * (1.0 + kNoiseFloor), 0.0);
  return Levinson(r, order);
}

LpModel BandwidthExpand(const LpModel& m, double gamma) {
  LpModel out = m;
  double g = 1.0;
  for (double& a : out.coeffs) {
    g *= gamma;
    a *= g;
  }
  return out;
}

ComplexLpModel BandwidthExpand(const ComplexLpModel& m, double gamma) {
  ComplexLpModel out = m;
  double g = 1.0;
  for (Complex& a : out.coeffs) {
    g *= gamma;
    a *= g;
  }
  return out;
}

bool IsMinimumPhase(std::span<const double> coeffs) {
  return IsMinimumPhaseImpl<double>(coeffs);
}

bool IsMinimumPhase(std::span<const Complex> coeffs) {
  return IsMinimumPhaseImpl<Complex>(coeffs);
}

std::vector<double> LpcToLsf(std::span<const double> coeffs) {
  const std::size_t order = coeffs.size();
  if (order == 0) return {};
  if (!IsMinimumPhase(coeffs))
    throw InvalidArgument("LSF conversion needs a minimum-phase model");
  // P(z) = A(z) + z^-(p+1) A(1/z), Q(z) = A(z) - z^-(p+1) A(1/z).
  std::vector<double> a(order + 2, 0.0);
  a[0] = 1.0;
  std::copy(coeffs.begin(), coeffs.end(), a.begin() + 1);
  std::vector<double> p(order + 2), q(order + 2);
  for (std::size_t i = 0; i < order + 2; ++i) {
    p[i] = a[i] + a[order + 1 - i];
    q[i] = a[i] - a[order + 1 - i];
  }
  std::vector<double> pd, qd;
  if (order % 2 == 0) {
    pd = DivideLinear(p, 1.0);
    qd = DivideLinear(q, -1.0);
  } else {
    pd = p;
    qd = DivideQuadratic(q);
  }
  const std::vector<double> pr = UnitCircleRoots(pd);
  const std::vector<double> qr = UnitCircleRoots(qd);
  if (pr.size() != (pd.size() - 1) / 2 || qr.size() != (qd.size() - 1) / 2 ||
      pr.size() + qr.size() != order)
    throw InvalidArgument("LSF root search failed to isolate all roots");
  std::vector<double> lsf;
  lsf.reserve(order);
  for (std::size_t i = 0; i < order; ++i)
    lsf.push_back(i % 2 == 0 ? pr[i / 2] : qr[i / 2]);
  return lsf;
}

std::vector<double> LsfToLpc(std::span<const double> lsf) {
  const std::size_t order = lsf.size();
  if (order == 0) return {};
  std::vector<double> pw, qw;
  for (std::size_t i = 0; i < order; ++i)
    (i % 2 == 0 ? pw : qw).push_back(lsf[i]);
  std::vector<double> p = PolyFromRoots(pw);
  std::vector<double> q = PolyFromRoots(qw);
  if (order % 2 == 0) {
    p = MultiplyPoly(p, {1.0, 1.0});
    q = MultiplyPoly(q, {1.0, -1.0});
  } else {
    q = MultiplyPoly(q, {1.0, 0.0, -1.0});
  }
  std::vector<double> coeffs(order);
  for (std::size_t i = 1; i <= order; ++i) coeffs[i - 1] = 0.5 * (p[i] + q[i]);
  return coeffs;
}

int LsfQuantizer::MaxIndex() const {
  return static_cast<int>(std::floor(kPi / step + 0.5));
}

int ComplexLpcQuantizer::MaxMagIndex() const {
  return static_cast<int>(std::lround((max_db - min_db) / step_db));
}

QuantizedLpc QuantizeLsf(std::span<const double> lsf, const LsfQuantizer& q) {
  QuantizedLpc out;
  const int max_index = q.MaxIndex();
  out.indices.reserve(lsf.size());
  for (double w : lsf) {
    // Grid midpoints round up even when the division lands a few ulps low.
    const long idx = static_cast<long>(std::floor(w / q.step + 0.5 + 1e-9));
    out.indices.push_back(static_cast<int>(std::clamp<long>(idx, 0, max_index)));
  }
  out.bits_used = lsf.size() * static_cast<std::size_t>(BitsFor(max_index));
  return out;
}

std::vector<double> DequantizeLsf(const QuantizedLpc& code,
                                  const LsfQuantizer& q) {
  std::vector<double> lsf;
  lsf.reserve(code.indices.size());
  for (int idx : code.indices) lsf.push_back(idx * q.step);
  std::sort(lsf.begin(), lsf.end());
  const std::size_t n = lsf.size();
  if (n == 0) return lsf;
  double floor = q.min_gap;
  for (double& w : lsf) {
    w = std::max(w, floor);
    floor = w + q.min_gap;
  }
  double ceil = kPi - q.min_gap;
  for (std::size_t i = n; i-- > 0;) {
    lsf[i] = std::min(lsf[i], ceil);
    ceil = lsf[i] - q.min_gap;
  }
  return lsf;
}

QuantizedLpc QuantizeComplexLpc(std::span<const Complex> coeffs,
                                const ComplexLpcQuantizer& q) {
  QuantizedLpc out;
  const int max_mag = q.MaxMagIndex();
  const int phase_bits = PhaseBits(q.phase_cells);
  const int mag_bits = BitsFor(max_mag + 1);
  for (const Complex& c : coeffs) {
    const double mag = std::abs(c);
    long idx = -1;
    if (mag > 0.0) idx = std::lround((20.0 * std::log10(mag) - q.min_db) / q.step_db);
    if (idx < 0) {
      out.mag_indices.push_back(ComplexLpcQuantizer::kZeroCell);
      out.phase_indices.push_back(0);
      out.bits_used += static_cast<std::size_t>(mag_bits);
    } else {
      out.mag_indices.push_back(static_cast<int>(std::min<long>(idx, max_mag)));
      out.phase_indices.push_back(QuantizePhase(std::arg(c), q.phase_cells));
      out.bits_used += static_cast<std::size_t>(mag_bits + phase_bits);
    }
  }
  return out;
}

std::vector<Complex> DequantizeComplexLpc(const QuantizedLpc& code,
                                          const ComplexLpcQuantizer& q) {
  std::vector<Complex> out;
  out.reserve(code.mag_indices.size());
  for (std::size_t i = 0; i < code.mag_indices.size(); ++i) {
    const int m = code.mag_indices[i];
    if (m == ComplexLpcQuantizer::kZeroCell) {
      out.emplace_back(0.0, 0.0);
      continue;
    }
    const double mag = std::pow(10.0, (q.min_db + m * q.step_db) / 20.0);
    out.push_back(std::polar(mag, DequantizePhase(code.phase_indices[i],
                                                  q.phase_cells)));
  }
  return out;
}

FrequencyEnvelope ComputeFrequencyEnvelope(std::span<const double> coeffs,
                                           std::size_t n_bins) {
  if (n_bins < 2) throw InvalidArgument("envelope needs at least two bins");
  FrequencyEnvelope env;
  env.values.resize(n_bins);
  env.values_db.resize(n_bins);
  const double dw = kPi / static_cast<double>(n_bins - 1);
  for (std::size_t f = 0; f < n_bins; ++f) {
    const double w = dw * static_cast<double>(f);
    Complex a(1.0, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      a += coeffs[k] * std::polar(1.0, -w * static_cast<double>(k + 1));
    double mag = std::abs(a);
    if (mag < 1e-12) {
      mag = 1e-12;
      env.clamped = true;
    }
    env.values[f] = 1.0 / mag;
    env.values_db[f] = 20.0 * std::log10(env.values[f]);
  }
  return env;
}

}  // namespace uns
