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

// Entropy-constrained scalar quantizer design for the magnitude core region.
// Cell statistics of the Rayleigh density have closed forms, so each Lloyd
// step is exact; the Lagrange multiplier is bisected to hit the target rate.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "uns/errors.h"
#include "uns/polar_quant.h"

namespace uns {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Tail(double x) { return x == kInf ? 0.0 : std::exp(-0.5 * x * x); }

// Integrals of a^k p(a) over [x, y) for p(a) = a exp(-a^2/2).
double Mass(double x, double y) { return Tail(x) - Tail(y); }

double FirstMoment(double x, double y) {
  const double ey = y == kInf ? 0.0 : y * Tail(y);
  const double erf_y = y == kInf ? 1.0 : std::erf(y / std::numbers::sqrt2);
  return x * Tail(x) - ey +
         std::sqrt(std::numbers::pi / 2.0) *
             (erf_y - std::erf(x / std::numbers::sqrt2));
}

double SecondMoment(double x, double y) {
  const double gy = y == kInf ? 0.0 : (y * y + 2.0) * Tail(y);
  return (x * x + 2.0) * Tail(x) - gy;
}

// Phase cells per magnitude cell used for the joint design (the
// high-contrast set).
constexpr std::array<int, kEcupqCells> kDesignCells{1, 8, 16, 16, 32, 32, 64, 64};

// E[cos(theta - theta_hat)] for a uniform phase quantizer with n cells.
double PhaseGain(int n) {
  if (n == 1) return 0.0;
  const double x = std::numbers::pi / n;
  return std::sin(x) / x;
}

struct CellStats {
  std::array<double, kEcupqCells> prob{};
  double entropy = 0.0;  // (cell entropy + phase bits) per real dimension
  double mse = 0.0;      // complex-domain squared error
};

double Lower(const std::array<double, kEcupqCells>& t, int j) {
  return j == 0 ? 0.0 : t[j - 1];
}
double Upper(const std::array<double, kEcupqCells>& t, int j) { return t[j]; }

CellStats Evaluate(const EcupqTable& table) {
  CellStats s;
  for (int j = 0; j < kEcupqCells; ++j) {
    const double lo = Lower(table.thresholds, j), hi = Upper(table.thresholds, j);
    const double p = Mass(lo, hi);
    const double y = table.levels[j];
    s.prob[j] = p;
    if (p > 0.0)
      s.entropy -= 0.5 * p * (std::log2(p) - std::log2(kDesignCells[j]));
    s.mse += SecondMoment(lo, hi) -
             2.0 * y * PhaseGain(kDesignCells[j]) * FirstMoment(lo, hi) +
             y * y * p;
  }
  return s;
}

void UpdateLevels(EcupqTable& table) {
  for (int j = 0; j < kEcupqCells; ++j) {
    const double lo = Lower(table.thresholds, j), hi = Upper(table.thresholds, j);
    const double p = Mass(lo, hi);
    const double centroid = p > 0.0 ? FirstMoment(lo, hi) / p
                                    : 0.5 * (lo + table.thresholds[j]);
    table.levels[j] = PhaseGain(kDesignCells[j]) * centroid;
  }
}

// Runs the Lloyd iteration for one multiplier to a fixed point.
CellStats RunLloyd(EcupqTable& table, double lambda) {
  constexpr double kMinWidth = 1e-6;
  constexpr int kPinned = kEcupqCells - 2;
  const double top = table.thresholds[kPinned];
  for (int it = 0; it < 5000; ++it) {
    UpdateLevels(table);
    const CellStats s = Evaluate(table);
    double moved = 0.0;
    for (int j = 0; j < kPinned; ++j) {
      // Cost of cell j at magnitude a: a^2 + y^2 - 2 a y g + lambda * len.
      const double lj = -std::log2(std::max(s.prob[j], 1e-300)) +
                        std::log2(kDesignCells[j]);
      const double lk = -std::log2(std::max(s.prob[j + 1], 1e-300)) +
                        std::log2(kDesignCells[j + 1]);
      const double yj = table.levels[j], yk = table.levels[j + 1];
      const double gj = PhaseGain(kDesignCells[j]);
      const double gk = PhaseGain(kDesignCells[j + 1]);
      double t = (yk * yk - yj * yj + lambda * (lk - lj)) /
                 (2.0 * (yk * gk - yj * gj));
      const double lo = j == 0 ? kMinWidth : table.thresholds[j - 1] + kMinWidth;
      const double hi = top - kMinWidth * (kPinned - j);
      t = std::clamp(t, lo, hi);
      moved = std::max(moved, std::abs(t - table.thresholds[j]));
      table.thresholds[j] = t;
    }
    if (moved < 1e-13) break;
  }
  UpdateLevels(table);
  return Evaluate(table);
}

}  // namespace

EcupqDesign DesignEcupqTable(double rate_target, double top_threshold,
                             int max_iterations) {
  if (!(top_threshold > 0.0) || !(rate_target > 0.0))
    throw InvalidArgument("ECUPQ design needs positive rate and threshold");
  EcupqTable init;
  for (int j = 0; j < kEcupqCells - 1; ++j)
    init.thresholds[j] = top_threshold * (j + 1) / (kEcupqCells - 1);
  init.thresholds[kEcupqCells - 1] = kInf;
  init.design_rate = rate_target;
  init.version = "ecupq-rayleigh-v1";

  EcupqDesign best;
  auto run = [&](double lambda) {
    EcupqTable t = init;
    const CellStats s = RunLloyd(t, lambda);
    EcupqDesign d;
    d.table = t;
    d.entropy_bits = s.entropy;
    d.mse = s.mse;
    return d;
  };

  int iterations = 0;
  double lo = 0.0;
  EcupqDesign at_lo = run(lo);
  ++iterations;
  if (at_lo.entropy_bits < rate_target) {
    at_lo.iterations = iterations;
    throw EcupqDesignError("target rate exceeds the unconstrained design",
                           at_lo);
  }
  double hi = 0.01;
  EcupqDesign at_hi = run(hi);
  ++iterations;
  while (at_hi.entropy_bits > rate_target && iterations < max_iterations) {
    lo = hi;
    at_lo = at_hi;
    hi *= 2.0;
    at_hi = run(hi);
    ++iterations;
  }
  best = std::abs(at_lo.entropy_bits - rate_target) <
                 std::abs(at_hi.entropy_bits - rate_target)
             ? at_lo
             : at_hi;
  while (iterations < max_iterations &&
         std::abs(best.entropy_bits - rate_target) > 1e-9 && hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    EcupqDesign d = run(mid);
    ++iterations;
    if (d.entropy_bits > rate_target)
      lo = mid;
    else
      hi = mid;
    if (std::abs(d.entropy_bits - rate_target) <
        std::abs(best.entropy_bits - rate_target))
      best = d;
  }
  best.iterations = iterations;
  if (std::abs(best.entropy_bits - rate_target) > 0.05)
    throw EcupqDesignError("ECUPQ design did not reach the target rate", best);
  best.table.Validate();
  return best;
}

}  // namespace uns
