// Copyright 2026 lfg-audit contributors
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

#include "lfg_audit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lfg_audit {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Correlated: return "Correlated";
    case Verdict::Clean: return "Clean";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<double> normalize(const OccupancyHistogram& h) {
  if (h.placements == 0) {
    throw std::invalid_argument("normalize: histogram has zero placements");
  }
  std::vector<double> p(h.counts.size());
  const double denom = static_cast<double>(h.placements);
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    p[j] = static_cast<double>(h.counts[j]) / denom;
  }
  return p;
}

std::complex<double> fourier_c(std::span<const double> p,
                               FourierKernel kernel) {
  const std::size_t n = p.size();
  if (n == 0) {
    throw std::invalid_argument("fourier_c: empty distribution");
  }
  double c0 = 0.0;
  for (const double v : p) c0 += v;
  c0 /= static_cast<double>(n);

  const double w =
      (kernel == FourierKernel::HalfWave ? std::numbers::pi
                                         : 2.0 * std::numbers::pi) /
      static_cast<double>(n);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t j = 1; j <= n; ++j) {
    const double angle = w * static_cast<double>(j);
    acc += std::complex<double>(std::cos(angle), std::sin(angle)) *
           (p[j - 1] - c0);
  }
  return acc;
}

Chi2Result chi_square(const OccupancyHistogram& h) {
  const auto n = static_cast<std::uint64_t>(h.counts.size());
  if (n == 0) {
    throw std::invalid_argument("chi_square: empty histogram");
  }
  if (h.placements < 5 * n) {
    throw std::invalid_argument(
        "chi_square: needs at least 5 placements per box (5*N = " +
        std::to_string(5 * n) + ")");
  }
  const double expected =
      static_cast<double>(h.placements) / static_cast<double>(n);
  double stat = 0.0;
  for (const auto count : h.counts) {
    const double d = static_cast<double>(count) - expected;
    stat += d * d / expected;
  }
  // One box has zero degrees of freedom: the single count always equals
  // the expectation exactly.
  const double p_value =
      n == 1 ? 1.0 : gamma_q(static_cast<double>(n - 1) / 2.0, stat / 2.0);
  return Chi2Result{stat, p_value};
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a) || !(x >= 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("gamma_q: requires a > 0 and finite x >= 0");
  }
  if (x == 0.0) return 1.0;

  // log of the x^a e^-x / Gamma(a) prefactor shared by both expansions.
  const double log_prefactor = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    // Lower series: P(a,x) = x^a e^-x / Gamma(a) * sum_k x^k / (a)_{k+1}.
    double term = 1.0 / a;
    double sum = term;
    double ak = a;
    for (int i = 0; i < 1000; ++i) {
      ak += 1.0;
      term *= x / ak;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefactor);
  }

  // Upper continued fraction (modified Lentz).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double frac = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    frac *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return frac * std::exp(log_prefactor);
}

double noise_floor(std::uint64_t placements, std::uint32_t boxes) {
  if (placements == 0) {
    throw std::invalid_argument("noise_floor: requires placements > 0");
  }
  const double n = static_cast<double>(boxes);
  const double kernel_sum_sq = 2.0 / (1.0 - std::cos(std::numbers::pi / n));
  const double mean_sq =
      (1.0 - kernel_sum_sq / (n * n)) / static_cast<double>(placements);
  return mean_sq > 0.0 ? std::sqrt(mean_sq) : 0.0;
}

Verdict classify(const ErrorReport& report) {
  if (report.p_value < 1e-6 &&
      report.c_magnitude > 5.0 * report.noise_floor) {
    return Verdict::Correlated;
  }
  // The 0.999 cap flags suspiciously uniform data; a mathematically exact
  // fit (statistic identically zero) is Clean, not suspicious.
  const bool p_plausible =
      (report.p_value >= 0.001 && report.p_value <= 0.999) ||
      report.chi2 == 0.0;
  if (p_plausible && report.c_magnitude < 3.0 * report.noise_floor) {
    return Verdict::Clean;
  }
  return Verdict::Inconclusive;
}

ErrorReport analyze(const OccupancyHistogram& h, FourierKernel kernel) {
  ErrorReport report;
  report.p = normalize(h);
  const auto n = static_cast<std::uint32_t>(report.p.size());

  double c0 = 0.0;
  for (const double v : report.p) c0 += v;
  report.c0 = c0 / static_cast<double>(n);

  report.c = fourier_c(report.p, kernel);
  report.c_magnitude = std::abs(report.c);

  double max_dev = 0.0;
  for (const double v : report.p) {
    max_dev = std::max(max_dev, std::abs(static_cast<double>(n) * v - 1.0));
  }
  report.max_rel_dev = max_dev;

  const Chi2Result chi2 = chi_square(h);
  report.chi2 = chi2.statistic;
  report.chi2_dof = n - 1;
  report.p_value = chi2.p_value;

  report.noise_floor = noise_floor(h.placements, n);
  report.verdict = classify(report);
  return report;
}

}  // namespace lfg_audit
