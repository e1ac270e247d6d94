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

#ifndef LFG_AUDIT_ANALYSIS_HPP
#define LFG_AUDIT_ANALYSIS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lfg_audit/poisson_box.hpp"

namespace lfg_audit {

enum class Verdict { Correlated, Clean, Inconclusive };

std::string verdict_name(Verdict v);

// exp(i*pi*j/N) is the half-wave kernel used throughout; the full-wave
// 2*pi variant exists for sensitivity checks only.
enum class FourierKernel { HalfWave, FullWave };

// All error measures of one run.
struct ErrorReport {
  std::vector<double> p;        // P(j) = counts[j-1] / placements
  double c0 = 0.0;              // mean of P
  std::complex<double> c;       // sum_j exp(i*pi*j/N) (P(j) - c0)
  double c_magnitude = 0.0;
  double max_rel_dev = 0.0;     // max_j |N*P(j) - 1|
  double chi2 = 0.0;
  std::uint32_t chi2_dof = 0;   // N - 1
  double p_value = 1.0;
  double noise_floor = 0.0;     // RMS |c| under multinomial noise
  Verdict verdict = Verdict::Inconclusive;
};

// p[j-1] = counts[j-1] / placements. Throws on an empty run.
std::vector<double> normalize(const OccupancyHistogram& h);

// First Fourier coefficient of the distribution, mean component removed:
// sum_{j=1}^{N} exp(i*w*j/N) (p[j-1] - c0) with c0 = mean(p) and w = pi for
// the half-wave kernel. c0 is computed from p rather than assumed 1/N so
// the metric also works on unnormalized input.
std::complex<double> fourier_c(std::span<const double> p,
                               FourierKernel kernel = FourierKernel::HalfWave);

struct Chi2Result {
  double statistic;
  double p_value;
};

// Pearson chi-square of the counts against the uniform expectation, with
// the survival p-value at N - 1 degrees of freedom. Requires placements >=
// 5 * N for the usual validity heuristic.
Chi2Result chi_square(const OccupancyHistogram& h);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// a > 0, x >= 0. Series for x < a + 1, continued fraction otherwise;
// relative accuracy well beyond 6 significant digits over the tested range.
double gamma_q(double a, double x);

// RMS of |c| when `placements` balls fall uniformly at random. With
// counts ~ Multinomial(M, 1/N), Cov(P_i, P_j) = (d_ij/N - 1/N^2)/M, and c
// is linear in P (its mean offset is deterministic because sum(P) = 1), so
//   E|c|^2 = (1/M) * (sum_j |k_j|^2 / N - |sum_j k_j|^2 / N^2)
//          = (1/M) * (1 - S/N^2),   S = |sum_j exp(i*pi*j/N)|^2
// and the geometric sum gives S = 2 / (1 - cos(pi/N)).
double noise_floor(std::uint64_t placements, std::uint32_t boxes);

// Correlated: p_value < 1e-6 and |c| > 5 * noise_floor.
// Clean: p_value in [0.001, 0.999] and |c| < 3 * noise_floor.
// Otherwise Inconclusive. The thresholds are toolkit choices.
Verdict classify(const ErrorReport& report);

// Runs the full pipeline above on one histogram.
ErrorReport analyze(const OccupancyHistogram& h,
                    FourierKernel kernel = FourierKernel::HalfWave);

}  // namespace lfg_audit

#endif  // LFG_AUDIT_ANALYSIS_HPP
