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

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

using namespace lfg_audit;

namespace {

OccupancyHistogram histogram_from(std::vector<std::uint64_t> counts) {
  OccupancyHistogram h;
  h.counts = std::move(counts);
  for (const auto c : h.counts) h.placements += c;
  return h;
}

}  // namespace

TEST_CASE("normalize divides by placements") {
  CHECK(normalize(histogram_from({50, 50})) ==
        std::vector<double>{0.5, 0.5});
  CHECK(normalize(histogram_from({100, 0})) ==
        std::vector<double>{1.0, 0.0});
  CHECK(normalize(histogram_from({1, 2, 3, 4})) ==
        std::vector<double>{0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(normalize(histogram_from({0, 0})), std::invalid_argument);
}

TEST_CASE("normalized distributions sum to one") {
  std::mt19937 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::uint64_t> counts(2 + rng() % 40);
    for (auto& c : counts) c = rng() % 100000;
    counts[0] += 1;  // nonzero placements
    const auto p = normalize(histogram_from(std::move(counts)));
    double sum = 0.0;
    for (const double v : p) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fourier_c of a uniform distribution vanishes") {
  for (const std::size_t n : {1u, 2u, 5u, 20u, 33u}) {
    const std::vector<double> p(n, 1.0 / static_cast<double>(n));
    const auto c = fourier_c(p);
    CHECK(std::abs(c) < 1e-15);
  }
}

TEST_CASE("fourier_c two-box case by hand") {
  // c0 = 0.5; c = exp(i pi/2) * 0.5 + exp(i pi) * (-0.5) = 0.5 + 0.5i.
  const auto c = fourier_c(std::vector<double>{1.0, 0.0});
  CHECK(c.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.imag() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(c) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("fourier_c four-box value frozen from high-precision summation") {
  // Evaluated independently at 40-digit precision before implementation.
  const auto c = fourier_c(std::vector<double>{0.4, 0.3, 0.2, 0.1});
  CHECK(c.real() == doctest::Approx(0.29142135623730950).epsilon(1e-14));
  CHECK(c.imag() == doctest::Approx(0.12071067811865475).epsilon(1e-14));
  CHECK(std::abs(c) == doctest::Approx(0.31543220298989500).epsilon(1e-14));
}

TEST_CASE("fourier_c properties") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> p(20);
  for (auto& v : p) v = dist(rng);

  SUBCASE("adding a constant leaves c unchanged") {
    const auto base = fourier_c(p);
    std::vector<double> shifted = p;
    for (auto& v : shifted) v += 0.37;
    const auto moved = fourier_c(shifted);
    CHECK(moved.real() == doctest::Approx(base.real()).epsilon(1e-10));
    CHECK(moved.imag() == doctest::Approx(base.imag()).epsilon(1e-10));
  }

  SUBCASE("|c| is invariant under kernel conjugation, components are not") {
    const auto c = fourier_c(p);
    // Conjugated kernel == conjugate of c because p is real.
    const auto conjugated = std::conj(c);
    CHECK(std::abs(conjugated) == doctest::Approx(std::abs(c)));
    CHECK(conjugated.imag() == doctest::Approx(-c.imag()));
  }

  SUBCASE("full-wave kernel is a different metric") {
    const auto half = fourier_c(p, FourierKernel::HalfWave);
    const auto full = fourier_c(p, FourierKernel::FullWave);
    CHECK(std::abs(half - full) > 1e-6);
  }
}

TEST_CASE("chi_square examples") {
  SUBCASE("exact uniformity") {
    const auto r = chi_square(histogram_from({50, 50}));
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
  }
  SUBCASE("two-box 60/40 by hand") {
    const auto r = chi_square(histogram_from({60, 40}));
    CHECK(r.statistic == doctest::Approx(4.0).epsilon(1e-14));
    // Standard table value for chi2 = 4, one degree of freedom.
    CHECK(r.p_value == doctest::Approx(0.04550026389635841).epsilon(1e-12));
  }
  SUBCASE("too few placements") {
    CHECK_THROWS_WITH_AS(chi_square(histogram_from({3, 3})),
                         "chi_square: needs at least 5 placements per box "
                         "(5*N = 10)",
                         std::invalid_argument);
  }
  SUBCASE("single box is degenerate") {
    const auto r = chi_square(histogram_from({10}));
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
  }
}

TEST_CASE("chi_square is invariant under box permutation, fourier_c is not") {
  const auto h = histogram_from({120, 80, 95, 105, 110, 90});
  const auto shuffled = histogram_from({80, 95, 120, 110, 90, 105});
  CHECK(chi_square(h).statistic ==
        doctest::Approx(chi_square(shuffled).statistic));
  const auto c1 = fourier_c(normalize(h));
  const auto c2 = fourier_c(normalize(shuffled));
  CHECK(std::abs(c1 - c2) > 1e-6);
}

TEST_CASE("scaling counts by an integer scales chi2 and fixes p, c, maxdev") {
  const auto h = histogram_from({120, 80, 95, 105, 110, 90});
  auto scaled_counts = h.counts;
  for (auto& c : scaled_counts) c *= 7;
  const auto scaled = histogram_from(std::move(scaled_counts));

  CHECK(normalize(h) == normalize(scaled));
  const auto c1 = fourier_c(normalize(h));
  const auto c2 = fourier_c(normalize(scaled));
  CHECK(std::abs(c1 - c2) < 1e-15);
  CHECK(chi_square(scaled).statistic ==
        doctest::Approx(7.0 * chi_square(h).statistic).epsilon(1e-12));
}

TEST_CASE("gamma_q matches an independent implementation") {
  // Grid spans both the series and continued-fraction branches.
  for (const double a : {0.5, 1.0, 2.5, 9.5, 15.0, 50.0}) {
    for (const double x : {0.01, 0.5, 1.0, 3.0, 9.4, 10.0, 40.0, 120.0}) {
      const double ours = gamma_q(a, x);
      const double reference = boost::math::gamma_q(a, x);
      CHECK(ours == doctest::Approx(reference).epsilon(1e-10));
    }
  }
  CHECK(gamma_q(9.5, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_q(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_q(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("chi-square p-values hit published table anchors") {
  // Rows of the standard upper-tail table, dof 1 and dof 19.
  CHECK(gamma_q(0.5, 3.841458820694124 / 2.0) ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(gamma_q(9.5, 30.14352720564616 / 2.0) ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(gamma_q(9.5, 36.19086912927005 / 2.0) ==
        doctest::Approx(0.01).epsilon(1e-9));
  CHECK(gamma_q(9.5, 10.117013063859044 / 2.0) ==
        doctest::Approx(0.95).epsilon(1e-9));
  CHECK(gamma_q(9.5, 27.203571029356464 / 2.0) ==
        doctest::Approx(0.10).epsilon(1e-9));
}

TEST_CASE("noise_floor closed form") {
  SUBCASE("frozen value for N = 20, M = 1e6") {
    CHECK(noise_floor(1000000, 20) ==
          doctest::Approx(7.706366867766086e-4).epsilon(1e-12));
  }
  SUBCASE("doubling placements halves the squared floor") {
    const double f1 = noise_floor(1000000, 20);
    const double f2 = noise_floor(2000000, 20);
    CHECK(f2 * f2 == doctest::Approx(f1 * f1 / 2.0).epsilon(1e-12));
  }
  SUBCASE("single box has no fluctuation") {
    CHECK(noise_floor(1000, 1) == 0.0);
  }
  SUBCASE("two boxes reduce to sqrt(1/(2M))") {
    CHECK(noise_floor(1000000, 2) ==
          doctest::Approx(std::sqrt(0.5e-6)).epsilon(1e-12));
  }
}

TEST_CASE("noise_floor matches a Monte Carlo multinomial experiment") {
  // 10^4 uniform multinomials of 10^6 balls over 20 boxes, sampled with the
  // conditional-binomial construction; the RMS of |c| must land within 5%
  // of the closed form.
  constexpr std::uint32_t kBoxes = 20;
  constexpr std::uint64_t kBalls = 1000000;
  constexpr int kSims = 10000;
  std::mt19937_64 rng(424242);
  double sum_sq = 0.0;
  for (int s = 0; s < kSims; ++s) {
    OccupancyHistogram h;
    h.counts.assign(kBoxes, 0);
    std::uint64_t remaining = kBalls;
    double mass = 1.0;
    for (std::uint32_t j = 0; j + 1 < kBoxes; ++j) {
      const double share = (1.0 / kBoxes) / mass;
      std::binomial_distribution<std::uint64_t> bin(remaining, share);
      const std::uint64_t taken = bin(rng);
      h.counts[j] = taken;
      remaining -= taken;
      mass -= 1.0 / kBoxes;
    }
    h.counts[kBoxes - 1] = remaining;
    h.placements = kBalls;
    sum_sq += std::norm(fourier_c(normalize(h)));
  }
  const double rms = std::sqrt(sum_sq / kSims);
  const double predicted = noise_floor(kBalls, kBoxes);
  CHECK(rms == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("classify applies the decision thresholds") {
  ErrorReport report;
  report.noise_floor = 1e-4;
  report.chi2 = 25.0;

  report.p_value = 1e-9;
  report.c_magnitude = 6e-4;
  CHECK(classify(report) == Verdict::Correlated);

  report.p_value = 0.5;
  report.c_magnitude = 1e-4;
  CHECK(classify(report) == Verdict::Clean);

  report.p_value = 1e-9;
  report.c_magnitude = 1e-4;  // significant chi2 but no smooth component
  CHECK(classify(report) == Verdict::Inconclusive);

  report.p_value = 0.9999;  // too uniform to be believable
  report.c_magnitude = 1e-4;
  CHECK(classify(report) == Verdict::Inconclusive);

  report.p_value = 1.0;  // exact fit stays Clean
  report.chi2 = 0.0;
  report.c_magnitude = 0.0;
  CHECK(classify(report) == Verdict::Clean);
}

TEST_CASE("analyze fills a complete report") {
  const auto h = histogram_from(std::vector<std::uint64_t>(20, 5000));
  const ErrorReport report = analyze(h);
  CHECK(report.c0 == doctest::Approx(1.0 / 20).epsilon(1e-14));
  CHECK(report.c_magnitude < 1e-15);
  CHECK(report.max_rel_dev == 0.0);
  CHECK(report.chi2 == 0.0);
  CHECK(report.chi2_dof == 19u);
  CHECK(report.p_value == 1.0);
  CHECK(report.verdict == Verdict::Clean);
}
