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

#ifndef LFG_AUDIT_POISSON_BOX_HPP
#define LFG_AUDIT_POISSON_BOX_HPP

#include <cstdint>
#include <vector>

#include "lfg_audit/generators.hpp"

namespace lfg_audit {

// Time increment per event: Exponential draws -log(r)/N (a rate-N Poisson
// process), Linear the simpler r/N.
enum class IncrementForm { Exponential, Linear };

// Stream position of the vain draws relative to the box draw. TextOrder
// puts them between the time draw and the box draw; PseudocodeOrder draws
// the box number first. Identical when vain_draws == 0.
enum class DrawOrder { TextOrder, PseudocodeOrder };

// Full parameterization of one ball-in-box run.
struct SimConfig {
  std::uint32_t boxes = 20;        // N
  double period = 0.25;            // T, simulation pauses at multiples
  std::uint32_t vain_draws = 0;    // n, draws discarded per placement
  std::uint64_t trials = 100000000;  // loop iterations (placements + pauses)
  IncrementForm increment = IncrementForm::Exponential;
  DrawOrder draw_order = DrawOrder::TextOrder;
  GeneratorKind generator = GlibcRandom{};
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const SimConfig& config);

// Per-box placement counts plus run bookkeeping.
// Invariants: sum(counts) == placements, placements + pauses == trials.
struct OccupancyHistogram {
  std::vector<std::uint64_t> counts;  // counts[k-1] = balls in box k
  std::uint64_t placements = 0;
  std::uint64_t pauses = 0;          // period crossings
  double final_time = 0.0;
  std::uint64_t draws_consumed = 0;  // every raw draw, redraws included
};

// Exponential: -log(r)/N. Linear: r/N. Throws std::domain_error for r == 0
// under Exponential (infinite increment); callers redraw instead.
double delta_t(double r, std::uint32_t boxes, IncrementForm form);

// ceil(r*N) clamped to [1, N]; r == 0 lands in box 1, r == 1 in box N.
std::uint32_t choose_box(double r, std::uint32_t boxes);

// Runs the process for exactly config.trials loop iterations. Each
// iteration draws a time increment; if the accumulated time would cross
// the next multiple of the period, the clock snaps to that multiple and no
// ball is placed, otherwise one ball is placed in a freshly drawn box
// (with the configured vain draws around the box draw).
OccupancyHistogram run_simulation(const SimConfig& config);

}  // namespace lfg_audit

#endif  // LFG_AUDIT_POISSON_BOX_HPP
