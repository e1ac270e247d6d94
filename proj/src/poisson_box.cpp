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

#include "lfg_audit/poisson_box.hpp"

#include <cmath>
#include <stdexcept>

namespace lfg_audit {

void validate_config(const SimConfig& config) {
  if (config.boxes < 1) {
    throw std::invalid_argument("boxes: must be at least 1");
  }
  if (!(config.period > 0.0) || !std::isfinite(config.period)) {
    throw std::invalid_argument("period: must be positive and finite");
  }
  if (config.trials < 1) {
    throw std::invalid_argument("trials: must be at least 1");
  }
  validate_kind(config.generator);
}

double delta_t(double r, std::uint32_t boxes, IncrementForm form) {
  if (form == IncrementForm::Linear) {
    return r / static_cast<double>(boxes);
  }
  if (r == 0.0) {
    throw std::domain_error("delta_t: r = 0 gives an infinite exponential "
                            "increment; redraw instead");
  }
  return -std::log(r) / static_cast<double>(boxes);
}

std::uint32_t choose_box(double r, std::uint32_t boxes) {
  const double k = std::ceil(r * static_cast<double>(boxes));
  if (k < 1.0) return 1;
  if (k > static_cast<double>(boxes)) return boxes;
  return static_cast<std::uint32_t>(k);
}

OccupancyHistogram run_simulation(const SimConfig& config) {
  validate_config(config);
  Generator gen = Generator::from_kind(config.generator, config.seed);

  OccupancyHistogram h;
  h.counts.assign(config.boxes, 0);

  const bool exponential = config.increment == IncrementForm::Exponential;
  double total_time = 0.0;
  std::uint64_t crossings = 0;

  for (std::uint64_t it = 0; it < config.trials; ++it) {
    double r = gen.next_unit();
    if (exponential) {
      while (r == 0.0) r = gen.next_unit();  // redraw, not counted as a trial
    }
    const double dt = delta_t(r, config.boxes, config.increment);
    // Crossings snap the clock to the multiple being crossed, so rounding
    // error cannot accumulate across periods.
    const double boundary =
        static_cast<double>(crossings + 1) * config.period;
    if (total_time + dt < boundary) {
      total_time += dt;
      double box_draw;
      if (config.draw_order == DrawOrder::TextOrder) {
        gen.discard(config.vain_draws);
        box_draw = gen.next_unit();
      } else {
        box_draw = gen.next_unit();
        gen.discard(config.vain_draws);
      }
      ++h.counts[choose_box(box_draw, config.boxes) - 1];
      ++h.placements;
    } else {
      total_time = boundary;
      ++crossings;
      ++h.pauses;
    }
  }

  h.final_time = total_time;
  h.draws_consumed = gen.emitted_count();
  return h;
}

}  // namespace lfg_audit
