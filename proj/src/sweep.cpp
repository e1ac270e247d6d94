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

#include "lfg_audit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>

namespace lfg_audit {

std::vector<SimConfig> resolve_grid(const SweepSpec& spec) {
  if (spec.repetitions < 1) {
    throw std::invalid_argument("sweep: repetitions must be at least 1");
  }
  std::vector<SimConfig> grid;
  const auto add_point = [&](const SimConfig& point) {
    for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
      SimConfig config = point;
      if (spec.seed_policy == SeedPolicy::PerPointOffset) {
        config.seed = spec.base.seed + grid.size();
      }
      grid.push_back(config);
    }
  };

  if (const auto* ns = std::get_if<std::vector<std::uint32_t>>(&spec.vary)) {
    for (const auto n : *ns) {
      SimConfig point = spec.base;
      point.vain_draws = n;
      add_point(point);
    }
  } else if (const auto* ts = std::get_if<std::vector<double>>(&spec.vary)) {
    for (const auto t : *ts) {
      SimConfig point = spec.base;
      point.period = t;
      add_point(point);
    }
  } else {
    const auto& kinds = std::get<std::vector<GeneratorKind>>(spec.vary);
    for (const auto& kind : kinds) {
      SimConfig point = spec.base;
      point.generator = kind;
      add_point(point);
    }
  }

  if (grid.empty()) {
    throw std::invalid_argument("sweep: empty grid");
  }
  return grid;
}

std::vector<SweepResult> run_sweep(const SweepSpec& spec,
                                   unsigned max_threads) {
  const std::vector<SimConfig> grid = resolve_grid(spec);

  unsigned workers = max_threads != 0 ? max_threads
                                      : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, grid.size()));

  std::vector<std::optional<SweepResult>> slots(grid.size());
  std::vector<std::optional<SweepError>> failures(grid.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        OccupancyHistogram h = run_simulation(grid[i]);
        ErrorReport report = analyze(h);
        slots[i] = SweepResult{grid[i], std::move(h), std::move(report)};
      } catch (const std::exception& e) {
        failures[i] = SweepError(
            "sweep: grid point " + std::to_string(i) + " failed: " + e.what(),
            grid[i], i);
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& failure : failures) {
    if (failure) throw *std::move(failure);
  }
  std::vector<SweepResult> results;
  results.reserve(slots.size());
  for (auto& slot : slots) results.push_back(*std::move(slot));
  return results;
}

}  // namespace lfg_audit
