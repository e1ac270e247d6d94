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

#ifndef LFG_AUDIT_SWEEP_HPP
#define LFG_AUDIT_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lfg_audit/analysis.hpp"
#include "lfg_audit/poisson_box.hpp"

namespace lfg_audit {

// Fixed reuses the base seed everywhere; PerPointOffset adds the flat grid
// index so every run owns a distinct stream.
enum class SeedPolicy { Fixed, PerPointOffset };

// One-dimensional grid over a SimConfig: vary vain draws, the period, or
// the generator while everything else stays at the base values.
struct SweepSpec {
  SimConfig base;
  std::variant<std::vector<std::uint32_t>,   // vain-draw grid
               std::vector<double>,          // period grid
               std::vector<GeneratorKind>>   // generator grid
      vary;
  std::uint32_t repetitions = 1;
  SeedPolicy seed_policy = SeedPolicy::Fixed;
  std::filesystem::path output_dir;  // consumed by the CLI layer
};

struct SweepResult {
  SimConfig config;
  OccupancyHistogram histogram;
  ErrorReport report;
};

// A failed grid point, with the offending configuration attached.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::string message, SimConfig config, std::size_t index)
      : std::runtime_error(std::move(message)),
        config(std::move(config)),
        index(index) {}

  SimConfig config;
  std::size_t index;  // flat grid index
};

// Resolved configs in grid order (grid point major, repetition minor).
std::vector<SimConfig> resolve_grid(const SweepSpec& spec);

// Runs every grid point, fanning out across at most max_threads workers
// (0 = hardware concurrency). Results come back in grid order regardless
// of scheduling; each run owns an independent generator stream.
std::vector<SweepResult> run_sweep(const SweepSpec& spec,
                                   unsigned max_threads = 0);

}  // namespace lfg_audit

#endif  // LFG_AUDIT_SWEEP_HPP
