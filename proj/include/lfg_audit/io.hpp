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

#ifndef LFG_AUDIT_IO_HPP
#define LFG_AUDIT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lfg_audit/analysis.hpp"
#include "lfg_audit/generators.hpp"
#include "lfg_audit/poisson_box.hpp"

#include <nlohmann/json_fwd.hpp>

namespace lfg_audit {

// Short tag used in file headers and JSON ("glibc", "lcg", "lfg",
// "control").
std::string kind_name(const GeneratorKind& kind);

nlohmann::json kind_to_json(const GeneratorKind& kind);
nlohmann::json config_to_json(const SimConfig& config);
nlohmann::json histogram_to_json(const OccupancyHistogram& h);
nlohmann::json report_to_json(const ErrorReport& report);

// CSV with header `box,count`, one row per box.
void write_histogram_csv(std::ostream& out, const OccupancyHistogram& h);

// JSON sidecar of a histogram dump: config, bookkeeping, toolkit version.
void write_run_sidecar_json(std::ostream& out, const SimConfig& config,
                            const OccupancyHistogram& h);

void write_report_json(std::ostream& out, const ErrorReport& report);

// CSV with header `T,c_magnitude,noise_floor,p_value`.
struct PeriodScanRow {
  double period;
  double c_magnitude;
  double noise_floor;
  double p_value;
};
void write_period_scan_csv(std::ostream& out,
                           const std::vector<PeriodScanRow>& rows);

// Known-answer vector files: a `# kind=<name> seed=<seed> count=<n>` header
// line followed by one decimal raw output per line. Comparisons are
// bit-exact, so values are persisted as plain integers.
struct VectorFile {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> values;
};

void write_vector_file(std::ostream& out, const std::string& kind,
                       std::uint64_t seed,
                       const std::vector<std::uint64_t>& values);

// Throws std::runtime_error on malformed headers or bodies.
VectorFile read_vector_file(std::istream& in);

}  // namespace lfg_audit

#endif  // LFG_AUDIT_IO_HPP
