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

#include "lfg_audit/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lfg_audit/version.hpp"

namespace lfg_audit {

namespace {

// %.17g round-trips doubles exactly, so identical runs serialize to
// identical bytes.
std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string op_name(LfgOp op) {
  switch (op) {
    case LfgOp::Add: return "add";
    case LfgOp::Sub: return "sub";
    case LfgOp::Mul: return "mul";
    case LfgOp::Xor: return "xor";
  }
  return "add";
}

}  // namespace

std::string kind_name(const GeneratorKind& kind) {
  if (std::holds_alternative<GlibcRandom>(kind)) return "glibc";
  if (std::holds_alternative<Lcg>(kind)) return "lcg";
  if (std::holds_alternative<Lfg>(kind)) return "lfg";
  return "control";
}

nlohmann::json kind_to_json(const GeneratorKind& kind) {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  if (const auto* lcg = std::get_if<Lcg>(&kind)) {
    j["multiplier"] = lcg->multiplier;
    j["addend"] = lcg->addend;
    j["modulus"] = lcg->modulus;
  } else if (const auto* lfg = std::get_if<Lfg>(&kind)) {
    j["long_lag"] = lfg->long_lag;
    j["short_lag"] = lfg->short_lag;
    j["op"] = op_name(lfg->op);
    j["word_bits"] = lfg->word_bits;
  }
  return j;
}

nlohmann::json config_to_json(const SimConfig& config) {
  return nlohmann::json{
      {"boxes", config.boxes},
      {"period", config.period},
      {"vain_draws", config.vain_draws},
      {"trials", config.trials},
      {"increment",
       config.increment == IncrementForm::Exponential ? "exponential"
                                                       : "linear"},
      {"draw_order",
       config.draw_order == DrawOrder::TextOrder ? "text" : "pseudocode"},
      {"generator", kind_to_json(config.generator)},
      {"seed", config.seed},
  };
}

nlohmann::json histogram_to_json(const OccupancyHistogram& h) {
  return nlohmann::json{
      {"placements", h.placements},
      {"pauses", h.pauses},
      {"final_time", h.final_time},
      {"draws_consumed", h.draws_consumed},
  };
}

nlohmann::json report_to_json(const ErrorReport& report) {
  return nlohmann::json{
      {"p", report.p},
      {"c0", report.c0},
      {"c_re", report.c.real()},
      {"c_im", report.c.imag()},
      {"c_magnitude", report.c_magnitude},
      {"max_rel_dev", report.max_rel_dev},
      {"chi2", report.chi2},
      {"chi2_dof", report.chi2_dof},
      {"p_value", report.p_value},
      {"noise_floor", report.noise_floor},
      {"verdict", verdict_name(report.verdict)},
  };
}

void write_histogram_csv(std::ostream& out, const OccupancyHistogram& h) {
  out << "box,count\n";
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    out << (j + 1) << ',' << h.counts[j] << '\n';
  }
}

void write_run_sidecar_json(std::ostream& out, const SimConfig& config,
                            const OccupancyHistogram& h) {
  nlohmann::json j = histogram_to_json(h);
  j["config"] = config_to_json(config);
  j["version"] = kVersion;
  out << j.dump(2) << '\n';
}

void write_report_json(std::ostream& out, const ErrorReport& report) {
  out << report_to_json(report).dump(2) << '\n';
}

void write_period_scan_csv(std::ostream& out,
                           const std::vector<PeriodScanRow>& rows) {
  out << "T,c_magnitude,noise_floor,p_value\n";
  for (const auto& row : rows) {
    out << format_double(row.period) << ',' << format_double(row.c_magnitude)
        << ',' << format_double(row.noise_floor) << ','
        << format_double(row.p_value) << '\n';
  }
}

void write_vector_file(std::ostream& out, const std::string& kind,
                       std::uint64_t seed,
                       const std::vector<std::uint64_t>& values) {
  out << "# kind=" << kind << " seed=" << seed << " count=" << values.size()
      << '\n';
  for (const auto v : values) out << v << '\n';
}

VectorFile read_vector_file(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("vector file: missing header line");
  }
  VectorFile file;
  std::uint64_t count = 0;
  {
    std::istringstream hs(header);
    std::string hash, field;
    hs >> hash;
    if (hash != "#") {
      throw std::runtime_error("vector file: header must start with '#'");
    }
    bool have_kind = false, have_seed = false, have_count = false;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("vector file: malformed header field '" +
                                 field + "'");
      }
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "kind") {
        file.kind = value;
        have_kind = true;
      } else if (key == "seed") {
        file.seed = std::stoull(value);
        have_seed = true;
      } else if (key == "count") {
        count = std::stoull(value);
        have_count = true;
      }
    }
    if (!have_kind || !have_seed || !have_count) {
      throw std::runtime_error(
          "vector file: header needs kind=, seed= and count=");
    }
  }
  file.values.reserve(count);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    file.values.push_back(std::stoull(line));
  }
  if (file.values.size() != count) {
    throw std::runtime_error("vector file: header promised " +
                             std::to_string(count) + " values, found " +
                             std::to_string(file.values.size()));
  }
  return file;
}

}  // namespace lfg_audit
