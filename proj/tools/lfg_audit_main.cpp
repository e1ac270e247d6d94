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
//
// Command-line front end: single audit runs, figure-reproduction sweeps,
// and known-answer vector dumps.
//
//   lfg-audit run --gen glibc --seed 1 --boxes 20 --period 0.25 --vain 0
//   lfg-audit fig fig2 --trials 1e8 --out fig2_out
//   lfg-audit vectors --gen glibc --seed 1 --count 1000
//
// Exit codes: 0 success, 2 usage error, 3 runtime error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lfg_audit/analysis.hpp"
#include "lfg_audit/generators.hpp"
#include "lfg_audit/io.hpp"
#include "lfg_audit/poisson_box.hpp"
#include "lfg_audit/sweep.hpp"
#include "lfg_audit/version.hpp"

namespace fs = std::filesystem;
using namespace lfg_audit;

namespace {

constexpr std::uint64_t kDefaultTrials = 100000000;   // 1e8
constexpr std::uint64_t kPaperTrials = 1000000000;    // 1e9

// Accepts plain integers and scientific notation ("1e8"), rejecting
// anything that does not resolve to an exact positive integer.
std::uint64_t parse_trials(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--trials: empty value");
  if (text.find_first_not_of("0123456789") == std::string::npos) {
    return std::stoull(text);
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--trials: cannot parse '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value) || value < 1.0 ||
      value > 9.0e15 || value != std::floor(value)) {
    throw std::invalid_argument("--trials: '" + text +
                                "' is not an exact positive integer");
  }
  return static_cast<std::uint64_t>(value);
}

struct GeneratorFlags {
  std::string name = "glibc";
  std::uint64_t lcg_a = 16807, lcg_b = 0, lcg_m = 2147483647;
  std::uint32_t lfg_p = 31, lfg_q = 3, lfg_bits = 32;
  std::string lfg_op = "add";

  void attach(CLI::App* cmd) {
    cmd->add_option("--gen", name, "Generator: glibc, lcg, lfg or control")
        ->default_val(name);
    cmd->add_option("--a", lcg_a, "LCG multiplier")->default_val(lcg_a);
    cmd->add_option("--b", lcg_b, "LCG addend")->default_val(lcg_b);
    cmd->add_option("--m", lcg_m, "LCG modulus")->default_val(lcg_m);
    cmd->add_option("--p", lfg_p, "LFG long lag")->default_val(lfg_p);
    cmd->add_option("--q", lfg_q, "LFG short lag")->default_val(lfg_q);
    cmd->add_option("--op", lfg_op, "LFG operator: add, sub, mul, xor")
        ->default_val(lfg_op);
    cmd->add_option("--bits", lfg_bits, "LFG word size in bits")
        ->default_val(lfg_bits);
  }

  GeneratorKind resolve() const {
    if (name == "glibc") return GlibcRandom{};
    if (name == "control") return Control64{};
    if (name == "lcg") {
      const Lcg kind{lcg_a, lcg_b, lcg_m};
      validate_kind(GeneratorKind{kind});
      return kind;
    }
    if (name == "lfg") {
      LfgOp op;
      if (lfg_op == "add") op = LfgOp::Add;
      else if (lfg_op == "sub") op = LfgOp::Sub;
      else if (lfg_op == "mul") op = LfgOp::Mul;
      else if (lfg_op == "xor") op = LfgOp::Xor;
      else throw std::invalid_argument("--op: unknown operator '" + lfg_op +
                                       "'");
      const Lfg kind{lfg_p, lfg_q, op, lfg_bits};
      validate_kind(GeneratorKind{kind});
      return kind;
    }
    throw std::invalid_argument("--gen: unknown generator '" + name + "'");
  }
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  return out;
}

unsigned worker_cap_from_env() {
  const char* env = std::getenv("LFG_AUDIT_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const long value = std::strtol(env, nullptr, 10);
  return value > 0 ? static_cast<unsigned>(value) : 1;
}

std::string verdict_line(const SimConfig& config, const ErrorReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s gen=%s N=%u T=%g n=%u trials=%llu: max_rel_dev=%.3e "
                "chi2=%.4g p=%.3e |c|=%.3e noise_floor=%.3e",
                verdict_name(r.verdict).c_str(),
                kind_name(config.generator).c_str(), config.boxes,
                config.period, config.vain_draws,
                static_cast<unsigned long long>(config.trials), r.max_rel_dev,
                r.chi2, r.p_value, r.c_magnitude, r.noise_floor);
  return buf;
}

// --- run ------------------------------------------------------------------

struct RunFlags {
  GeneratorFlags gen;
  std::uint64_t seed = 1;
  std::uint32_t boxes = 20;
  double period = 0.25;
  std::uint32_t vain = 0;
  std::string trials = "";
  std::string increment = "exp";
  std::string order = "text";
  std::string kernel = "half";
  std::string out_dir = ".";
  bool paper_scale = false;
};

SimConfig resolve_run_config(const RunFlags& flags) {
  SimConfig config;
  config.generator = flags.gen.resolve();
  config.seed = flags.seed;
  config.boxes = flags.boxes;
  config.period = flags.period;
  config.vain_draws = flags.vain;
  if (!flags.trials.empty()) {
    config.trials = parse_trials(flags.trials);
  } else {
    config.trials = flags.paper_scale ? kPaperTrials : kDefaultTrials;
  }
  if (flags.increment == "exp" || flags.increment == "exponential") {
    config.increment = IncrementForm::Exponential;
  } else if (flags.increment == "linear") {
    config.increment = IncrementForm::Linear;
  } else {
    throw std::invalid_argument("--increment: expected 'exp' or 'linear'");
  }
  if (flags.order == "text") {
    config.draw_order = DrawOrder::TextOrder;
  } else if (flags.order == "pseudocode") {
    config.draw_order = DrawOrder::PseudocodeOrder;
  } else {
    throw std::invalid_argument("--order: expected 'text' or 'pseudocode'");
  }
  validate_config(config);
  return config;
}

int cmd_run(const RunFlags& flags) {
  const SimConfig config = resolve_run_config(flags);
  FourierKernel kernel;
  if (flags.kernel == "half") kernel = FourierKernel::HalfWave;
  else if (flags.kernel == "full") kernel = FourierKernel::FullWave;
  else throw std::invalid_argument("--kernel: expected 'half' or 'full'");

  const OccupancyHistogram h = run_simulation(config);
  const ErrorReport report = analyze(h, kernel);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "histogram.csv");
    write_histogram_csv(out, h);
  }
  {
    auto out = open_output(dir / "histogram.json");
    write_run_sidecar_json(out, config, h);
  }
  {
    auto out = open_output(dir / "report.json");
    write_report_json(out, report);
  }
  std::cout << verdict_line(config, report) << '\n';
  return 0;
}

// --- fig ------------------------------------------------------------------

struct FigFlags {
  std::string which;
  std::string trials = "";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool paper_scale = false;
};

std::string format_period(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

void write_panel_csvs(const fs::path& dir, const std::string& stem,
                      const std::vector<std::string>& labels,
                      const std::vector<SweepResult>& results) {
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto out = open_output(dir / (stem + "_" + labels[i] + ".csv"));
    write_histogram_csv(out, results[i].histogram);
  }
}

void write_master_dat(const fs::path& dir, const std::string& stem,
                      const std::vector<std::string>& labels,
                      const std::vector<SweepResult>& results) {
  auto out = open_output(dir / (stem + ".dat"));
  out << "# box";
  for (const auto& label : labels) out << " NP_" << label;
  out << '\n';
  const std::size_t boxes = results.front().histogram.counts.size();
  for (std::size_t j = 0; j < boxes; ++j) {
    out << (j + 1);
    for (const auto& result : results) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.8f",
                    static_cast<double>(boxes) * result.report.p[j]);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void write_panel_script(const fs::path& dir, const std::string& stem,
                        const std::vector<std::string>& titles) {
  auto out = open_output(dir / (stem + ".gp"));
  out << "set terminal pngcairo size 900,600\n"
      << "set output '" << stem << ".png'\n"
      << "set xlabel 'box'\n"
      << "set ylabel 'N P(j)'\n"
      << "set key outside\n"
      << "plot ";
  for (std::size_t i = 0; i < titles.size(); ++i) {
    if (i != 0) out << ", \\\n     ";
    out << "'" << stem << ".dat' using 1:" << (i + 2)
        << " with linespoints title '" << titles[i] << "'";
  }
  out << '\n';
}

nlohmann::json sweep_sidecar(const std::string& figure,
                             const std::vector<std::string>& labels,
                             const std::vector<SweepResult>& results,
                             const std::string& stem) {
  nlohmann::json panels = nlohmann::json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    nlohmann::json panel = histogram_to_json(results[i].histogram);
    panel["config"] = config_to_json(results[i].config);
    panel["report"] = report_to_json(results[i].report);
    panel["csv"] = stem + "_" + labels[i] + ".csv";
    panels.push_back(std::move(panel));
  }
  return nlohmann::json{
      {"figure", figure}, {"version", kVersion}, {"panels", panels}};
}

int cmd_fig(const FigFlags& flags) {
  if (flags.which != "fig2" && flags.which != "fig3" &&
      flags.which != "fig4") {
    throw std::invalid_argument("fig: unknown figure '" + flags.which +
                                "' (expected fig2, fig3 or fig4)");
  }
  SimConfig base;
  base.generator = GlibcRandom{};
  base.seed = flags.seed;
  base.boxes = 20;
  base.period = 0.25;
  base.vain_draws = 0;
  if (!flags.trials.empty()) {
    base.trials = parse_trials(flags.trials);
  } else {
    base.trials = flags.paper_scale ? kPaperTrials : kDefaultTrials;
  }

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  const unsigned workers = worker_cap_from_env();

  if (flags.which == "fig2") {
    SweepSpec spec{base, std::vector<std::uint32_t>{0, 1, 2, 3}, 1,
                   SeedPolicy::Fixed, dir};
    const auto results = run_sweep(spec, workers);
    std::vector<std::string> labels, titles;
    for (const auto& r : results) {
      labels.push_back("n" + std::to_string(r.config.vain_draws));
      titles.push_back("n=" + std::to_string(r.config.vain_draws));
    }
    write_panel_csvs(dir, "fig2", labels, results);
    write_master_dat(dir, "fig2", labels, results);
    write_panel_script(dir, "fig2", titles);
    auto out = open_output(dir / "fig2.json");
    out << sweep_sidecar("fig2", labels, results, "fig2").dump(2) << '\n';
    for (const auto& r : results) {
      std::cout << verdict_line(r.config, r.report) << '\n';
    }
    return 0;
  }

  if (flags.which == "fig3") {
    SweepSpec spec{base, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}, 1,
                   SeedPolicy::Fixed, dir};
    const auto results = run_sweep(spec, workers);
    std::vector<std::string> labels, titles;
    for (const auto& r : results) {
      labels.push_back("T" + format_period(r.config.period));
      titles.push_back("T=" + format_period(r.config.period));
    }
    write_panel_csvs(dir, "fig3", labels, results);
    write_master_dat(dir, "fig3", labels, results);
    write_panel_script(dir, "fig3", titles);
    auto out = open_output(dir / "fig3.json");
    out << sweep_sidecar("fig3", labels, results, "fig3").dump(2) << '\n';
    for (const auto& r : results) {
      std::cout << verdict_line(r.config, r.report) << '\n';
    }
    return 0;
  }

  // fig4: |c| against the period. The paper fixes only 0.1..0.5; the rest
  // of the grid is a toolkit default chosen to show the decay.
  SweepSpec spec{base,
                 std::vector<double>{0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4,
                                     0.45, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0,
                                     5.0},
                 1, SeedPolicy::Fixed, dir};
  const auto results = run_sweep(spec, workers);
  std::vector<PeriodScanRow> rows;
  std::vector<std::string> labels;
  for (const auto& r : results) {
    labels.push_back("T" + format_period(r.config.period));
    rows.push_back(PeriodScanRow{r.config.period, r.report.c_magnitude,
                                 r.report.noise_floor, r.report.p_value});
  }
  {
    auto out = open_output(dir / "fig4.csv");
    write_period_scan_csv(out, rows);
  }
  {
    auto out = open_output(dir / "fig4.gp");
    out << "set terminal pngcairo size 900,600\n"
        << "set output 'fig4.png'\n"
        << "set xlabel 'T'\n"
        << "set ylabel '|c|'\n"
        << "set logscale y\n"
        << "set datafile separator ','\n"
        << "plot 'fig4.csv' using 1:2 skip 1 with linespoints title '|c|', "
           "\\\n     'fig4.csv' using 1:3 skip 1 with lines title 'noise "
           "floor'\n";
  }
  {
    auto out = open_output(dir / "fig4.json");
    out << sweep_sidecar("fig4", labels, results, "fig4").dump(2) << '\n';
  }
  for (const auto& r : results) {
    std::cout << verdict_line(r.config, r.report) << '\n';
  }
  return 0;
}

// --- vectors ---------------------------------------------------------------

struct VectorsFlags {
  GeneratorFlags gen;
  std::uint64_t seed = 1;
  std::uint64_t count = 1000;
  std::string out_file = "";
};

int cmd_vectors(const VectorsFlags& flags) {
  const GeneratorKind kind = flags.gen.resolve();
  Generator gen = Generator::from_kind(kind, flags.seed);
  std::vector<std::uint64_t> values;
  values.reserve(flags.count);
  for (std::uint64_t i = 0; i < flags.count; ++i) {
    values.push_back(gen.next_raw());
  }
  if (flags.out_file.empty()) {
    write_vector_file(std::cout, kind_name(kind), flags.seed, values);
  } else {
    auto out = open_output(flags.out_file);
    write_vector_file(out, kind_name(kind), flags.seed, values);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRNG audit toolkit: glibc random() reimplementation and the "
               "periodic ball-in-box correlation test"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run one simulation and report");
  run_flags.gen.attach(run);
  run->add_option("--seed", run_flags.seed, "Generator seed")->default_val(1);
  run->add_option("--boxes", run_flags.boxes, "Number of boxes N");
  run->add_option("--period", run_flags.period, "Pause period T");
  run->add_option("--vain", run_flags.vain, "Vain draws per placement");
  run->add_option("--trials", run_flags.trials,
                  "Loop iterations (integer or 1e8 style)");
  run->add_option("--increment", run_flags.increment,
                  "Time increment: exp or linear");
  run->add_option("--order", run_flags.order,
                  "Draw order: text or pseudocode");
  run->add_option("--kernel", run_flags.kernel,
                  "Fourier kernel: half (default) or full");
  run->add_option("--out", run_flags.out_dir, "Output directory");
  run->add_flag("--paper-scale", run_flags.paper_scale,
                "Use 1e9 trials unless --trials is given");

  FigFlags fig_flags;
  CLI::App* fig = app.add_subcommand("fig", "Reproduce a figure's data");
  fig->add_option("which", fig_flags.which, "fig2, fig3 or fig4")
      ->required();
  fig->add_option("--trials", fig_flags.trials,
                  "Loop iterations per panel (integer or 1e8 style)");
  fig->add_option("--seed", fig_flags.seed, "Generator seed")->default_val(1);
  fig->add_option("--out", fig_flags.out_dir, "Output directory");
  fig->add_flag("--paper-scale", fig_flags.paper_scale,
                "Use 1e9 trials unless --trials is given");

  VectorsFlags vec_flags;
  CLI::App* vectors =
      app.add_subcommand("vectors", "Dump raw outputs as a vector file");
  vec_flags.gen.attach(vectors);
  vectors->add_option("--seed", vec_flags.seed, "Generator seed")
      ->default_val(1);
  vectors->add_option("--count", vec_flags.count, "Number of outputs");
  vectors->add_option("--out", vec_flags.out_file,
                      "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (fig->parsed()) return cmd_fig(fig_flags);
    if (vectors->parsed()) return cmd_vectors(vec_flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
