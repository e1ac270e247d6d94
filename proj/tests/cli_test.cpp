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
// Drives the installed binary end to end through a shell, checking exit
// codes and emitted files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code;
  std::string stdout_text;
};

CommandResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out = fs::temp_directory_path() / "lfg_audit_cli_out.txt";
  const std::string command = env + std::string(LFG_AUDIT_CLI_PATH) + " " +
                              args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  result.stdout_text = buf.str();
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("vectors prints the known glibc stream") {
  const auto r = run_cli("vectors --gen glibc --seed 1 --count 3");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text ==
        "# kind=glibc seed=1 count=3\n1804289383\n846930886\n1681692777\n");
}

TEST_CASE("vectors with count 0 emits only the header") {
  const auto r = run_cli("vectors --gen control --seed 5 --count 0");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "# kind=control seed=5 count=0\n");
}

TEST_CASE("vectors reproduces the minstd LCG") {
  const auto r = run_cli(
      "vectors --gen lcg --a 16807 --b 0 --m 2147483647 --seed 1 --count 1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "# kind=lcg seed=1 count=1\n16807\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("run --boxes 0 --trials 1000").exit_code == 2);
  CHECK(run_cli("run --gen nosuch --trials 1000").exit_code == 2);
  CHECK(run_cli("run --trials 1.5").exit_code == 2);
  CHECK(run_cli("run --trials nonsense").exit_code == 2);
  CHECK(run_cli("fig fig9").exit_code == 2);
  CHECK(run_cli("nosuchcommand").exit_code == 2);
  CHECK(run_cli("vectors --gen glibc --seed 4294967295 --count 1").exit_code ==
        2);
}

TEST_CASE("run writes histogram, sidecar and report") {
  const fs::path dir = fresh_dir("lfg_audit_cli_run");
  const auto r = run_cli(
      "run --gen control --seed 3 --boxes 10 --period 0.25 --vain 0 "
      "--trials 1e5 --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("gen=control") != std::string::npos);
  CHECK(fs::exists(dir / "histogram.csv"));
  CHECK(fs::exists(dir / "histogram.json"));
  CHECK(fs::exists(dir / "report.json"));
  const std::string csv = read_file(dir / "histogram.csv");
  CHECK(csv.rfind("box,count\n", 0) == 0);
}

TEST_CASE("identical flags produce byte-identical outputs") {
  const fs::path dir_a = fresh_dir("lfg_audit_cli_rep_a");
  const fs::path dir_b = fresh_dir("lfg_audit_cli_rep_b");
  const std::string flags =
      "run --gen glibc --seed 7 --boxes 20 --period 0.25 --vain 1 "
      "--trials 200000 --out ";
  CHECK(run_cli(flags + dir_a.string()).exit_code == 0);
  CHECK(run_cli(flags + dir_b.string()).exit_code == 0);
  CHECK(read_file(dir_a / "histogram.csv") ==
        read_file(dir_b / "histogram.csv"));
  CHECK(read_file(dir_a / "histogram.json") ==
        read_file(dir_b / "histogram.json"));
  CHECK(read_file(dir_a / "report.json") == read_file(dir_b / "report.json"));
}

TEST_CASE("fig2 emits panel CSVs, master data, script and sidecar") {
  const fs::path dir = fresh_dir("lfg_audit_cli_fig2");
  const auto r = run_cli("fig fig2 --trials 50000 --out " + dir.string());
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"fig2_n0.csv", "fig2_n1.csv", "fig2_n2.csv", "fig2_n3.csv",
        "fig2.dat", "fig2.gp", "fig2.json"}) {
    CHECK_MESSAGE(fs::exists(dir / name), name);
  }
  const std::string sidecar = read_file(dir / "fig2.json");
  CHECK(sidecar.find("\"figure\": \"fig2\"") != std::string::npos);
  CHECK(sidecar.find("\"vain_draws\": 3") != std::string::npos);

  // The worker-pool cap must not change any output byte.
  const fs::path serial = fresh_dir("lfg_audit_cli_fig2_serial");
  const auto r1 = run_cli("fig fig2 --trials 50000 --out " + serial.string(),
                          "LFG_AUDIT_THREADS=1 ");
  CHECK(r1.exit_code == 0);
  CHECK(read_file(dir / "fig2.dat") == read_file(serial / "fig2.dat"));
  CHECK(read_file(dir / "fig2.json") == read_file(serial / "fig2.json"));
}

TEST_CASE("fig3 emits one panel per period") {
  const fs::path dir = fresh_dir("lfg_audit_cli_fig3");
  const auto r = run_cli("fig fig3 --trials 50000 --out " + dir.string());
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"fig3_T0.1.csv", "fig3_T0.3.csv", "fig3_T0.5.csv", "fig3.dat",
        "fig3.gp", "fig3.json"}) {
    CHECK_MESSAGE(fs::exists(dir / name), name);
  }
}

TEST_CASE("alternate order and kernel flags are accepted") {
  const fs::path dir = fresh_dir("lfg_audit_cli_alt");
  const auto r = run_cli(
      "run --gen control --seed 2 --boxes 10 --trials 1e5 --order pseudocode "
      "--kernel full --vain 2 --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  CHECK(run_cli("run --order sideways --trials 1e5").exit_code == 2);
  CHECK(run_cli("run --kernel whole --trials 1e5").exit_code == 2);
}

TEST_CASE("fig4 emits the period scan") {
  const fs::path dir = fresh_dir("lfg_audit_cli_fig4");
  const auto r = run_cli("fig fig4 --trials 20000 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "fig4.csv"));
  CHECK(fs::exists(dir / "fig4.gp"));
  CHECK(fs::exists(dir / "fig4.json"));
  const std::string csv = read_file(dir / "fig4.csv");
  CHECK(csv.rfind("T,c_magnitude,noise_floor,p_value\n", 0) == 0);
  CHECK(csv.find("\n0.25,") != std::string::npos);
  CHECK(csv.find("\n5,") != std::string::npos);
}
