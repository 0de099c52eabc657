// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(WSRES_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path sandbox() {
  const fs::path p = fs::temp_directory_path() / "wsres_cli_test";
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of("0123456789-.") != 0) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("resonances subcommand reproduces the three stable ladders") {
  const fs::path dir = sandbox();
  write_file(dir / "fig.conf",
             "hbar = 1.0\nF = 0.07\npotential.cos = 1.0\nN = 5\njmax = 16\n"
             "resonances.keep = 10\n");
  CHECK(run("resonances --config " + (dir / "fig.conf").string() + " --out " + dir.string()) == 0);
  const auto rows = read_csv(dir / "resonances.csv");
  REQUIRE(rows.size() >= 3);
  // three most stable ladders near the accurate positions
  CHECK(rows[0][4] > 0.99);                     // |lambda| ~ 1
  CHECK(rows[0][2] == doctest::Approx(0.1226).epsilon(0.01));
  CHECK(rows[1][2] == doctest::Approx(0.0846).epsilon(0.02));
  CHECK(rows[2][3] == doctest::Approx(0.083).epsilon(0.05));  // second excited width
}

TEST_CASE("free system: empty stable set, exit 0") {
  const fs::path dir = sandbox();
  write_file(dir / "free.conf", "hbar = 1.0\nF = 0.1\nN = 6\njmax = 8\n");
  CHECK(run("resonances --config " + (dir / "free.conf").string() + " --out " + dir.string()) ==
        0);
  const auto rows = read_csv(dir / "resonances.csv");
  CHECK(rows.empty());
}

TEST_CASE("config failure modes map to exit 1") {
  const fs::path dir = sandbox();
  write_file(dir / "bad.conf", "hbar = 1.0\nF = oops\n");
  CHECK(run("resonances --config " + (dir / "bad.conf").string() + " --out " + dir.string()) == 1);
  write_file(dir / "unk.conf", "hbar = 1.0\nF = 0.07\nmystery = 1\n");
  CHECK(run("resonances --config " + (dir / "unk.conf").string() + " --out " + dir.string()) == 1);
}

TEST_CASE("bloch and wannier emit the documented CSV columns") {
  const fs::path dir = sandbox();
  write_file(dir / "b.conf", "hbar = 1.0\npotential.cos = 1.0\nkappa_points = 32\nbloch.bands = 3\n");
  CHECK(run("bloch --config " + (dir / "b.conf").string() + " --out " + dir.string()) == 0);
  const auto bl = read_csv(dir / "bloch.csv");
  REQUIRE(bl.size() == 32);
  CHECK(bl[0].size() == 4);
  CHECK(run("wannier --config " + (dir / "b.conf").string() + " --out " + dir.string()) == 0);
  const auto wn = read_csv(dir / "wannier.csv");
  CHECK(wn.size() > 100);
}

TEST_CASE("smatrix and two-ladder run from configs") {
  const fs::path dir = sandbox();
  write_file(dir / "s.conf",
             "hbar = 1.0\nF = 0.07\npotential.cos = 1.0\nN = 12\njmax = 32\n"
             "smatrix.e_points = 20\n");
  CHECK(run("smatrix --config " + (dir / "s.conf").string() + " --out " + dir.string()) == 0);
  const auto sm = read_csv(dir / "smatrix.csv");
  REQUIRE(sm.size() == 20);
  for (const auto& row : sm)
    CHECK(row[1] * row[1] + row[2] * row[2] == doctest::Approx(1.0).epsilon(1e-6));

  write_file(dir / "l.conf",
             "ladder.e0 = 0.3\nladder.g0 = 0.001\nladder.e1 = 0.5\nladder.g1 = 0.08\n"
             "ladder.a = 1.0\nladder.b = 0.254\nladder.f_min = 0.04\nladder.f_max = 0.3\n"
             "ladder.points = 50\n");
  CHECK(run("two-ladder --config " + (dir / "l.conf").string() + " --out " + dir.string()) == 0);
  CHECK(read_csv(dir / "two_ladder.csv").size() == 50);
}

TEST_CASE("sweep collates per-point status and reruns reproduce outputs") {
  const fs::path dir = sandbox();
  write_file(dir / "sw.conf",
             "hbar = 1.0\nF = 0.07\npotential.cos = 1.0\nN = 8\njmax = 16\n"
             "resonances.keep = 4\n");
  const std::string args = "resonances --config " + (dir / "sw.conf").string() + " --out " +
                           dir.string() + " --sweep F --from 0.05 --to 0.09 --count-sweep 3";
  CHECK(run(args) == 0);
  const auto idx = read_csv(dir / "sweep_index.csv");
  REQUIRE(idx.size() == 3);
  for (const auto& row : idx) CHECK(row[1] == 0.0);
  // bit-identical rerun
  std::ifstream a(dir / "sweep_1" / "resonances.csv");
  std::stringstream sa;
  sa << a.rdbuf();
  CHECK(run(args) == 0);
  std::ifstream b(dir / "sweep_1" / "resonances.csv");
  std::stringstream sb;
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("rmt subcommand writes histogram plus theory columns") {
  const fs::path dir = sandbox();
  CHECK(run("rmt widths --N 30 --M 2 --count 40 --seed 5 --out " + dir.string()) == 0);
  const auto rows = read_csv(dir / "rmt_widths.csv");
  CHECK(rows.size() > 5);
  CHECK(rows[0].size() == 4);
}
