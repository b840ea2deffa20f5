#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

#ifndef MATGEO_CLI_PATH
#error "MATGEO_CLI_PATH must point at the command-line binary"
#endif

const std::string kCli = MATGEO_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const fs::path tmp = fs::temp_directory_path() / "matgeo_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + tmp.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = -1;
  if (raw != -1) code = WEXITSTATUS(raw);
  return {code, ss.str()};
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p,
                                          std::string* header) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const char* kSphereConfig = R"cfg(# round sphere in stereographic coordinates
[identities]
conformal_exponent = "0 - ln(1 + x^2 + y^2)"
torsion_potential = "ln(1 + x^2 + y^2)"

[flatness]
conformal_exponent = "0 - ln(1 + x^2 + y^2)"
torsion_potential = "ln(1 + x^2 + y^2)"

[solve]
class = i
sigma = 1
mu = 1
lambda = 4
branch = plus
nx = 21
ny = 21

[geodesic]
phi = "ln(1 + x^2 + y^2)"
x0 = 0.1
y0 = -0.2
vx0 = 0.3
vy0 = 0.4
steps = 500
dtau = 1e-4
)cfg";

}  // namespace

TEST_CASE("identities command passes on defaults and on the sphere") {
  const fs::path cfg = write_config("cli_sphere.ini", kSphereConfig);
  const RunResult defaults = run("identities");
  CHECK(defaults.exit_code == 0);
  const RunResult sphere = run("identities --config " + cfg.string());
  CHECK(sphere.exit_code == 0);
  CHECK(sphere.output.find("K(0, 0) = 4") != std::string::npos);
  CHECK(sphere.output.find("FAIL") == std::string::npos);
  // A zero tolerance cannot be met by every finite residual.
  const RunResult broken = run("identities --config " + cfg.string() +
                               " --tol 0");
  CHECK(broken.exit_code == 1);
  CHECK(broken.output.find("FAIL") != std::string::npos);
}

TEST_CASE("solve command writes the grid and reports") {
  const fs::path cfg = write_config("cli_sphere.ini", kSphereConfig);
  const fs::path csv = fs::temp_directory_path() / "cli_sol.csv";
  const RunResult r = run("solve --config " + cfg.string() + " --out " +
                          csv.string());
  CHECK(r.exit_code == 0);
  std::string header;
  const auto rows = read_csv(csv, &header);
  CHECK(header == "x,y,phi,aux,R,T,K,sqrt_a");
  REQUIRE(rows.size() == 21u * 21u);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 8u);
    CHECK(std::fabs(std::fabs(row[4]) - 4.0) <= 1e-8);  // |R| = 4
    CHECK(std::fabs(row[5]) <= 1e-12);                  // T = 0
    CHECK(std::fabs(row[6] - 4.0) <= 1e-8);             // K = 4
  }
}

TEST_CASE("solve command: family (ii) has R = -h pointwise") {
  const fs::path cfg = write_config("cli_class2.ini", R"cfg(
[solve]
class = ii
sigma = 1
mu = 1
lambda = 0.5
A = 0
h0 = 1
xmin = -1.5
xmax = 1.5
ymin = -1.5
ymax = 1.5
nx = 11
ny = 11
xi_min = -4
xi_max = 4
)cfg");
  const fs::path csv = fs::temp_directory_path() / "cli_sol2.csv";
  const RunResult r = run("solve --config " + cfg.string() + " --out " +
                          csv.string());
  CHECK(r.exit_code == 0);
  std::string header;
  const auto rows = read_csv(csv, &header);
  CHECK(header == "x,y,phi,aux,R,T,K,sqrt_a");
  for (const auto& row : rows)
    CHECK(std::fabs(row[4] + row[3]) <= 1e-6);  // R = -aux = -h
}

TEST_CASE("malformed config exits with the usage code and writes nothing") {
  const fs::path cfg = write_config("cli_broken.ini", R"cfg(
[solve]
class = nonsense
)cfg");
  const fs::path csv = fs::temp_directory_path() / "cli_none.csv";
  std::error_code ec;
  fs::remove(csv, ec);
  const RunResult r = run("solve --config " + cfg.string() + " --out " +
                          csv.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(csv));
  // Unknown flags are also usage errors.
  CHECK(run("solve --frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);
}

TEST_CASE("geodesic command emits the trace with a conserved diagnostic") {
  const fs::path cfg = write_config("cli_sphere.ini", kSphereConfig);
  const fs::path csv = fs::temp_directory_path() / "cli_geo.csv";
  const RunResult r = run("geodesic --config " + cfg.string() + " --out " +
                          csv.string());
  CHECK(r.exit_code == 0);
  std::string header;
  const auto rows = read_csv(csv, &header);
  CHECK(header == "tau,x,y,vx,vy,first_integral");
  REQUIRE(rows.size() == 501u);
  for (const auto& row : rows)
    CHECK(std::fabs(row[5] - rows[0][5]) <= 1e-9);
  // Deterministic output: a second run reproduces the file byte for byte.
  const fs::path csv2 = fs::temp_directory_path() / "cli_geo2.csv";
  run("geodesic --config " + cfg.string() + " --out " + csv2.string());
  std::ifstream f1(csv, std::ios::binary), f2(csv2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
}

TEST_CASE("flatness command validates the gradient pair") {
  const fs::path cfg = write_config("cli_sphere.ini", kSphereConfig);
  const RunResult r = run("flatness --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("lattice command prints the canonical strength") {
  const RunResult r = run("lattice --m 0 --n 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2.46 Å") != std::string::npos);
  const RunResult bad = run("lattice --m 0 --n 0");
  CHECK(bad.exit_code == 2);
}
