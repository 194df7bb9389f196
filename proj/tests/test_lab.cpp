#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kp5/errors.hpp"
#include "kp5/lab/config.hpp"
#include "kp5/lab/experiments.hpp"

using namespace kp5;
using nlohmann::json;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(KP5_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kp5_test_lab_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config: defaults, pi lengths, rejection") {
  const lab::RunConfig d = lab::parse_run_config(json::object());
  CHECK(d.grid.nx == 128);
  CHECK(d.params.dt == 1e-3);

  const lab::RunConfig c = lab::parse_run_config(json::parse(R"({"grid": {"Lx": "8pi", "nx": 64}, "delta": 1})"));
  CHECK(c.grid.Lx == doctest::Approx(8 * pi).epsilon(1e-15));
  CHECK(c.grid.nx == 64);
  CHECK(c.params.delta.value() == 1);

  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"grd": {}})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"grid": {"nx": 100}})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"dt": -1})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"delta": 0})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"scaling": {"lambda": 3}})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"uniqueness": {"record_dt": 0.003}})")), ConfigError);
  CHECK_THROWS_AS(lab::parse_run_config(json::parse(R"({"init": {"kind": "modes"}})")), ConfigError);
}

TEST_CASE("config: canonical form round-trips with the same hash") {
  const lab::RunConfig c = lab::load_run_config(fs::path(KP5_CONFIGS) / "reference.json");
  const json j = lab::to_json(c);
  const json k = lab::to_json(lab::parse_run_config(j));
  CHECK(j == k);
  CHECK(lab::config_hash(j) == lab::config_hash(k));
  json other = j;
  other["seed"] = 43;
  CHECK(lab::config_hash(other) != lab::config_hash(j));
}

TEST_CASE("scaling bookkeeping") {
  const auto b = lab::scaling_bookkeeping({0.0}, 0.25, 1.0);
  CHECK(b.lambda == 0.5);
  CHECK(b.T_eps == 32.0);
  // m = 3: lambda = sqrt(1/4) / sqrt(4) = 1/4, T_eps = 4^5
  const auto m = lab::scaling_bookkeeping({1.0, 3.0}, 0.25, 1.0);
  CHECK(m.lambda == 0.25);
  CHECK(m.T_eps == 1024.0);
  CHECK_THROWS_AS(lab::scaling_bookkeeping({0.0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(lab::scaling_bookkeeping({0.0}, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(lab::scaling_bookkeeping({-1.0}, 0.5, 1.0), DomainError);
}

TEST_CASE("time-split centres on a known amplitude") {
  // u(t) = (2 - t) cos 2x: ||P_1 u||^2 = (2 - t)^2 2 pi^2, minimum at the right end
  const Grid2D g(2 * pi, 2 * pi, 32, 8);
  const Field2D f = Field2D::from_function(g, [](double x, double) { return std::cos(2 * x); });
  TrajectoryRecord r;
  r.params.dt = 0.01;
  r.params.T = 1.0;
  for (int k = 0; k <= 100; ++k) {
    r.times.push_back(0.01 * k);
    r.fields.push_back((2.0 - 0.01 * k) * f);
  }
  const lab::CenterReport rep = lab::time_split_centers(r, 1.0, 4);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.all_hold());
  for (const auto& row : rep.rows) {
    CHECK(row.center == doctest::Approx(row.hi).epsilon(1e-12));
    CHECK(row.at_center == doctest::Approx((2 - row.hi) * (2 - row.hi) * 2 * pi * pi).epsilon(1e-10));
    const double a = 2 - row.hi, b = 2 - row.lo;
    const double exact = (b * b * b - a * a * a) / (3 * (row.hi - row.lo)) * 2 * pi * pi;
    CHECK(row.mean == doctest::Approx(exact).epsilon(1e-4));
  }
  CHECK_THROWS_AS(lab::time_split_centers(r, 1.0, 64), ContractError);
}

TEST_CASE("cli: exit codes and no artifacts on config errors") {
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"grid": {"nx": 100}})";
  const fs::path out = scratch("bad_out");
  CHECK(cli("simulate --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK(!fs::exists(out));
  CHECK(cli("verify nonsense --out " + out.string()) == 2);
  CHECK(!fs::exists(out));

  const fs::path ok = scratch("res");
  CHECK(cli("verify resonance --samples 20000 --seed 5 --out " + ok.string()) == 0);
  const json m = json::parse(slurp(ok / "manifest.json"));
  CHECK(m["exit_code"] == 0);
  CHECK(m["seed"] == 5);
  CHECK(m["artifacts"].size() == 1);
  CHECK(json::parse(slurp(ok / "resonance.json"))["failures"] == 0);

  const fs::path inv = scratch("probe");
  CHECK(cli("verify strichartz --samples 1 --config " + std::string(KP5_CONFIGS) + "/bad_probe.json --out " +
            inv.string()) == 1);
  const json s = json::parse(slurp(inv / "strichartz.json"));
  CHECK(s.contains("probe_invalid"));
  CHECK(json::parse(slurp(inv / "manifest.json"))["exit_code"] == 1);
}

TEST_CASE("cli: artifacts are byte-identical across runs") {
  for (const std::string& args : {std::string("verify resonance --samples 20000"), "scaling-test --config " +
                                                                         std::string(KP5_CONFIGS) + "/reference.json"}) {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(cli(args + " --out " + a.string()) == 0);
    REQUIRE(cli(args + " --out " + b.string()) == 0);
    for (const auto& e : fs::directory_iterator(a)) CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
}
