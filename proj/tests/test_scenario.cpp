#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "apchemo/csv.hpp"
#include "apchemo/scenario.hpp"
#include "helpers.hpp"

using namespace apchemo;
constexpr double pi = std::numbers::pi;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_kinetic() {
  ExperimentConfig c;
  c.model = ModelKind::nonlocal1d;
  c.mass = pi;
  c.eps = 0.1;
  c.n_x = 100;
  c.n_half = 8;
  c.t_max = 0.01;
  c.record_every = 5;
  c.profile_times = {0.0, 0.005, 0.01};
  return c;
}

}  // namespace

TEST_CASE("runs are deterministic to the byte") {
  const auto dir = testing::scratch_dir("determinism");
  ExperimentConfig c = small_kinetic();
  c.output_dir = dir / "a";
  run_scenario(c);
  c.output_dir = dir / "b";
  run_scenario(c);
  for (const char* f : {"timeseries.csv", "profile_0.csv", "profile_0.005.csv", "profile_0.01.csv"}) {
    CAPTURE(f);
    REQUIRE(std::filesystem::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  CHECK(parse_config(slurp(dir / "a" / "config.txt")).n_x == 100);
}

TEST_CASE("timeseries lands on the requested times and conserves mass") {
  const auto dir = testing::scratch_dir("timeseries");
  for (ModelKind m : {ModelKind::nonlocal1d, ModelKind::local1d, ModelKind::ks1d, ModelKind::local2d_radial,
                      ModelKind::ks2d_radial}) {
    CAPTURE(to_string(m));
    ExperimentConfig c = small_kinetic();
    c.model = m;
    c.n_r = 40;
    c.n_omega = 4;
    c.n_theta = 4;
    c.r_max = 2.0;
    c.mass = is_radial(m) ? 4.0 : pi;
    c.eps = is_radial(m) ? 1.0 : 0.1;
    c.output_dir = dir / std::string(to_string(m));
    const auto r = run_scenario(c);
    CHECK(r.exit_code() == 0);
    CHECK(r.final_record().t == c.t_max);
    const auto table = read_numeric_csv(c.output_dir / "timeseries.csv");
    CHECK(table.header == std::vector<std::string>{"t", "max_rho", "min_rho", "mass", "linf_grad_s", "n_x", "dt"});
    CHECK(table.rows.size() == r.timeseries.size());
    for (std::size_t i = 1; i < r.timeseries.size(); ++i) {
      CHECK(std::abs(r.timeseries[i].mass - r.timeseries[i - 1].mass) <= 1e-9 * c.mass);
    }
    const auto profile = read_numeric_csv(c.output_dir / "profile_0.005.csv");
    CHECK(profile.header.size() == 4);
  }
}

TEST_CASE("zero mass is a configuration error") {
  ExperimentConfig c = small_kinetic();
  c.mass = 0.0;
  CHECK_THROWS_AS(run_scenario(c), ConfigError);
}

TEST_CASE("unstable fixed step aborts with exit code 3") {
  ExperimentConfig c;
  c.model = ModelKind::ks1d;
  c.mass = pi;
  c.n_x = 200;
  c.dt_policy = DtPolicy::fixed;
  c.dt_fixed = 0.01;
  c.t_max = 5.0;
  const auto r = run_scenario(c);
  CHECK(r.status == RunStatus::numerical_abort);
  CHECK(r.exit_code() == 3);
  CHECK(r.message.find("non-finite") != std::string::npos);
}

TEST_CASE("exhausting the refinement levels gives exit code 4") {
  const auto dir = testing::scratch_dir("cap");
  ExperimentConfig c = named_scenario("local-blowup-adaptive");
  c.n_x = 100;
  c.max_levels = 1;
  c.output_dir = dir;
  const auto r = run_scenario(c);
  CHECK(r.status == RunStatus::refinement_cap);
  CHECK(r.exit_code() == 4);
  CHECK(r.refinements.size() == 1);
  const auto events = read_numeric_csv(dir / "refinements.csv");
  REQUIRE(events.rows.size() == 1);
  CHECK(events.rows[0][2] == 100.0);
  CHECK(events.rows[0][3] == 200.0);
}

TEST_CASE("stop at the blow-up threshold") {
  ExperimentConfig c = named_scenario("ks-blowup");
  c.n_x = 200;
  c.stop_at_blowup = true;
  const auto r = run_scenario(c);
  CHECK(r.status == RunStatus::blowup_threshold);
  CHECK(r.exit_code() == 0);
  REQUIRE(r.threshold_crossing.has_value());
  CHECK(*r.threshold_crossing < c.t_max);
}

TEST_CASE("catalog entries validate") {
  CHECK_FALSE(scenario_catalog().empty());
  for (const auto& s : scenario_catalog()) {
    CAPTURE(s.name);
    CHECK_NOTHROW(validate(s.config));
    CHECK(s.config.name == s.name);
  }
  CHECK_THROWS_AS(named_scenario("no-such-run"), ConfigError);
}

TEST_CASE("refinement levels double the resolution") {
  ExperimentConfig c = small_kinetic();
  c.output_dir = "out";
  const auto levels = refinement_levels(c, 3);
  CHECK(levels[2].n_x == 400);
  CHECK(levels[1].output_dir == std::filesystem::path("out") / "level_1");
  c.model = ModelKind::local2d_radial;
  CHECK(refinement_levels(c, 2)[1].n_r == 2 * c.n_r);
}

TEST_CASE("file tags are short") {
  CHECK(file_tag(0.1) == "0.1");
  CHECK(file_tag(0.0025) == "0.0025");
  CHECK(file_tag(-0.5) == "-0.5");
}
