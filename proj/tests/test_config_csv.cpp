#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "apchemo/config.hpp"
#include "apchemo/csv.hpp"
#include "helpers.hpp"

using namespace apchemo;
constexpr double pi = std::numbers::pi;

TEST_CASE("config text parses with comments and multiples of pi") {
  const auto c = parse_config(R"(
# supercritical run
model = local1d
mass = 4pi      # trailing comment
eps = 0.05
n_x = 800
peaks = 2.2:0.3:80, 2.8:-0.3:80
transport = tvd_minmod
adaptive = yes
profile_times = 0, 0.01, 0.1
)");
  CHECK(c.model == ModelKind::local1d);
  CHECK(c.mass == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(c.eps == 0.05);
  CHECK(c.n_x == 800);
  REQUIRE(c.peaks.size() == 2);
  CHECK(c.peaks[1].weight == 2.8);
  CHECK(c.peaks[1].center == -0.3);
  CHECK(c.transport == TransportScheme::tvd_minmod);
  CHECK(c.adaptive);
  CHECK(c.profile_times == std::vector<double>{0.0, 0.01, 0.1});
}

TEST_CASE("overrides replace single fields") {
  ExperimentConfig c;
  apply_override(c, "mass=pi");
  apply_override(c, " eps = 0.5 ");
  CHECK(c.mass == doctest::Approx(pi));
  CHECK(c.eps == 0.5);
  CHECK_THROWS_AS(apply_override(c, "no_equals_sign"), ConfigError);
}

TEST_CASE("bad keys and values are rejected") {
  ExperimentConfig c;
  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "eps", "small"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "n_x", "-3"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "model", "navier_stokes"), ConfigError);
  CHECK_THROWS_AS(parse_peaks("1:2"), ConfigError);
}

TEST_CASE("validation catches out-of-range fields") {
  ExperimentConfig c;
  CHECK_NOTHROW(validate(c));
  c.mass = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ExperimentConfig{};
  c.model = ModelKind::local2d_radial;
  c.n_theta = 7;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ExperimentConfig{};
  c.order = 3;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ExperimentConfig{};
  c.dt_policy = DtPolicy::fixed;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("dumped config parses back to the same values") {
  ExperimentConfig c;
  c.name = "round trip";
  c.model = ModelKind::local1d;
  c.mass = 4 * pi;
  c.eps = 1.0 / 3.0;
  c.peaks = {{1.0, 0.1, 60.0}, {0.7, -0.45, 123.456}};
  c.dt_policy = DtPolicy::hyperbolic;
  c.adaptive = true;
  c.profile_times = {0.0, 0.0025};
  const auto back = parse_config(dump_config(c));
  CHECK(dump_config(back) == dump_config(c));
  CHECK(back.mass == c.mass);
  CHECK(back.eps == c.eps);
  REQUIRE(back.peaks.size() == 2);
  CHECK(back.peaks[1].width == 123.456);
  CHECK(format_peaks(parse_peaks(format_peaks(c.peaks))) == format_peaks(c.peaks));
}

TEST_CASE("doubles format to the shortest round-trip text") {
  for (double v : {0.1, 1.0 / 3.0, 4 * pi, 1e-300, -2.5e17, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv fields are quoted when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("csv writer output reads back") {
  const auto dir = testing::scratch_dir("csv");
  {
    CsvWriter w(dir / "t.csv", {"t", "value", "count"});
    w.row({0.0, 1.0 / 3.0, 7LL});
    w.row({0.5, std::numeric_limits<double>::quiet_NaN(), 8LL});
  }
  const auto table = read_numeric_csv(dir / "t.csv");
  CHECK(table.header == std::vector<std::string>{"t", "value", "count"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][1] == 1.0 / 3.0);
  CHECK(table.rows[0][2] == 7.0);
  CHECK(std::isnan(table.rows[1][1]));
  CHECK_THROWS(read_numeric_csv(dir / "missing.csv"));
}
