#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "apchemo/solver_1d.hpp"
#include "apchemo/solver_2d.hpp"
#include "helpers.hpp"

using namespace apchemo;
constexpr double pi = std::numbers::pi;

namespace {

// Off-equilibrium radial state with a J part, supported well inside r_max.
RadialState2D perturbed_state(const PolarGrid2D& g, double eps, double mass) {
  RadialState2D s = init_radial(g, radial_bump_density(g, mass, 40.0), eps);
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double c = std::cos(g.theta(j));
      for (std::size_t i = 0; i < g.n_r(); ++i) {
        s.r_part(k, j, i) *= 1.0 + 0.2 * std::cos(1.0 + k) * c * c;
        s.j_part(k, j, i) = 0.3 * c * s.r_part(k, j, i);
      }
    }
  }
  return s;
}

}  // namespace

TEST_CASE("c2 is two thirds of v_max cubed") {
  for (double v_max : {1.0, 2.0}) {
    const PolarGrid2D g(1.0, 10, v_max, 12, 10);
    CHECK(c2_quadrature(g) == doctest::Approx(2.0 / 3.0 * v_max * v_max * v_max).epsilon(1e-12));
  }
}

TEST_CASE("radial source step keeps rho_tilde") {
  const PolarGrid2D g(2.0, 80, 1.0, 8, 8);
  for (double eps : {1.0, 0.1, 1e-4}) {
    RadialState2D s = perturbed_state(g, eps, 17.0);
    const auto rt = density_2d(s);
    const auto coeffs = radial_source_coefficients(g, rt);
    radial_source_step(s, coeffs, rt, 1e-3);
    CHECK(testing::max_abs_diff(density_2d(s), rt) <= 1e-12 * testing::max_abs(rt));
  }
}

TEST_CASE("radial transport conserves the mass of compact data") {
  const PolarGrid2D g(2.0, 100, 1.0, 8, 8);
  RadialState2D s = perturbed_state(g, 1.0, 9.0);
  const double m0 = total_mass_2d(density_2d(s), g);
  const double dt = radial_time_step(g);
  for (int n = 0; n < 50; ++n) radial_transport_step(s, dt);
  CHECK(total_mass_2d(density_2d(s), g) == doctest::Approx(m0).epsilon(1e-11));
}

TEST_CASE("radial time step respects the CFL bound") {
  const PolarGrid2D g(2.0, 100, 1.0, 8, 8);
  CHECK(radial_cfl_number(g, radial_time_step(g, 0.9)) == doctest::Approx(0.9));
  const double dt = radial_time_step(g, 1.0);
  CHECK(radial_cfl_number(g, dt) == doctest::Approx(g.v_max() * dt * (1.0 / g.dr() + 1.0 / (g.r(0) * g.dtheta()))));
  RadialState2D s = init_radial(g, radial_bump_density(g, 1.0), 1.0);
  CHECK_THROWS_AS(radial_transport_step(s, 1.5 * dt), CflViolation);
}

TEST_CASE("full radial step conserves mass up to the outer leak") {
  const PolarGrid2D g(2.0, 60, 1.0, 8, 8);
  RadialState2D s = perturbed_state(g, 0.5, 4 * pi);
  const double m0 = total_mass_2d(density_2d(s), g);
  const double dt = radial_time_step(g);
  for (int n = 0; n < 40; ++n) radial_advance(s, dt);
  const auto rt = density_2d(s);
  CHECK(total_mass_2d(rt, g) == doctest::Approx(m0).epsilon(1e-10));
  for (double v : rt) CHECK(std::isfinite(v));
}

TEST_CASE("rho is rho_tilde over r") {
  const PolarGrid2D g(1.0, 5, 1.0, 4, 4);
  const std::vector<double> rt{1, 2, 3, 4, 5};
  const auto rho = radial_rho(rt, g);
  for (std::size_t i = 0; i < 5; ++i) CHECK(rho[i] == doctest::Approx(rt[i] / g.r(i)));
}
