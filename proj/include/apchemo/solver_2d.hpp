#pragma once

#include <span>
#include <vector>

#include "apchemo/grid.hpp"
#include "apchemo/kinetic_state.hpp"

namespace apchemo {

/// c2 = int_0^pi int_0^v_max omega^2 |cos theta| d omega d theta, integrated
/// exactly cell by cell on the grid.
double c2_quadrature(const PolarGrid2D& grid);

struct RadialSourceCoefficients {
  double equilibrium = 0.0;
  double c2 = 0.0;
  /// Factor on the nodal drift gain so that its discrete velocity integral
  /// equals c2 |dS/dr| rho_tilde exactly.
  double drift_scale = 1.0;
  std::vector<double> grad_s;
};

RadialSourceCoefficients radial_source_coefficients(const PolarGrid2D& grid,
                                                    std::span<const double> rho_tilde);

/// Implicit Euler on the collision/drift part with rho_tilde, S frozen.
void radial_source_step(RadialState2D& state, const RadialSourceCoefficients& coeffs,
                        std::span<const double> rho_tilde, double dt);

/// Donor-cell transport of P = (R + J)/2 and Q = (R - J)/2 on the (r, theta)
/// plane for every omega. Throws CflViolation when `cfl_check` is set and
/// the step is too long.
void radial_transport_step(RadialState2D& state, double dt, bool cfl_check = true);

/// CFL number omega_max dt (1/dr + 1/(r_1 dtheta)).
double radial_cfl_number(const PolarGrid2D& grid, double dt);
double radial_time_step(const PolarGrid2D& grid, double cfl = 0.9);

/// rho = rho_tilde / r at cell centres.
std::vector<double> radial_rho(std::span<const double> rho_tilde, const PolarGrid2D& grid);

/// Collision step then transport step.
void radial_advance(RadialState2D& state, double dt, bool cfl_check = true);

}  // namespace apchemo
