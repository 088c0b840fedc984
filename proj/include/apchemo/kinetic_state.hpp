#pragma once

#include <span>
#include <vector>

#include "apchemo/field.hpp"
#include "apchemo/grid.hpp"

namespace apchemo {

/// Even/odd parity pair (r, j) of a 1D kinetic density f on grid x V+.
///
/// f(x, v) = r + eps j and f(x, -v) = r - eps j for v > 0. Rows of r and j
/// index velocity nodes.
struct KineticState1D {
  SpatialGrid1D grid;
  Field2D r_part;
  Field2D j_part;
  double time = 0.0;
  double eps = 1.0;

  KineticState1D(SpatialGrid1D g, std::size_t n_half, double eps_value);
};

/// f sampled on both velocity halves: positive(k, i) = f(x_i, v_k),
/// negative(k, i) = f(x_i, -v_k).
struct VelocityPair {
  Field2D positive;
  Field2D negative;
};

/// Parity pair (R, J) of h = r f on the (omega, theta, r) grid, stored on
/// the full theta range. R is symmetric under theta -> pi - theta, J is
/// antisymmetric.
struct RadialState2D {
  PolarGrid2D grid;
  Field3D r_part;
  Field3D j_part;
  double time = 0.0;
  double eps = 1.0;

  RadialState2D(PolarGrid2D g, double eps_value);
};

/// Gaussian-like initial bump weight * exp(-width (x - center)^2).
struct Peak {
  double weight = 1.0;
  double center = 0.0;
  double width = 80.0;
};

/// F(v_k) = 1 / (2 v_max) on every positive node.
std::vector<double> make_uniform_equilibrium(const VelocityGrid1D& vgrid);

/// Integral over V of an even velocity profile given on V+.
double integrate_even_profile(const VelocityGrid1D& vgrid, std::span<const double> profile);

VelocityPair parity_merge(const Field2D& r, const Field2D& j, double eps);
/// Returns (r, j). Throws for eps <= 0.
std::pair<Field2D, Field2D> parity_split(const VelocityPair& f, double eps);

/// rho_i = 2 sum_k w_k r(x_i, v_k).
std::vector<double> density_1d(const KineticState1D& state, const VelocityGrid1D& vgrid);
double total_mass_1d(std::span<const double> rho, const SpatialGrid1D& grid);

/// rho_tilde_i = 2 sum_{k,j} omega_k domega dtheta R.
std::vector<double> density_2d(const RadialState2D& state);
/// M = 2 pi sum_i rho_tilde_i dr.
double total_mass_2d(std::span<const double> rho_tilde, const PolarGrid2D& grid);

/// rho^I = C sum_j w_j exp(-width_j (x - c_j)^2) with the discrete mass equal
/// to `mass`.
std::vector<double> peaks_density(const SpatialGrid1D& grid, std::span<const Peak> peaks, double mass);

/// Well-prepared state f = rho^I F (so j = 0).
KineticState1D init_peaks(const SpatialGrid1D& grid, std::span<const Peak> peaks, double mass,
                          const VelocityGrid1D& vgrid, double eps);

/// Well-prepared state from an arbitrary density: r = rho F, j = 0.
KineticState1D init_from_density(const SpatialGrid1D& grid, std::span<const double> rho,
                                 const VelocityGrid1D& vgrid, double eps);

/// rho_tilde^I = C r exp(-decay r^2), normalised to total mass `mass`.
std::vector<double> radial_bump_density(const PolarGrid2D& grid, double mass, double decay = 15.0);

/// h = rho_tilde F(omega): R = h, J = 0.
RadialState2D init_radial(const PolarGrid2D& grid, std::span<const double> rho_tilde, double eps);

/// h(theta) = R + eps J on the full theta range; layout matches R.
Field3D radial_merge(const RadialState2D& state);
/// Inverse of radial_merge using the theta -> pi - theta reflection.
void radial_split(const Field3D& h, RadialState2D& state);

}  // namespace apchemo
