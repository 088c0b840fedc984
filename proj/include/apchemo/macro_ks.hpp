#pragma once

#include <optional>
#include <span>
#include <vector>

#include "apchemo/grid.hpp"

namespace apchemo {

struct KSCoefficients {
  double d_coef = 0.0;
  double chi_coef = 0.0;
  double critical_mass = 0.0;
};

/// D = int_V v^2 F dv, chi = 1/2 int_V v^2 dv with cell-exact moments.
KSCoefficients ks_coefficients_1d(const VelocityGrid1D& vgrid);
/// Same constants with the nodal midpoint rule the kinetic solver uses;
/// these are the coefficients its small-eps limit actually reproduces.
KSCoefficients ks_coefficients_1d_nodal(const VelocityGrid1D& vgrid);
/// D = pi int omega^3 F d omega, chi = int int omega^3 cos^2 theta, cell-exact.
KSCoefficients ks_coefficients_radial(const PolarGrid2D& grid);

enum class DriftFlux { centered, upwind };

struct KSStepInfo {
  double max_rho = 0.0;
  double min_rho = 0.0;
  double linf_grad_s = 0.0;
  /// dt / (largest stable dt); > 1 means the explicit step was unstable.
  double stability_ratio = 0.0;
};

/// Largest stable explicit step for the current density (diffusion and
/// drift limits, scaled by `cfl`).
double ks_stable_dt_1d(std::span<const double> rho, const SpatialGrid1D& grid,
                       const KSCoefficients& coeffs, double cfl = 0.45);

/// One explicit conservative step; S is recomputed from rho by the log
/// convolution, walls carry zero flux.
KSStepInfo ks_step_1d(std::vector<double>& rho, const SpatialGrid1D& grid,
                      const KSCoefficients& coeffs, double dt,
                      DriftFlux drift = DriftFlux::centered);

double ks_stable_dt_radial(std::span<const double> rho_tilde, const PolarGrid2D& grid,
                           const KSCoefficients& coeffs, double cfl = 0.45);

/// One explicit step of the radial system for rho_tilde = r rho; zero flux
/// at the axis and at r_max.
KSStepInfo ks_step_radial(std::vector<double>& rho_tilde, const PolarGrid2D& grid,
                          const KSCoefficients& coeffs, double dt,
                          DriftFlux drift = DriftFlux::centered);

/// Max-density history of one run on one grid.
struct MaxDensityHistory {
  double dx = 0.0;
  std::vector<double> times;
  std::vector<double> max_rho;
};

enum class BlowupStatus { bounded, blowup, indeterminate };

struct BlowupReport {
  BlowupStatus status = BlowupStatus::indeterminate;
  /// First crossing of the threshold on the finest grid (linear in time).
  std::optional<double> t_b;
  /// Crossing time per history in input order.
  std::vector<std::optional<double>> level_t_b;
  /// Crossing times non-increasing under refinement with shrinking gaps.
  bool grid_converged = false;
  double threshold = 0.0;
};

/// First time the history exceeds `threshold`, interpolated linearly.
std::optional<double> first_crossing(const MaxDensityHistory& history, double threshold);

/// Histories must be ordered coarse to fine.
BlowupReport detect_blowup(std::span<const MaxDensityHistory> histories, double threshold);

}  // namespace apchemo
