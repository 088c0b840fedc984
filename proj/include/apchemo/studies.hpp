#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "apchemo/field.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kinetic_state.hpp"

namespace apchemo {

/// A solution on one level of a doubling sequence. Columns are spatial
/// cells, rows are velocity nodes; `row_weights` is the velocity measure of
/// each row and `dx` the cell width.
struct LevelSample {
  double dx = 0.0;
  Field2D values;
  std::vector<double> row_weights;
  /// ||f_level(0)||_1 in the same weighted norm.
  double initial_l1 = 0.0;
};

/// f on both velocity halves, rows ordered (+v_k, -v_k).
LevelSample sample_kinetic_1d(const KineticState1D& state, const VelocityGrid1D& vgrid);
/// h = R + eps J on the full theta range, weighted by omega domega dtheta.
LevelSample sample_radial(const RadialState2D& state);
/// One row holding the density.
LevelSample sample_density(std::span<const double> rho, double dx);

double weighted_l1(const LevelSample& s);

/// dx-weighted l1 distance between the fine level averaged over cell pairs
/// and the coarse level.
double restricted_l1_difference(const LevelSample& fine, const LevelSample& coarse);

struct ConvergenceRow {
  double dx = 0.0;  ///< fine spacing of the compared pair
  double e1 = 0.0;
  std::optional<double> order;
};

/// e_dx = ||f_dx - f_2dx||_1 / ||f_2dx(0)||_1 and order = log2(e_2dx / e_dx).
/// Levels ordered coarse to fine; fewer than three are rejected.
std::vector<ConvergenceRow> convergence_table(std::span<const LevelSample> levels);

/// Runs `level(l)` for l = 0 .. n_levels-1 and tabulates.
std::vector<ConvergenceRow> convergence_order(const std::function<LevelSample(std::size_t)>& level,
                                              std::size_t n_levels);

/// ||f - rho F||_2, grid weighted over x and V.
double equilibrium_distance_l2(const KineticState1D& state, const VelocityGrid1D& vgrid);
double density_l1_distance(std::span<const double> a, std::span<const double> b, double dx);

/// Least-squares slope of log(y) against log(x).
double fitted_order(std::span<const double> x, std::span<const double> y);

struct EpsSample {
  double eps = 0.0;
  double dist_f_rhoF_l2 = 0.0;
  double dist_rho_rho0_l1 = 0.0;
};

struct EpsStudy {
  std::vector<EpsSample> rows;
  double order_f_rhoF = 0.0;
  double order_rho_rho0 = 0.0;
};

/// `run(eps)` returns the kinetic state at the evaluation time; `rho_limit`
/// is the macroscopic density on the same grid.
EpsStudy eps_convergence(const std::function<KineticState1D(double)>& run,
                         std::span<const double> eps_values, std::span<const double> rho_limit,
                         const VelocityGrid1D& vgrid);

struct FtildeStation {
  double x_rescaled = 0.0;
  double x = 0.0;
  /// Velocities -v_max .. v_max (negative half reversed first).
  std::vector<double> v;
  std::vector<double> ftilde;
  double zeroth_moment = 0.0;
  double first_moment = 0.0;
};

struct StationaryProfile {
  double eps = 0.0;
  std::vector<double> x_rescaled;
  std::vector<double> eps_rho;
  std::vector<FtildeStation> stations;
};

/// eps rho(eps y) on y = x / eps, and Ftilde(y, v) = f(eps y, v) / rho at the
/// cells nearest to the requested rescaled stations. Stations where rho is
/// below `rho_floor` are skipped.
StationaryProfile stationary_diagnostics(const KineticState1D& state, const VelocityGrid1D& vgrid,
                                         std::span<const double> stations_rescaled,
                                         double rho_floor = 1e-8);

/// l1 distance between two rescaled profiles over their common y range,
/// relative to the l1 norm of `a` there. `b` is interpolated linearly.
double overlay_l1_distance(const StationaryProfile& a, const StationaryProfile& b);

struct SelfSimilarSeries {
  std::vector<double> tau;
  std::vector<double> l1_to_final;
  /// Rescaled profiles rho_tilde(tau, y) on y = grid centres.
  std::vector<std::vector<double>> profiles;
};

/// R = sqrt(1 + 2t), y = x / R, tau = log R, rho_tilde(tau, y) = R rho(t, R y)
/// by linear interpolation (zero outside the domain).
SelfSimilarSeries self_similar_profile(std::span<const std::vector<double>> history,
                                       std::span<const double> times, const SpatialGrid1D& grid);

}  // namespace apchemo
