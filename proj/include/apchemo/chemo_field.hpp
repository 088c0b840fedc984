#pragma once

#include <complex>
#include <span>
#include <vector>

#include "apchemo/field.hpp"
#include "apchemo/grid.hpp"

namespace apchemo {

struct ConvolutionResult {
  std::vector<double> s;
  /// Density at the first or last cell exceeds 1e-12 of its peak: the
  /// free-space convolution then sees a truncated tail.
  bool boundary_mass_warning = false;
};

/// Mean of log|s| over the cell centred at offset * dx. Point sampling off
/// the singular cell would leave an O(dx) error in S proportional to rho.
double log_kernel_cell_average(long offset, double dx);

/// S = -(1 / (N pi)) log|x| * rho on the cell centres of `grid`.
///
/// rho is zero-extended to twice its length, which makes the FFT product an
/// exact aperiodic discrete convolution on the grid.
ConvolutionResult convolve_log(std::span<const double> rho, const SpatialGrid1D& grid,
                               int dimension = 1);

/// Trigonometric interpolant of cell data mirrored evenly about both walls
/// (period 2 * domain length).
class MirrorInterpolator {
 public:
  MirrorInterpolator(std::span<const double> values, const SpatialGrid1D& grid);

  /// out[i] = p(x_i + shift) for every cell centre.
  void shifted(double shift, std::span<double> out) const;
  /// Direct evaluation at an arbitrary point; O(n).
  double evaluate(double x) const;

 private:
  SpatialGrid1D grid_;
  std::vector<std::complex<double>> spectrum_;
};

/// delta S(x_i, +-v_k) = (S(x_i +- eps v_k) - S(x_i))_+ and its velocity
/// integral.
struct ShiftTables {
  Field2D plus;
  Field2D minus;
  /// Trapezoidal rule over the 2 n_half shifted samples.
  std::vector<double> bracket;
  /// Midpoint rule sum_k w_k (plus + minus); used to normalise the gain.
  std::vector<double> midpoint_bracket;
};

/// Throws std::invalid_argument when eps * v_max reaches the domain length.
ShiftTables shift_tables(std::span<const double> s, const SpatialGrid1D& grid,
                         const VelocityGrid1D& vgrid, double eps);

/// Central differences; the two wall cells carry zero gradient.
std::vector<double> grad_s_1d(std::span<const double> s, const SpatialGrid1D& grid);

/// dS/dr(r_i) = -(1/r_i) * integral_0^{r_i} rho_tilde dr (cumulative
/// midpoint sum, half of the own cell).
std::vector<double> grad_s_radial(std::span<const double> rho_tilde, const PolarGrid2D& grid);

/// Chemoattractant state of the 1D models at one time level.
struct ChemoField {
  std::vector<double> s_values;
  std::vector<double> grad_s;
  /// Empty for the local model.
  ShiftTables shifts;
  bool boundary_mass_warning = false;

  bool has_shifts() const { return shifts.plus.size() != 0; }
  double linf_grad_s() const;
};

ChemoField build_chemo_1d(std::span<const double> rho, const SpatialGrid1D& grid,
                          const VelocityGrid1D& vgrid, double eps, bool with_shifts);

}  // namespace apchemo
