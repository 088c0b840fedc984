#include "apchemo/macro_ks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "apchemo/chemo_field.hpp"

namespace apchemo {

KSCoefficients ks_coefficients_1d(const VelocityGrid1D& vgrid) {
  const double f = 1.0 / (2.0 * vgrid.v_max());
  double second = 0.0;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) second += vgrid.cell_moment(k, 2);
  KSCoefficients c;
  c.d_coef = 2.0 * f * second;
  c.chi_coef = second;
  c.critical_mass = 2.0 * std::numbers::pi * c.d_coef / c.chi_coef;
  return c;
}

KSCoefficients ks_coefficients_1d_nodal(const VelocityGrid1D& vgrid) {
  const double f = 1.0 / (2.0 * vgrid.v_max());
  double second = 0.0;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    second += vgrid.weight(k) * vgrid.node(k) * vgrid.node(k);
  }
  KSCoefficients c;
  c.d_coef = 2.0 * f * second;
  c.chi_coef = second;
  c.critical_mass = 2.0 * std::numbers::pi * c.d_coef / c.chi_coef;
  return c;
}

KSCoefficients ks_coefficients_radial(const PolarGrid2D& grid) {
  double third = 0.0;
  for (std::size_t k = 0; k < grid.n_omega(); ++k) third += grid.omega_cell_moment(k, 3);
  double cos2 = 0.0;
  for (std::size_t j = 0; j < grid.n_theta(); ++j) cos2 += grid.theta_cell_cos2(j);
  KSCoefficients c;
  c.d_coef = std::numbers::pi * grid.equilibrium() * third;
  c.chi_coef = third * cos2;
  c.critical_mass = 8.0 * std::numbers::pi * c.d_coef / c.chi_coef;
  return c;
}

namespace {

double interface_density(double left, double right, double velocity, DriftFlux drift) {
  if (drift == DriftFlux::centered) return 0.5 * (left + right);
  return velocity > 0.0 ? left : right;
}

void fill_extrema(std::span<const double> rho, KSStepInfo& info) {
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  info.min_rho = *lo;
  info.max_rho = *hi;
}

}  // namespace

double ks_stable_dt_1d(std::span<const double> rho, const SpatialGrid1D& grid,
                       const KSCoefficients& coeffs, double cfl) {
  const double dx = grid.dx();
  const auto s = convolve_log(rho, grid).s;
  double slope = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) slope = std::max(slope, std::abs(s[i + 1] - s[i]) / dx);
  double limit = dx * dx / (2.0 * coeffs.d_coef);
  if (coeffs.chi_coef * slope > 0.0) limit = std::min(limit, dx / (coeffs.chi_coef * slope));
  return cfl * limit;
}

KSStepInfo ks_step_1d(std::vector<double>& rho, const SpatialGrid1D& grid,
                      const KSCoefficients& coeffs, double dt, DriftFlux drift) {
  const std::size_t n = rho.size();
  if (n != grid.n_x()) throw std::invalid_argument("ks_step_1d: density/grid size mismatch");
  const double dx = grid.dx();
  const auto s = convolve_log(rho, grid).s;
  KSStepInfo info;
  // flux[i] sits between cells i and i + 1; the walls carry none.
  std::vector<double> flux(n - 1);
  double slope_max = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double slope = (s[i + 1] - s[i]) / dx;
    slope_max = std::max(slope_max, std::abs(slope));
    const double velocity = coeffs.chi_coef * slope;
    flux[i] = coeffs.d_coef * (rho[i + 1] - rho[i]) / dx -
              velocity * interface_density(rho[i], rho[i + 1], velocity, drift);
  }
  double limit = dx * dx / (2.0 * coeffs.d_coef);
  if (coeffs.chi_coef * slope_max > 0.0) limit = std::min(limit, dx / (coeffs.chi_coef * slope_max));
  info.stability_ratio = dt / limit;
  info.linf_grad_s = slope_max;
  for (std::size_t i = 0; i < n; ++i) {
    const double right = i + 1 < n ? flux[i] : 0.0;
    const double left = i > 0 ? flux[i - 1] : 0.0;
    rho[i] += dt / dx * (right - left);
  }
  fill_extrema(rho, info);
  return info;
}

namespace {

// dS/dr at the interface r_{i+1/2} = (i + 1) dr from the enclosed mass.
std::vector<double> interface_grad_s(std::span<const double> rho_tilde, const PolarGrid2D& grid) {
  const std::size_t n = rho_tilde.size();
  std::vector<double> g(n - 1);
  double enclosed = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    enclosed += rho_tilde[i] * grid.dr();
    g[i] = -enclosed / (static_cast<double>(i + 1) * grid.dr());
  }
  return g;
}

}  // namespace

double ks_stable_dt_radial(std::span<const double> rho_tilde, const PolarGrid2D& grid,
                           const KSCoefficients& coeffs, double cfl) {
  const double dr = grid.dr();
  const auto g = interface_grad_s(rho_tilde, grid);
  double slope = 0.0;
  for (double v : g) slope = std::max(slope, std::abs(v));
  // The axis cell sees twice the usual diffusive coupling.
  double limit = dr * dr / (4.0 * coeffs.d_coef);
  if (coeffs.chi_coef * slope > 0.0) limit = std::min(limit, dr / (coeffs.chi_coef * slope));
  return cfl * limit;
}

KSStepInfo ks_step_radial(std::vector<double>& rho_tilde, const PolarGrid2D& grid,
                          const KSCoefficients& coeffs, double dt, DriftFlux drift) {
  const std::size_t n = rho_tilde.size();
  if (n != grid.n_r()) throw std::invalid_argument("ks_step_radial: density/grid size mismatch");
  const double dr = grid.dr();
  const auto g = interface_grad_s(rho_tilde, grid);
  std::vector<double> flux(n - 1);
  double slope_max = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double r_face = static_cast<double>(i + 1) * dr;
    const double rho_l = rho_tilde[i] / grid.r(i);
    const double rho_r = rho_tilde[i + 1] / grid.r(i + 1);
    const double velocity = coeffs.chi_coef * g[i];
    slope_max = std::max(slope_max, std::abs(g[i]));
    flux[i] = coeffs.d_coef * r_face * (rho_r - rho_l) / dr -
              velocity * interface_density(rho_tilde[i], rho_tilde[i + 1], velocity, drift);
  }
  double limit = dr * dr / (4.0 * coeffs.d_coef);
  if (coeffs.chi_coef * slope_max > 0.0) limit = std::min(limit, dr / (coeffs.chi_coef * slope_max));
  KSStepInfo info;
  info.stability_ratio = dt / limit;
  info.linf_grad_s = slope_max;
  for (std::size_t i = 0; i < n; ++i) {
    const double right = i + 1 < n ? flux[i] : 0.0;
    const double left = i > 0 ? flux[i - 1] : 0.0;
    rho_tilde[i] += dt / dr * (right - left);
  }
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = rho_tilde[i] / grid.r(i);
  fill_extrema(rho, info);
  return info;
}

std::optional<double> first_crossing(const MaxDensityHistory& history, double threshold) {
  const auto& t = history.times;
  const auto& m = history.max_rho;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < threshold) continue;
    if (i == 0) return t[0];
    const double w = (threshold - m[i - 1]) / (m[i] - m[i - 1]);
    return t[i - 1] + w * (t[i] - t[i - 1]);
  }
  return std::nullopt;
}

BlowupReport detect_blowup(std::span<const MaxDensityHistory> histories, double threshold) {
  BlowupReport report;
  report.threshold = threshold;
  for (const auto& h : histories) report.level_t_b.push_back(first_crossing(h, threshold));
  if (histories.empty()) return report;
  report.t_b = report.level_t_b.back();

  const bool any = std::any_of(report.level_t_b.begin(), report.level_t_b.end(),
                               [](const auto& v) { return v.has_value(); });
  if (!any) {
    report.status = histories.size() >= 2 ? BlowupStatus::bounded : BlowupStatus::indeterminate;
    return report;
  }
  const bool all = std::all_of(report.level_t_b.begin(), report.level_t_b.end(),
                               [](const auto& v) { return v.has_value(); });
  if (!all || histories.size() < 3) return report;

  // Non-increasing under refinement (up to 1% slack) with shrinking gaps.
  bool converged = true;
  for (std::size_t l = 1; l < report.level_t_b.size(); ++l) {
    const double prev = *report.level_t_b[l - 1];
    const double cur = *report.level_t_b[l];
    if (cur > prev * 1.01) converged = false;
    if (l >= 2) {
      const double gap_prev = std::abs(prev - *report.level_t_b[l - 2]);
      const double gap = std::abs(cur - prev);
      if (gap > gap_prev && gap > 1e-3 * cur) converged = false;
    }
  }
  report.grid_converged = converged;
  report.status = converged ? BlowupStatus::blowup : BlowupStatus::indeterminate;
  return report;
}

}  // namespace apchemo
