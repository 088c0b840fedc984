#include "apchemo/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apchemo {
namespace {

double power_antiderivative(double x, int p) { return std::pow(x, p + 1) / (p + 1); }

}  // namespace

VelocityGrid1D::VelocityGrid1D(double v_max, std::size_t n_half) : v_max_(v_max) {
  if (!(v_max > 0.0)) throw std::invalid_argument("velocity grid: v_max must be positive");
  if (n_half == 0) throw std::invalid_argument("velocity grid: need at least one node");
  dv_ = v_max / static_cast<double>(n_half);
  nodes_.resize(n_half);
  weights_.assign(n_half, dv_);
  for (std::size_t k = 0; k < n_half; ++k) nodes_[k] = (static_cast<double>(k) + 0.5) * dv_;
}

double VelocityGrid1D::cell_moment(std::size_t k, int p) const {
  const double lo = static_cast<double>(k) * dv_;
  const double hi = lo + dv_;
  return power_antiderivative(hi, p) - power_antiderivative(lo, p);
}

SpatialGrid1D::SpatialGrid1D(double x_min, double x_max, std::size_t n_x)
    : x_min_(x_min), x_max_(x_max), n_x_(n_x) {
  if (!(x_max > x_min)) throw std::invalid_argument("spatial grid: empty domain");
  if (n_x < 3) throw std::invalid_argument("spatial grid: need at least 3 cells");
  dx_ = (x_max - x_min) / static_cast<double>(n_x);
}

std::vector<double> SpatialGrid1D::centers() const {
  std::vector<double> xs(n_x_);
  for (std::size_t i = 0; i < n_x_; ++i) xs[i] = center(i);
  return xs;
}

PolarGrid2D::PolarGrid2D(double r_max, std::size_t n_r, double v_max, std::size_t n_omega,
                         std::size_t n_theta)
    : r_max_(r_max), v_max_(v_max), n_r_(n_r), n_omega_(n_omega), n_theta_(n_theta) {
  if (!(r_max > 0.0) || !(v_max > 0.0)) throw std::invalid_argument("polar grid: bounds must be positive");
  if (n_r < 3 || n_omega == 0) throw std::invalid_argument("polar grid: too few cells");
  if (n_theta < 2 || n_theta % 2 != 0) throw std::invalid_argument("polar grid: n_theta must be even");
  dr_ = r_max / static_cast<double>(n_r);
  domega_ = v_max / static_cast<double>(n_omega);
  dtheta_ = std::numbers::pi / static_cast<double>(n_theta);
}

double PolarGrid2D::omega_cell_moment(std::size_t k, int p) const {
  const double lo = static_cast<double>(k) * domega_;
  return power_antiderivative(lo + domega_, p) - power_antiderivative(lo, p);
}

double PolarGrid2D::theta_cell_abs_cos(std::size_t j) const {
  const double lo = static_cast<double>(j) * dtheta_;
  return std::abs(std::sin(lo + dtheta_) - std::sin(lo));
}

double PolarGrid2D::theta_cell_cos2(std::size_t j) const {
  const auto prim = [](double t) { return 0.5 * t + 0.25 * std::sin(2.0 * t); };
  const double lo = static_cast<double>(j) * dtheta_;
  return prim(lo + dtheta_) - prim(lo);
}

double PolarGrid2D::equilibrium() const { return 1.0 / (std::numbers::pi * v_max_ * v_max_); }

}  // namespace apchemo
