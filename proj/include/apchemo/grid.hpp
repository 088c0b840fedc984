#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace apchemo {

/// Positive half of a symmetric velocity space V = [-v_max, v_max].
///
/// Nodes are cell centres of a uniform partition of (0, v_max], so v = 0 is
/// never a node. Quadrature over V uses the symmetric extension: the integral
/// of an even profile g is 2 * sum_k w_k g(v_k).
class VelocityGrid1D {
 public:
  VelocityGrid1D(double v_max, std::size_t n_half);

  double v_max() const { return v_max_; }
  std::size_t n_half() const { return nodes_.size(); }
  double dv() const { return dv_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(std::size_t k) const { return nodes_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }

  /// Exact integral of v^p over velocity cell k.
  double cell_moment(std::size_t k, int p) const;

 private:
  double v_max_;
  double dv_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Uniform cell-centred partition of [x_min, x_max].
class SpatialGrid1D {
 public:
  SpatialGrid1D(double x_min, double x_max, std::size_t n_x);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double length() const { return x_max_ - x_min_; }
  std::size_t n_x() const { return n_x_; }
  double dx() const { return dx_; }
  double center(std::size_t i) const { return x_min_ + (static_cast<double>(i) + 0.5) * dx_; }
  std::vector<double> centers() const;

  /// Same domain with twice the cells.
  SpatialGrid1D refined() const { return {x_min_, x_max_, 2 * n_x_}; }

  friend bool operator==(const SpatialGrid1D&, const SpatialGrid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_x_;
  double dx_;
};

/// (r, omega, theta) grid for the spherically symmetric 2D model.
///
/// r_i = (i + 1/2) dr and theta_j = (j + 1/2) dtheta with zero-based i, j.
/// n_theta must be even so that no theta cell straddles pi/2.
class PolarGrid2D {
 public:
  PolarGrid2D(double r_max, std::size_t n_r, double v_max, std::size_t n_omega,
              std::size_t n_theta);

  double r_max() const { return r_max_; }
  double v_max() const { return v_max_; }
  std::size_t n_r() const { return n_r_; }
  std::size_t n_omega() const { return n_omega_; }
  std::size_t n_theta() const { return n_theta_; }
  double dr() const { return dr_; }
  double domega() const { return domega_; }
  double dtheta() const { return dtheta_; }

  double r(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dr_; }
  double omega(std::size_t k) const { return (static_cast<double>(k) + 0.5) * domega_; }
  double theta(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dtheta_; }
  std::size_t mirror_theta(std::size_t j) const { return n_theta_ - 1 - j; }

  /// Exact integral of omega^p over omega cell k.
  double omega_cell_moment(std::size_t k, int p) const;
  /// Exact integral of |cos theta| over theta cell j.
  double theta_cell_abs_cos(std::size_t j) const;
  /// Exact integral of cos^2 theta over theta cell j.
  double theta_cell_cos2(std::size_t j) const;

  /// Equilibrium F(omega) = 1 / (pi v_max^2), normalised so that
  /// 2 pi * integral_0^v_max omega F d omega = 1.
  double equilibrium() const;

  PolarGrid2D refined_radially() const {
    return {r_max_, 2 * n_r_, v_max_, n_omega_, n_theta_};
  }

 private:
  double r_max_;
  double v_max_;
  std::size_t n_r_;
  std::size_t n_omega_;
  std::size_t n_theta_;
  double dr_;
  double domega_;
  double dtheta_;
};

}  // namespace apchemo
