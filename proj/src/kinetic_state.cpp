#include "apchemo/kinetic_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apchemo {

KineticState1D::KineticState1D(SpatialGrid1D g, std::size_t n_half, double eps_value)
    : grid(g), r_part(n_half, g.n_x()), j_part(n_half, g.n_x()), eps(eps_value) {}

RadialState2D::RadialState2D(PolarGrid2D g, double eps_value)
    : grid(g),
      r_part(g.n_omega(), g.n_theta(), g.n_r()),
      j_part(g.n_omega(), g.n_theta(), g.n_r()),
      eps(eps_value) {}

std::vector<double> make_uniform_equilibrium(const VelocityGrid1D& vgrid) {
  return std::vector<double>(vgrid.n_half(), 1.0 / (2.0 * vgrid.v_max()));
}

double integrate_even_profile(const VelocityGrid1D& vgrid, std::span<const double> profile) {
  double sum = 0.0;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) sum += vgrid.weight(k) * profile[k];
  return 2.0 * sum;
}

VelocityPair parity_merge(const Field2D& r, const Field2D& j, double eps) {
  if (!r.same_shape(j)) throw std::invalid_argument("parity_merge: shape mismatch");
  VelocityPair f{Field2D(r.rows(), r.cols()), Field2D(r.rows(), r.cols())};
  const auto rv = r.values();
  const auto jv = j.values();
  auto pos = f.positive.values();
  auto neg = f.negative.values();
  for (std::size_t n = 0; n < rv.size(); ++n) {
    pos[n] = rv[n] + eps * jv[n];
    neg[n] = rv[n] - eps * jv[n];
  }
  return f;
}

std::pair<Field2D, Field2D> parity_split(const VelocityPair& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("parity_split: eps must be positive");
  if (!f.positive.same_shape(f.negative)) throw std::invalid_argument("parity_split: shape mismatch");
  Field2D r(f.positive.rows(), f.positive.cols());
  Field2D j(f.positive.rows(), f.positive.cols());
  const auto pos = f.positive.values();
  const auto neg = f.negative.values();
  auto rv = r.values();
  auto jv = j.values();
  for (std::size_t n = 0; n < pos.size(); ++n) {
    rv[n] = 0.5 * (pos[n] + neg[n]);
    jv[n] = (pos[n] - neg[n]) / (2.0 * eps);
  }
  return {std::move(r), std::move(j)};
}

std::vector<double> density_1d(const KineticState1D& state, const VelocityGrid1D& vgrid) {
  const std::size_t n_x = state.grid.n_x();
  std::vector<double> rho(n_x, 0.0);
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    const double w2 = 2.0 * vgrid.weight(k);
    const auto row = state.r_part.row(k);
    for (std::size_t i = 0; i < n_x; ++i) rho[i] += w2 * row[i];
  }
  return rho;
}

double total_mass_1d(std::span<const double> rho, const SpatialGrid1D& grid) {
  double sum = 0.0;
  for (double v : rho) sum += v;
  return sum * grid.dx();
}

std::vector<double> density_2d(const RadialState2D& state) {
  const PolarGrid2D& g = state.grid;
  std::vector<double> rho_tilde(g.n_r(), 0.0);
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    const double w = 2.0 * g.omega(k) * g.domega() * g.dtheta();
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const auto row = state.r_part.row(k, j);
      for (std::size_t i = 0; i < g.n_r(); ++i) rho_tilde[i] += w * row[i];
    }
  }
  return rho_tilde;
}

double total_mass_2d(std::span<const double> rho_tilde, const PolarGrid2D& grid) {
  double sum = 0.0;
  for (double v : rho_tilde) sum += v;
  return 2.0 * std::numbers::pi * sum * grid.dr();
}

std::vector<double> peaks_density(const SpatialGrid1D& grid, std::span<const Peak> peaks, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("init_peaks: mass must be positive");
  if (peaks.empty()) throw std::invalid_argument("init_peaks: no peaks given");
  for (const Peak& p : peaks) {
    if (!(p.width > 0.0)) throw std::invalid_argument("init_peaks: peak width must be positive");
  }
  std::vector<double> rho(grid.n_x(), 0.0);
  for (std::size_t i = 0; i < grid.n_x(); ++i) {
    const double x = grid.center(i);
    for (const Peak& p : peaks) rho[i] += p.weight * std::exp(-p.width * (x - p.center) * (x - p.center));
  }
  const double raw = total_mass_1d(rho, grid);
  if (!(raw > 0.0)) throw std::invalid_argument("init_peaks: peaks carry no mass on this grid");
  const double c = mass / raw;
  for (double& v : rho) v *= c;
  return rho;
}

KineticState1D init_from_density(const SpatialGrid1D& grid, std::span<const double> rho,
                                 const VelocityGrid1D& vgrid, double eps) {
  if (rho.size() != grid.n_x()) throw std::invalid_argument("init_from_density: size mismatch");
  KineticState1D state(grid, vgrid.n_half(), eps);
  const auto equilibrium = make_uniform_equilibrium(vgrid);
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    auto row = state.r_part.row(k);
    for (std::size_t i = 0; i < grid.n_x(); ++i) row[i] = rho[i] * equilibrium[k];
  }
  return state;
}

KineticState1D init_peaks(const SpatialGrid1D& grid, std::span<const Peak> peaks, double mass,
                          const VelocityGrid1D& vgrid, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("init_peaks: eps must be positive");
  const auto rho = peaks_density(grid, peaks, mass);
  return init_from_density(grid, rho, vgrid, eps);
}

std::vector<double> radial_bump_density(const PolarGrid2D& grid, double mass, double decay) {
  if (!(mass >= 0.0)) throw std::invalid_argument("radial density: mass must be nonnegative");
  std::vector<double> rho_tilde(grid.n_r());
  for (std::size_t i = 0; i < grid.n_r(); ++i) {
    const double r = grid.r(i);
    rho_tilde[i] = r * std::exp(-decay * r * r);
  }
  const double raw = total_mass_2d(rho_tilde, grid);
  for (double& v : rho_tilde) v *= mass / raw;
  return rho_tilde;
}

RadialState2D init_radial(const PolarGrid2D& grid, std::span<const double> rho_tilde, double eps) {
  if (rho_tilde.size() != grid.n_r()) throw std::invalid_argument("init_radial: size mismatch");
  if (!(eps > 0.0)) throw std::invalid_argument("init_radial: eps must be positive");
  RadialState2D state(grid, eps);
  const double f_eq = grid.equilibrium();
  for (std::size_t k = 0; k < grid.n_omega(); ++k) {
    for (std::size_t j = 0; j < grid.n_theta(); ++j) {
      auto row = state.r_part.row(k, j);
      for (std::size_t i = 0; i < grid.n_r(); ++i) row[i] = rho_tilde[i] * f_eq;
    }
  }
  return state;
}

Field3D radial_merge(const RadialState2D& state) {
  Field3D h(state.r_part.slices(), state.r_part.rows(), state.r_part.cols());
  const auto rv = state.r_part.values();
  const auto jv = state.j_part.values();
  auto hv = h.values();
  for (std::size_t n = 0; n < hv.size(); ++n) hv[n] = rv[n] + state.eps * jv[n];
  return h;
}

void radial_split(const Field3D& h, RadialState2D& state) {
  if (!h.same_shape(state.r_part)) throw std::invalid_argument("radial_split: shape mismatch");
  const PolarGrid2D& g = state.grid;
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const auto here = h.row(k, j);
      const auto mirror = h.row(k, g.mirror_theta(j));
      auto rr = state.r_part.row(k, j);
      auto jj = state.j_part.row(k, j);
      for (std::size_t i = 0; i < g.n_r(); ++i) {
        rr[i] = 0.5 * (here[i] + mirror[i]);
        jj[i] = (here[i] - mirror[i]) / (2.0 * state.eps);
      }
    }
  }
}

}  // namespace apchemo
