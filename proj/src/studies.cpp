#include "apchemo/studies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apchemo {

LevelSample sample_kinetic_1d(const KineticState1D& state, const VelocityGrid1D& vgrid) {
  const std::size_t nv = vgrid.n_half();
  const std::size_t n = state.grid.n_x();
  LevelSample s;
  s.dx = state.grid.dx();
  s.values = Field2D(2 * nv, n);
  s.row_weights.resize(2 * nv);
  const VelocityPair f = parity_merge(state.r_part, state.j_part, state.eps);
  for (std::size_t k = 0; k < nv; ++k) {
    std::copy(f.positive.row(k).begin(), f.positive.row(k).end(), s.values.row(2 * k).begin());
    std::copy(f.negative.row(k).begin(), f.negative.row(k).end(), s.values.row(2 * k + 1).begin());
    s.row_weights[2 * k] = vgrid.weight(k);
    s.row_weights[2 * k + 1] = vgrid.weight(k);
  }
  return s;
}

LevelSample sample_radial(const RadialState2D& state) {
  const PolarGrid2D& g = state.grid;
  const Field3D h = radial_merge(state);
  LevelSample s;
  s.dx = g.dr();
  s.values = Field2D(g.n_omega() * g.n_theta(), g.n_r());
  s.row_weights.resize(g.n_omega() * g.n_theta());
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const std::size_t row = k * g.n_theta() + j;
      const auto src = h.row(k, j);
      std::copy(src.begin(), src.end(), s.values.row(row).begin());
      s.row_weights[row] = g.omega(k) * g.domega() * g.dtheta();
    }
  }
  return s;
}

LevelSample sample_density(std::span<const double> rho, double dx) {
  LevelSample s;
  s.dx = dx;
  s.values = Field2D(1, rho.size());
  std::copy(rho.begin(), rho.end(), s.values.row(0).begin());
  s.row_weights = {1.0};
  return s;
}

double weighted_l1(const LevelSample& s) {
  double total = 0.0;
  for (std::size_t k = 0; k < s.values.rows(); ++k) {
    double row = 0.0;
    for (double v : s.values.row(k)) row += std::abs(v);
    total += s.row_weights[k] * row;
  }
  return total * s.dx;
}

double restricted_l1_difference(const LevelSample& fine, const LevelSample& coarse) {
  if (fine.values.rows() != coarse.values.rows() || fine.values.cols() != 2 * coarse.values.cols()) {
    throw std::invalid_argument("restricted_l1_difference: levels are not a doubling pair");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < coarse.values.rows(); ++k) {
    const auto f = fine.values.row(k);
    const auto c = coarse.values.row(k);
    double row = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) row += std::abs(0.5 * (f[2 * i] + f[2 * i + 1]) - c[i]);
    total += coarse.row_weights[k] * row;
  }
  return total * coarse.dx;
}

std::vector<ConvergenceRow> convergence_table(std::span<const LevelSample> levels) {
  if (levels.size() < 3) throw std::invalid_argument("convergence_table: need at least three levels");
  std::vector<ConvergenceRow> rows;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    ConvergenceRow row;
    row.dx = levels[l].dx;
    row.e1 = restricted_l1_difference(levels[l], levels[l - 1]) / levels[l - 1].initial_l1;
    if (!rows.empty()) row.order = std::log2(rows.back().e1 / row.e1);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_order(const std::function<LevelSample(std::size_t)>& level,
                                              std::size_t n_levels) {
  if (n_levels < 3) throw std::invalid_argument("convergence_order: need at least three levels");
  std::vector<LevelSample> samples;
  for (std::size_t l = 0; l < n_levels; ++l) samples.push_back(level(l));
  return convergence_table(samples);
}

double equilibrium_distance_l2(const KineticState1D& state, const VelocityGrid1D& vgrid) {
  const auto rho = density_1d(state, vgrid);
  const double f_eq = 1.0 / (2.0 * vgrid.v_max());
  const double eps = state.eps;
  double total = 0.0;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    const auto r = state.r_part.row(k);
    const auto j = state.j_part.row(k);
    double row = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double eq = rho[i] * f_eq;
      const double plus = r[i] + eps * j[i] - eq;
      const double minus = r[i] - eps * j[i] - eq;
      row += plus * plus + minus * minus;
    }
    total += vgrid.weight(k) * row;
  }
  return std::sqrt(total * state.grid.dx());
}

double density_l1_distance(std::span<const double> a, std::span<const double> b, double dx) {
  if (a.size() != b.size()) throw std::invalid_argument("density_l1_distance: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total * dx;
}

double fitted_order(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fitted_order: need two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EpsStudy eps_convergence(const std::function<KineticState1D(double)>& run,
                         std::span<const double> eps_values, std::span<const double> rho_limit,
                         const VelocityGrid1D& vgrid) {
  EpsStudy study;
  std::vector<double> eps, df, dr;
  for (double e : eps_values) {
    const KineticState1D state = run(e);
    const auto rho = density_1d(state, vgrid);
    EpsSample row;
    row.eps = e;
    row.dist_f_rhoF_l2 = equilibrium_distance_l2(state, vgrid);
    row.dist_rho_rho0_l1 = density_l1_distance(rho, rho_limit, state.grid.dx());
    study.rows.push_back(row);
    eps.push_back(e);
    df.push_back(row.dist_f_rhoF_l2);
    dr.push_back(row.dist_rho_rho0_l1);
  }
  if (eps.size() >= 2) {
    study.order_f_rhoF = fitted_order(eps, df);
    study.order_rho_rho0 = fitted_order(eps, dr);
  }
  return study;
}

StationaryProfile stationary_diagnostics(const KineticState1D& state, const VelocityGrid1D& vgrid,
                                         std::span<const double> stations_rescaled, double rho_floor) {
  const double eps = state.eps;
  const auto rho = density_1d(state, vgrid);
  const SpatialGrid1D& g = state.grid;
  StationaryProfile p;
  p.eps = eps;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    p.x_rescaled.push_back(g.center(i) / eps);
    p.eps_rho.push_back(eps * rho[i]);
  }
  const std::size_t nv = vgrid.n_half();
  for (double y : stations_rescaled) {
    const double x = eps * y;
    if (x < g.x_min() || x > g.x_max()) continue;
    const auto cell = std::min<std::size_t>(g.n_x() - 1, static_cast<std::size_t>((x - g.x_min()) / g.dx()));
    if (!(rho[cell] > rho_floor)) continue;
    FtildeStation s;
    s.x = g.center(cell);
    s.x_rescaled = s.x / eps;
    for (std::size_t kk = 0; kk < nv; ++kk) {
      const std::size_t k = nv - 1 - kk;
      s.v.push_back(-vgrid.node(k));
      s.ftilde.push_back((state.r_part(k, cell) - eps * state.j_part(k, cell)) / rho[cell]);
    }
    for (std::size_t k = 0; k < nv; ++k) {
      s.v.push_back(vgrid.node(k));
      s.ftilde.push_back((state.r_part(k, cell) + eps * state.j_part(k, cell)) / rho[cell]);
    }
    for (std::size_t k = 0; k < nv; ++k) {
      const double plus = s.ftilde[nv + k];
      const double minus = s.ftilde[nv - 1 - k];
      s.zeroth_moment += vgrid.weight(k) * (plus + minus);
      s.first_moment += vgrid.weight(k) * vgrid.node(k) * (plus - minus);
    }
    p.stations.push_back(std::move(s));
  }
  return p;
}

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * ys[lo] + w * ys[hi];
}

}  // namespace

double overlay_l1_distance(const StationaryProfile& a, const StationaryProfile& b) {
  const double lo = std::max(a.x_rescaled.front(), b.x_rescaled.front());
  const double hi = std::min(a.x_rescaled.back(), b.x_rescaled.back());
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < a.x_rescaled.size(); ++i) {
    const double y = a.x_rescaled[i];
    if (y < lo || y > hi) continue;
    diff += std::abs(a.eps_rho[i] - interpolate(b.x_rescaled, b.eps_rho, y));
    norm += std::abs(a.eps_rho[i]);
  }
  return norm > 0.0 ? diff / norm : 0.0;
}

SelfSimilarSeries self_similar_profile(std::span<const std::vector<double>> history,
                                       std::span<const double> times, const SpatialGrid1D& grid) {
  if (history.size() != times.size()) throw std::invalid_argument("self_similar_profile: size mismatch");
  SelfSimilarSeries out;
  const auto xs = grid.centers();
  for (std::size_t n = 0; n < history.size(); ++n) {
    const double big_r = std::sqrt(1.0 + 2.0 * times[n]);
    std::vector<double> profile(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = big_r * xs[i];
      const double value = (x < xs.front() || x > xs.back()) ? 0.0 : interpolate(xs, history[n], x);
      profile[i] = big_r * value;
    }
    out.tau.push_back(std::log(big_r));
    out.profiles.push_back(std::move(profile));
  }
  if (!out.profiles.empty()) {
    const auto& last = out.profiles.back();
    for (const auto& p : out.profiles) out.l1_to_final.push_back(density_l1_distance(p, last, grid.dx()));
  }
  return out;
}

}  // namespace apchemo
