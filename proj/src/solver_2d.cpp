#include "apchemo/solver_2d.hpp"

#include <cmath>
#include <string>

#include "apchemo/chemo_field.hpp"
#include "apchemo/simd/kernels.hpp"
#include "apchemo/solver_1d.hpp"

namespace apchemo {

double c2_quadrature(const PolarGrid2D& grid) {
  double omega_part = 0.0;
  for (std::size_t k = 0; k < grid.n_omega(); ++k) omega_part += grid.omega_cell_moment(k, 2);
  double theta_part = 0.0;
  for (std::size_t j = 0; j < grid.n_theta(); ++j) theta_part += grid.theta_cell_abs_cos(j);
  return omega_part * theta_part;
}

RadialSourceCoefficients radial_source_coefficients(const PolarGrid2D& grid,
                                                    std::span<const double> rho_tilde) {
  RadialSourceCoefficients c;
  c.equilibrium = grid.equilibrium();
  c.c2 = c2_quadrature(grid);
  double nodal = 0.0;
  for (std::size_t k = 0; k < grid.n_omega(); ++k) {
    for (std::size_t j = 0; j < grid.n_theta(); ++j) {
      nodal += grid.omega(k) * grid.omega(k) * std::abs(std::cos(grid.theta(j)));
    }
  }
  nodal *= grid.domega() * grid.dtheta();
  c.drift_scale = c.c2 / nodal;
  c.grad_s = grad_s_radial(rho_tilde, grid);
  return c;
}

namespace {

// A[R] = d_r(cos theta R) - d_theta(sin theta R / r) by central differences
// with the axis, theta-wall and outer ghosts of the symmetric problem.
void streaming_operator(const Field3D& r_part, const PolarGrid2D& g, std::size_t k, Field2D& out) {
  const std::size_t n = g.n_r();
  const std::size_t m = g.n_theta();
  for (std::size_t j = 0; j < m; ++j) {
    const double cos_t = std::cos(g.theta(j));
    const auto row = r_part.row(k, j);
    const auto axis_row = r_part.row(k, g.mirror_theta(j));
    const bool has_lo = j > 0;
    const bool has_hi = j + 1 < m;
    const auto lo = r_part.row(k, has_lo ? j - 1 : j);
    const auto hi = r_part.row(k, has_hi ? j + 1 : j);
    const double sin_lo = has_lo ? std::sin(g.theta(j - 1)) : -std::sin(g.theta(j));
    const double sin_hi = has_hi ? std::sin(g.theta(j + 1)) : -std::sin(g.theta(j));
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? row[i - 1] : axis_row[0];
      const double right = i + 1 < n ? row[i + 1] : row[n - 1];
      const double dr_term = cos_t * (right - left) / (2.0 * g.dr());
      const double dt_term = (sin_hi * hi[i] - sin_lo * lo[i]) / (2.0 * g.dtheta() * g.r(i));
      out(j, i) = dr_term - dt_term;
    }
  }
}

}  // namespace

void radial_source_step(RadialState2D& state, const RadialSourceCoefficients& coeffs,
                        std::span<const double> rho_tilde, double dt) {
  const PolarGrid2D& g = state.grid;
  const double eps = state.eps;
  const double e2 = eps * eps;
  const std::size_t n = g.n_r();
  Field2D stream(g.n_theta(), n);
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    const double omega = g.omega(k);
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double cos_t = std::cos(g.theta(j));
      auto rr = state.r_part.row(k, j);
      for (std::size_t i = 0; i < n; ++i) {
        const double abs_grad = std::abs(coeffs.grad_s[i]);
        const double denom = 1.0 / dt + 1.0 / e2 + coeffs.c2 * abs_grad / eps;
        const double drift = coeffs.drift_scale * 0.5 * omega * std::abs(cos_t) * abs_grad * rho_tilde[i];
        rr[i] = (rr[i] / dt + rho_tilde[i] * coeffs.equilibrium / e2 + drift / eps) / denom;
      }
    }
    // The streaming correction vanishes identically for eps = 1.
    const double stream_factor = 1.0 - 1.0 / e2;
    if (stream_factor != 0.0) streaming_operator(state.r_part, g, k, stream);
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      const double cos_t = std::cos(g.theta(j));
      auto jj = state.j_part.row(k, j);
      for (std::size_t i = 0; i < n; ++i) {
        const double abs_grad = std::abs(coeffs.grad_s[i]);
        const double denom = 1.0 / dt + 1.0 / e2 + coeffs.c2 * abs_grad / eps;
        const double drift = omega * rho_tilde[i] * cos_t * coeffs.grad_s[i] / (2.0 * e2);
        const double streaming = stream_factor != 0.0 ? stream_factor * omega * stream(j, i) : 0.0;
        jj[i] = (jj[i] / dt + drift + streaming) / denom;
      }
    }
  }
}

double radial_cfl_number(const PolarGrid2D& grid, double dt) {
  return grid.v_max() * dt * (1.0 / grid.dr() + 1.0 / (grid.r(0) * grid.dtheta()));
}

double radial_time_step(const PolarGrid2D& grid, double cfl) {
  return cfl / radial_cfl_number(grid, 1.0);
}

namespace {

// Advance one omega slice of a P-type unknown (stored theta-major) in place.
void polar_transport_slice(std::vector<double>& p, const PolarGrid2D& g, double omega, double dt,
                           const std::vector<double>& inv_r) {
  const auto& kern = simd::active_kernels();
  const std::size_t n = g.n_r();
  const std::size_t m = g.n_theta();
  const double alpha = omega * dt / g.dr();
  const double beta = omega * dt / g.dtheta();
  std::vector<double> out(p.size());
  std::vector<double> pad(n + 2);
  for (std::size_t j = 0; j < m; ++j) {
    const double* row = p.data() + j * n;
    const bool outgoing = j < m / 2;
    std::copy(row, row + n, pad.begin() + 1);
    // Axis reflection: what leaves in direction pi - theta re-enters in theta.
    pad[0] = p[g.mirror_theta(j) * n];
    pad[n + 1] = row[n - 1];
    const double beta_lo = beta * std::sin(static_cast<double>(j) * g.dtheta());
    const bool last = j + 1 == m;
    const double beta_hi = last ? 0.0 : beta * std::sin(static_cast<double>(j + 1) * g.dtheta());
    const double* next = last ? nullptr : p.data() + (j + 1) * n;
    kern.polar_row(pad.data(), next, inv_r.data(), out.data() + j * n, n,
                   alpha * std::cos(g.theta(j)), outgoing, beta_lo, beta_hi);
  }
  p.swap(out);
}

}  // namespace

void radial_transport_step(RadialState2D& state, double dt, bool cfl_check) {
  const PolarGrid2D& g = state.grid;
  const double cfl = radial_cfl_number(g, dt);
  if (cfl_check && cfl > 1.0) {
    throw CflViolation("radial transport: CFL number " + std::to_string(cfl) + " exceeds 1");
  }
  const std::size_t n = g.n_r();
  const std::size_t m = g.n_theta();
  std::vector<double> inv_r(n);
  for (std::size_t i = 0; i < n; ++i) inv_r[i] = 1.0 / g.r(i);
  std::vector<double> p(m * n);
  std::vector<double> q_hat(m * n);
  for (std::size_t k = 0; k < g.n_omega(); ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto rr = state.r_part.row(k, j);
      const auto jj = state.j_part.row(k, j);
      const std::size_t jm = g.mirror_theta(j);
      for (std::size_t i = 0; i < n; ++i) {
        p[j * n + i] = 0.5 * (rr[i] + jj[i]);
        // Q obeys the P equation after theta -> pi - theta.
        q_hat[jm * n + i] = 0.5 * (rr[i] - jj[i]);
      }
    }
    polar_transport_slice(p, g, g.omega(k), dt, inv_r);
    polar_transport_slice(q_hat, g, g.omega(k), dt, inv_r);
    for (std::size_t j = 0; j < m; ++j) {
      auto rr = state.r_part.row(k, j);
      auto jj = state.j_part.row(k, j);
      const std::size_t jm = g.mirror_theta(j);
      for (std::size_t i = 0; i < n; ++i) {
        const double pv = p[j * n + i];
        const double qv = q_hat[jm * n + i];
        rr[i] = pv + qv;
        jj[i] = pv - qv;
      }
    }
  }
}

std::vector<double> radial_rho(std::span<const double> rho_tilde, const PolarGrid2D& grid) {
  std::vector<double> rho(rho_tilde.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = rho_tilde[i] / grid.r(i);
  return rho;
}

void radial_advance(RadialState2D& state, double dt, bool cfl_check) {
  const auto rho_tilde = density_2d(state);
  const auto coeffs = radial_source_coefficients(state.grid, rho_tilde);
  radial_source_step(state, coeffs, rho_tilde, dt);
  radial_transport_step(state, dt, cfl_check);
  state.time += dt;
}

}  // namespace apchemo
