#include "apchemo/solver_1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apchemo/simd/kernels.hpp"

namespace apchemo {
namespace {

// One mirrored ghost per side (even extension).
std::vector<double> pad_even_1(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> p(n + 2);
  std::copy(v.begin(), v.end(), p.begin() + 1);
  p[0] = v[0];
  p[n + 1] = v[n - 1];
  return p;
}

// int_0^tau exp(-a (tau - s)) exp(-b s) ds without overflow for large rates.
double decay_overlap(double a, double b, double tau) {
  const double d = std::abs(a - b) * tau;
  const double shape = d > 0.0 ? -std::expm1(-d) / d : 1.0;
  return tau * std::exp(-std::min(a, b) * tau) * shape;
}

// Two ghosts per side; sign = +1 mirrors, -1 antimirrors.
void pad_2(std::span<const double> v, double sign, std::vector<double>& p) {
  const std::size_t n = v.size();
  p.resize(n + 4);
  std::copy(v.begin(), v.end(), p.begin() + 2);
  p[1] = sign * v[0];
  p[0] = sign * v[1];
  p[n + 2] = sign * v[n - 1];
  p[n + 3] = sign * v[n - 2];
}

simd::Limiter limiter_for(TransportScheme scheme) {
  switch (scheme) {
    case TransportScheme::upwind:
      return simd::Limiter::none;
    case TransportScheme::lax_wendroff:
      return simd::Limiter::lax_wendroff;
    case TransportScheme::tvd_minmod:
      return simd::Limiter::minmod;
  }
  return simd::Limiter::none;
}

std::vector<double> density(const KineticState1D& state, const VelocityGrid1D& vgrid) {
  const auto& kern = simd::active_kernels();
  std::vector<double> rho(state.grid.n_x(), 0.0);
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    kern.axpy(rho.data(), state.r_part.row(k).data(), rho.size(), 2.0 * vgrid.weight(k));
  }
  return rho;
}

}  // namespace

double time_step(const SchemeConfig& config, const SpatialGrid1D& grid, const VelocityGrid1D& vgrid,
                 double eps) {
  const double dx = grid.dx();
  const double hyper = eps * dx / vgrid.v_max();
  const double para = 0.5 * dx * dx;
  switch (config.dt_policy) {
    case DtPolicy::ap_max:
      return std::max(0.5 * hyper, para);
    case DtPolicy::hyperbolic_half:
      return 0.5 * hyper;
    case DtPolicy::hyperbolic:
      return hyper;
    case DtPolicy::parabolic:
      return para;
    case DtPolicy::fixed:
      if (!(config.dt_fixed > 0.0)) throw std::invalid_argument("time_step: fixed dt must be positive");
      return config.dt_fixed;
  }
  return para;
}

SourceCoefficients source_coefficients(const ChemoField& chemo, const VelocityGrid1D& vgrid,
                                       double eps, KineticModel model) {
  const std::size_t n = chemo.s_values.size();
  const std::size_t nv = vgrid.n_half();
  const double f_eq = 1.0 / (2.0 * vgrid.v_max());
  SourceCoefficients c{Field2D(nv, n), Field2D(nv, n), std::vector<double>(n, 1.0), 0.0};
  for (std::size_t k = 0; k < nv; ++k) c.c1 += vgrid.weight(k) * vgrid.node(k);

  if (model == KineticModel::local) {
    for (std::size_t i = 0; i < n; ++i) c.loss[i] = 1.0 + c.c1 * eps * std::abs(chemo.grad_s[i]);
    for (std::size_t k = 0; k < nv; ++k) {
      const double v = vgrid.node(k);
      auto ge = c.gain_even.row(k);
      auto go = c.gain_odd.row(k);
      for (std::size_t i = 0; i < n; ++i) {
        ge[i] = f_eq + 0.5 * eps * std::abs(v * chemo.grad_s[i]);
        go[i] = 0.5 * v * chemo.grad_s[i];
      }
    }
    return c;
  }

  if (!chemo.has_shifts()) throw std::invalid_argument("source_coefficients: nonlocal model needs shift tables");
  const ShiftTables& t = chemo.shifts;
  // Rescale R[delta S] so its midpoint velocity integral matches the
  // trapezoidal bracket used in the loss.
  std::vector<double> scale(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    c.loss[i] = 1.0 + t.bracket[i];
    if (t.midpoint_bracket[i] > 0.0) scale[i] = t.bracket[i] / t.midpoint_bracket[i];
  }
  for (std::size_t k = 0; k < nv; ++k) {
    auto ge = c.gain_even.row(k);
    auto go = c.gain_odd.row(k);
    const auto plus = t.plus.row(k);
    const auto minus = t.minus.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      ge[i] = f_eq + scale[i] * 0.5 * (plus[i] + minus[i]);
      go[i] = (plus[i] - minus[i]) / (2.0 * eps);
    }
  }
  return c;
}

void source_step_first_order(KineticState1D& state, const SourceCoefficients& coeffs,
                             std::span<const double> rho, const VelocityGrid1D& vgrid, double dt) {
  if (!(state.eps > 0.0)) throw std::invalid_argument("source step: eps must be positive");
  const auto& kern = simd::active_kernels();
  const std::size_t n = state.grid.n_x();
  const double e2 = state.eps * state.eps;
  std::vector<double> r_new(n);
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    kern.implicit_even(state.r_part.row(k).data(), coeffs.gain_even.row(k).data(), rho.data(),
                       coeffs.loss.data(), r_new.data(), n, e2, dt);
    const auto r_pad = pad_even_1(r_new);
    const double c = (e2 - 1.0) * vgrid.node(k) / (2.0 * state.grid.dx());
    auto j_row = state.j_part.row(k);
    kern.implicit_odd(j_row.data(), coeffs.gain_odd.row(k).data(), rho.data(), coeffs.loss.data(),
                      r_pad.data(), j_row.data(), n, e2, dt, c);
    std::copy(r_new.begin(), r_new.end(), state.r_part.row(k).begin());
  }
}

void source_step_exact(KineticState1D& state, const SourceCoefficients& coeffs,
                       std::span<const double> rho, const VelocityGrid1D& vgrid, double tau) {
  if (!(state.eps > 0.0)) throw std::invalid_argument("source step: eps must be positive");
  const auto& kern = simd::active_kernels();
  const std::size_t n = state.grid.n_x();
  const double e2 = state.eps * state.eps;
  std::vector<double> lam(n);
  std::vector<double> w_plus(n);
  std::vector<double> w_minus(n);
  std::vector<double> w_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = coeffs.loss[i] / e2;
    lam[i] = std::exp(-tau * a);
    w_plus[i] = decay_overlap(a, coeffs.loss[i + 1 < n ? i + 1 : i] / e2, tau);
    w_minus[i] = decay_overlap(a, coeffs.loss[i > 0 ? i - 1 : i] / e2, tau);
    w_zero[i] = decay_overlap(a, 0.0, tau);
  }
  std::vector<double> r_new(n);
  std::vector<double> eq(n);
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    const auto r_row = state.r_part.row(k);
    kern.exact_even(r_row.data(), coeffs.gain_even.row(k).data(), rho.data(), coeffs.loss.data(),
                    lam.data(), r_new.data(), eq.data(), n);
    const auto r_pad = pad_even_1(r_row);
    const auto eq_pad = pad_even_1(eq);
    const double c = (1.0 - 1.0 / e2) * vgrid.node(k) / (2.0 * state.grid.dx());
    auto j_row = state.j_part.row(k);
    kern.exact_odd(j_row.data(), coeffs.gain_odd.row(k).data(), rho.data(), coeffs.loss.data(),
                   lam.data(), r_pad.data(), eq_pad.data(), w_plus.data(), w_minus.data(),
                   w_zero.data(), j_row.data(), n, c);
    std::copy(r_new.begin(), r_new.end(), r_row.begin());
  }
}

void transport_step(KineticState1D& state, const VelocityGrid1D& vgrid, double dt,
                    TransportScheme scheme, bool cfl_check) {
  const double dx = state.grid.dx();
  const double cfl = vgrid.v_max() * dt / dx;
  if (cfl_check && cfl > 1.0) {
    throw CflViolation("transport: CFL number " + std::to_string(cfl) + " exceeds 1");
  }
  const auto& kern = simd::active_kernels();
  const auto limiter = limiter_for(scheme);
  const std::size_t n = state.grid.n_x();
  std::vector<double> r_pad;
  std::vector<double> j_pad;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    auto r_row = state.r_part.row(k);
    auto j_row = state.j_part.row(k);
    pad_2(r_row, 1.0, r_pad);
    pad_2(j_row, -1.0, j_pad);
    kern.transport_row(r_pad.data(), j_pad.data(), r_row.data(), j_row.data(), n,
                       vgrid.node(k) * dt / dx, limiter);
  }
}

ChemoField build_chemo(const KineticState1D& state, const VelocityGrid1D& vgrid, KineticModel model) {
  const auto rho = density(state, vgrid);
  return build_chemo_1d(rho, state.grid, vgrid, state.eps, model == KineticModel::nonlocal);
}

void advance(KineticState1D& state, ChemoField& chemo, const VelocityGrid1D& vgrid,
             const SchemeConfig& config, double dt) {
  if (config.order != 1 && config.order != 2) throw std::invalid_argument("advance: order must be 1 or 2");
  if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
  auto rho = density(state, vgrid);
  auto coeffs = source_coefficients(chemo, vgrid, state.eps, config.model);
  if (config.order == 1) {
    source_step_first_order(state, coeffs, rho, vgrid, dt);
    transport_step(state, vgrid, dt, TransportScheme::upwind, config.cfl_check);
    chemo = build_chemo(state, vgrid, config.model);
  } else {
    source_step_exact(state, coeffs, rho, vgrid, 0.5 * dt);
    transport_step(state, vgrid, dt, config.transport, config.cfl_check);
    chemo = build_chemo(state, vgrid, config.model);
    rho = density(state, vgrid);
    coeffs = source_coefficients(chemo, vgrid, state.eps, config.model);
    source_step_exact(state, coeffs, rho, vgrid, 0.5 * dt);
  }
  state.time += dt;
}

}  // namespace apchemo
