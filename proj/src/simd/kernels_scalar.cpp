#include <cmath>

#include "apchemo/simd/kernels.hpp"

namespace apchemo::simd {
namespace {

inline double minmod(double a, double b) {
  if (a * b > 0.0) return std::abs(a) < std::abs(b) ? a : b;
  return 0.0;
}

inline double slope(double forward, double backward, Limiter limiter, bool right_going) {
  switch (limiter) {
    case Limiter::none:
      return 0.0;
    case Limiter::minmod:
      return minmod(forward, backward);
    case Limiter::lax_wendroff:
      return right_going ? forward : backward;
  }
  return 0.0;
}

void transport_row(const double* r, const double* j, double* r_out, double* j_out, std::size_t n,
                   double nu, Limiter limiter) {
  const double half = 0.5 * nu;
  const double corr = 0.25 * nu * (1.0 - nu);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = i + 2;
    const double up_m2 = r[p - 2] + j[p - 2];
    const double up_m1 = r[p - 1] + j[p - 1];
    const double up_0 = r[p] + j[p];
    const double up_p1 = r[p + 1] + j[p + 1];
    const double um_m1 = r[p - 1] - j[p - 1];
    const double um_0 = r[p] - j[p];
    const double um_p1 = r[p + 1] - j[p + 1];
    const double um_p2 = r[p + 2] - j[p + 2];
    const double sp_i = slope(up_p1 - up_0, up_0 - up_m1, limiter, true);
    const double sp_im1 = slope(up_0 - up_m1, up_m1 - up_m2, limiter, true);
    const double sm_ip1 = slope(um_p2 - um_p1, um_p1 - um_0, limiter, false);
    const double sm_i = slope(um_p1 - um_0, um_0 - um_m1, limiter, false);
    const double dp = sp_i - sp_im1;
    const double dm = sm_ip1 - sm_i;
    const double dj = j[p + 1] - j[p - 1];
    const double dr = r[p + 1] - r[p - 1];
    const double d2r = r[p + 1] - 2.0 * r[p] + r[p - 1];
    const double d2j = j[p + 1] - 2.0 * j[p] + j[p - 1];
    r_out[i] = r[p] - half * dj + half * d2r - corr * (dp + dm);
    j_out[i] = j[p] - half * dr + half * d2j - corr * (dp - dm);
  }
}

void implicit_even(const double* r, const double* gain, const double* rho, const double* loss,
                   double* out, std::size_t n, double e2, double dt) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (e2 * r[i] + dt * (gain[i] * rho[i])) / (e2 + dt * loss[i]);
  }
}

void implicit_odd(const double* j, const double* gain_odd, const double* rho, const double* loss,
                  const double* rs, double* out, std::size_t n, double e2, double dt, double c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double drift = gain_odd[i] * rho[i] + c * (rs[i + 2] - rs[i]);
    out[i] = (e2 * j[i] + dt * drift) / (e2 + dt * loss[i]);
  }
}

void exact_even(const double* r, const double* gain, const double* rho, const double* loss,
                const double* lam, double* r_out, double* eq_out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double eq = gain[i] * rho[i] / loss[i];
    r_out[i] = lam[i] * r[i] + (1.0 - lam[i]) * eq;
    eq_out[i] = eq;
  }
}

void exact_odd(const double* j, const double* gain_odd, const double* rho, const double* loss,
               const double* lam, const double* r_pad, const double* eq_pad, const double* w_plus,
               const double* w_minus, const double* w_zero, double* out, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double eq = gain_odd[i] * rho[i] / loss[i];
    const double up = r_pad[i + 2] * w_plus[i] + eq_pad[i + 2] * (w_zero[i] - w_plus[i]);
    const double dn = r_pad[i] * w_minus[i] + eq_pad[i] * (w_zero[i] - w_minus[i]);
    out[i] = (lam[i] * j[i] + (1.0 - lam[i]) * eq) + c * (up - dn);
  }
}

void axpy(double* acc, const double* x, std::size_t n, double w) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * x[i];
}

void polar_row(const double* p, const double* p_next, const double* inv_r, double* out,
               std::size_t n, double alpha_c, bool outgoing, double beta_lo, double beta_hi) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t q = i + 1;
    const double flux_diff = outgoing ? p[q] - p[q - 1] : p[q + 1] - p[q];
    const double next = p_next != nullptr ? beta_hi * p_next[i] : 0.0;
    const double angular = beta_lo * p[q] - next;
    out[i] = p[q] - alpha_c * flux_diff - inv_r[i] * angular;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",   &transport_row, &implicit_even, &implicit_odd,
                                 &exact_even, &exact_odd,    &axpy,          &polar_row};
  return table;
}

}  // namespace apchemo::simd
