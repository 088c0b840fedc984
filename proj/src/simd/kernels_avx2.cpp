// Compiled with -mavx2 only; selected at runtime after a CPU feature check.

#include <immintrin.h>

#include "apchemo/simd/kernels.hpp"

namespace apchemo::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline __m256d vminmod(__m256d a, __m256d b) {
  const __m256d positive = _mm256_cmp_pd(_mm256_mul_pd(a, b), _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d a_smaller = _mm256_cmp_pd(vabs(a), vabs(b), _CMP_LT_OQ);
  return _mm256_and_pd(positive, _mm256_blendv_pd(b, a, a_smaller));
}

inline __m256d vslope(__m256d forward, __m256d backward, Limiter limiter, bool right_going) {
  switch (limiter) {
    case Limiter::none:
      return _mm256_setzero_pd();
    case Limiter::minmod:
      return vminmod(forward, backward);
    case Limiter::lax_wendroff:
      return right_going ? forward : backward;
  }
  return _mm256_setzero_pd();
}

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }

void transport_row(const double* r, const double* j, double* r_out, double* j_out, std::size_t n,
                   double nu, Limiter limiter) {
  const __m256d half = _mm256_set1_pd(0.5 * nu);
  const __m256d corr = _mm256_set1_pd(0.25 * nu * (1.0 - nu));
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const std::size_t p = i + 2;
    const __m256d r_m2 = ld(r + p - 2), r_m1 = ld(r + p - 1), r_0 = ld(r + p);
    const __m256d r_p1 = ld(r + p + 1), r_p2 = ld(r + p + 2);
    const __m256d j_m2 = ld(j + p - 2), j_m1 = ld(j + p - 1), j_0 = ld(j + p);
    const __m256d j_p1 = ld(j + p + 1), j_p2 = ld(j + p + 2);
    const __m256d up_m2 = _mm256_add_pd(r_m2, j_m2);
    const __m256d up_m1 = _mm256_add_pd(r_m1, j_m1);
    const __m256d up_0 = _mm256_add_pd(r_0, j_0);
    const __m256d up_p1 = _mm256_add_pd(r_p1, j_p1);
    const __m256d um_m1 = _mm256_sub_pd(r_m1, j_m1);
    const __m256d um_0 = _mm256_sub_pd(r_0, j_0);
    const __m256d um_p1 = _mm256_sub_pd(r_p1, j_p1);
    const __m256d um_p2 = _mm256_sub_pd(r_p2, j_p2);
    const __m256d sp_i =
        vslope(_mm256_sub_pd(up_p1, up_0), _mm256_sub_pd(up_0, up_m1), limiter, true);
    const __m256d sp_im1 =
        vslope(_mm256_sub_pd(up_0, up_m1), _mm256_sub_pd(up_m1, up_m2), limiter, true);
    const __m256d sm_ip1 =
        vslope(_mm256_sub_pd(um_p2, um_p1), _mm256_sub_pd(um_p1, um_0), limiter, false);
    const __m256d sm_i =
        vslope(_mm256_sub_pd(um_p1, um_0), _mm256_sub_pd(um_0, um_m1), limiter, false);
    const __m256d dp = _mm256_sub_pd(sp_i, sp_im1);
    const __m256d dm = _mm256_sub_pd(sm_ip1, sm_i);
    const __m256d dj = _mm256_sub_pd(j_p1, j_m1);
    const __m256d dr = _mm256_sub_pd(r_p1, r_m1);
    const __m256d d2r = _mm256_add_pd(_mm256_sub_pd(r_p1, _mm256_mul_pd(two, r_0)), r_m1);
    const __m256d d2j = _mm256_add_pd(_mm256_sub_pd(j_p1, _mm256_mul_pd(two, j_0)), j_m1);
    __m256d ro = _mm256_sub_pd(r_0, _mm256_mul_pd(half, dj));
    ro = _mm256_add_pd(ro, _mm256_mul_pd(half, d2r));
    ro = _mm256_sub_pd(ro, _mm256_mul_pd(corr, _mm256_add_pd(dp, dm)));
    __m256d jo = _mm256_sub_pd(j_0, _mm256_mul_pd(half, dr));
    jo = _mm256_add_pd(jo, _mm256_mul_pd(half, d2j));
    jo = _mm256_sub_pd(jo, _mm256_mul_pd(corr, _mm256_sub_pd(dp, dm)));
    _mm256_storeu_pd(r_out + i, ro);
    _mm256_storeu_pd(j_out + i, jo);
  }
  if (i < n) scalar_kernels().transport_row(r + i, j + i, r_out + i, j_out + i, n - i, nu, limiter);
}

void implicit_even(const double* r, const double* gain, const double* rho, const double* loss,
                   double* out, std::size_t n, double e2, double dt) {
  const __m256d ve2 = _mm256_set1_pd(e2);
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d num = _mm256_add_pd(_mm256_mul_pd(ve2, ld(r + i)),
                                      _mm256_mul_pd(vdt, _mm256_mul_pd(ld(gain + i), ld(rho + i))));
    const __m256d den = _mm256_add_pd(ve2, _mm256_mul_pd(vdt, ld(loss + i)));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  if (i < n) scalar_kernels().implicit_even(r + i, gain + i, rho + i, loss + i, out + i, n - i, e2, dt);
}

void implicit_odd(const double* j, const double* gain_odd, const double* rho, const double* loss,
                  const double* rs, double* out, std::size_t n, double e2, double dt, double c) {
  const __m256d ve2 = _mm256_set1_pd(e2);
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d drift = _mm256_add_pd(_mm256_mul_pd(ld(gain_odd + i), ld(rho + i)),
                                        _mm256_mul_pd(vc, _mm256_sub_pd(ld(rs + i + 2), ld(rs + i))));
    const __m256d num = _mm256_add_pd(_mm256_mul_pd(ve2, ld(j + i)), _mm256_mul_pd(vdt, drift));
    const __m256d den = _mm256_add_pd(ve2, _mm256_mul_pd(vdt, ld(loss + i)));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  if (i < n) {
    scalar_kernels().implicit_odd(j + i, gain_odd + i, rho + i, loss + i, rs + i, out + i, n - i, e2,
                                  dt, c);
  }
}

void exact_even(const double* r, const double* gain, const double* rho, const double* loss,
                const double* lam, double* r_out, double* eq_out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d l = ld(lam + i);
    const __m256d eq = _mm256_div_pd(_mm256_mul_pd(ld(gain + i), ld(rho + i)), ld(loss + i));
    const __m256d oml = _mm256_sub_pd(one, l);
    _mm256_storeu_pd(r_out + i, _mm256_add_pd(_mm256_mul_pd(l, ld(r + i)), _mm256_mul_pd(oml, eq)));
    _mm256_storeu_pd(eq_out + i, eq);
  }
  if (i < n) {
    scalar_kernels().exact_even(r + i, gain + i, rho + i, loss + i, lam + i, r_out + i, eq_out + i,
                                n - i);
  }
}

void exact_odd(const double* j, const double* gain_odd, const double* rho, const double* loss,
               const double* lam, const double* r_pad, const double* eq_pad, const double* w_plus,
               const double* w_minus, const double* w_zero, double* out, std::size_t n, double c) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d l = ld(lam + i);
    const __m256d eq = _mm256_div_pd(_mm256_mul_pd(ld(gain_odd + i), ld(rho + i)), ld(loss + i));
    const __m256d wp = ld(w_plus + i);
    const __m256d wm = ld(w_minus + i);
    const __m256d w0 = ld(w_zero + i);
    const __m256d up = _mm256_add_pd(_mm256_mul_pd(ld(r_pad + i + 2), wp),
                                     _mm256_mul_pd(ld(eq_pad + i + 2), _mm256_sub_pd(w0, wp)));
    const __m256d dn = _mm256_add_pd(_mm256_mul_pd(ld(r_pad + i), wm),
                                     _mm256_mul_pd(ld(eq_pad + i), _mm256_sub_pd(w0, wm)));
    const __m256d relax =
        _mm256_add_pd(_mm256_mul_pd(l, ld(j + i)), _mm256_mul_pd(_mm256_sub_pd(one, l), eq));
    _mm256_storeu_pd(out + i, _mm256_add_pd(relax, _mm256_mul_pd(vc, _mm256_sub_pd(up, dn))));
  }
  if (i < n) {
    scalar_kernels().exact_odd(j + i, gain_odd + i, rho + i, loss + i, lam + i, r_pad + i,
                               eq_pad + i, w_plus + i, w_minus + i, w_zero + i, out + i, n - i, c);
  }
}

void axpy(double* acc, const double* x, std::size_t n, double w) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(acc + i, _mm256_add_pd(ld(acc + i), _mm256_mul_pd(vw, ld(x + i))));
  }
  if (i < n) scalar_kernels().axpy(acc + i, x + i, n - i, w);
}

void polar_row(const double* p, const double* p_next, const double* inv_r, double* out,
               std::size_t n, double alpha_c, bool outgoing, double beta_lo, double beta_hi) {
  const __m256d va = _mm256_set1_pd(alpha_c);
  const __m256d vlo = _mm256_set1_pd(beta_lo);
  const __m256d vhi = _mm256_set1_pd(beta_hi);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const std::size_t q = i + 1;
    const __m256d here = ld(p + q);
    const __m256d flux_diff = outgoing ? _mm256_sub_pd(here, ld(p + q - 1))
                                       : _mm256_sub_pd(ld(p + q + 1), here);
    const __m256d next = p_next != nullptr ? _mm256_mul_pd(vhi, ld(p_next + i)) : _mm256_setzero_pd();
    const __m256d angular = _mm256_sub_pd(_mm256_mul_pd(vlo, here), next);
    __m256d o = _mm256_sub_pd(here, _mm256_mul_pd(va, flux_diff));
    o = _mm256_sub_pd(o, _mm256_mul_pd(ld(inv_r + i), angular));
    _mm256_storeu_pd(out + i, o);
  }
  if (i < n) {
    scalar_kernels().polar_row(p + i, p_next != nullptr ? p_next + i : nullptr, inv_r + i, out + i,
                               n - i, alpha_c, outgoing, beta_lo, beta_hi);
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2",      &transport_row, &implicit_even, &implicit_odd,
                                 &exact_even, &exact_odd,     &axpy,          &polar_row};
  return table;
}

}  // namespace apchemo::simd
