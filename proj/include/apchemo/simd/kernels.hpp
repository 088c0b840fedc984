#pragma once

// Data-parallel inner loops of the kinetic solvers.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. Both evaluate the same expression trees in the same order, so the
// variants agree bit for bit (the build disables FP contraction). The active
// table is chosen once at startup from the CPU features; setting
// APCHEMO_SIMD=scalar forces the reference path.

#include <cstddef>

namespace apchemo::simd {

enum class Limiter { none, minmod, lax_wendroff };

struct KernelTable {
  const char* name;

  /// One velocity row of the parity transport r_t + v j_x = 0, j_t + v r_x = 0
  /// in characteristic form. `r_pad`/`j_pad` hold n cells plus two ghosts on
  /// each side; nu = v dt / dx.
  void (*transport_row)(const double* r_pad, const double* j_pad, double* r_out, double* j_out,
                        std::size_t n, double nu, Limiter limiter);

  /// r* = (e2 r + dt g rho) / (e2 + dt L).
  void (*implicit_even)(const double* r, const double* gain, const double* rho,
                        const double* loss, double* out, std::size_t n, double e2, double dt);

  /// j* = (e2 j + dt (go rho + c (r*_{i+1} - r*_{i-1}))) / (e2 + dt L);
  /// `rstar_pad` carries one ghost per side.
  void (*implicit_odd)(const double* j, const double* gain_odd, const double* rho,
                       const double* loss, const double* rstar_pad, double* out, std::size_t n,
                       double e2, double dt, double c);

  /// Exact relaxation of the even part over tau with lam = exp(-tau L / e2):
  /// r* = lam r + (1 - lam) eq, eq = g rho / L (also returned).
  void (*exact_even)(const double* r, const double* gain, const double* rho, const double* loss,
                     const double* lam, double* r_out, double* eq_out, std::size_t n);

  /// j* = lam j + (1 - lam) go rho / L + c (I+ - I-), where
  /// I+- = r_{i+-1} w+- + eq_{i+-1} (w0 - w+-) is the time integral of the
  /// neighbour's relaxing r against this cell's decay. `r_pad` and `eq_pad`
  /// carry one ghost per side.
  void (*exact_odd)(const double* j, const double* gain_odd, const double* rho,
                    const double* loss, const double* lam, const double* r_pad,
                    const double* eq_pad, const double* w_plus, const double* w_minus,
                    const double* w_zero, double* out, std::size_t n, double c);

  /// acc += w x.
  void (*axpy)(double* acc, const double* x, std::size_t n, double w);

  /// One theta row of the donor-cell polar transport for a single omega:
  /// out = p - alpha_c (F_{i+1/2} - F_{i-1/2}) - inv_r (beta_lo p - beta_hi p_next).
  /// Radial donor is the left cell when `outgoing`, else the right one.
  /// `p_pad` has one ghost per side; `p_next` may be null when beta_hi == 0.
  void (*polar_row)(const double* p_pad, const double* p_next, const double* inv_r, double* out,
                    std::size_t n, double alpha_c, bool outgoing, double beta_lo, double beta_hi);
};

const KernelTable& scalar_kernels();
/// Null when the CPU (or the build) lacks AVX2.
const KernelTable* avx2_kernels();
/// Table selected for this process.
const KernelTable& active_kernels();

}  // namespace apchemo::simd
