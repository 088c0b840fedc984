#include "apchemo/chemo_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "apchemo/fft.hpp"

namespace apchemo {
namespace {

using cplx = std::complex<double>;

}  // namespace

double log_kernel_cell_average(long offset, double dx) {
  const double m = std::abs(static_cast<double>(offset));
  if (m == 0.0) return std::log(0.5 * dx) - 1.0;
  // (m+1/2) log(m+1/2) - (m-1/2) log(m-1/2) - 1, arranged to avoid cancellation.
  const double lo = m - 0.5;
  return std::log(dx) + m * std::log1p(1.0 / lo) + 0.5 * std::log(lo * (m + 0.5)) - 1.0;
}

ConvolutionResult convolve_log(std::span<const double> rho, const SpatialGrid1D& grid, int dimension) {
  const std::size_t n = grid.n_x();
  if (rho.size() != n) throw std::invalid_argument("convolve_log: size mismatch");
  if (dimension < 1) throw std::invalid_argument("convolve_log: dimension must be positive");
  const std::size_t m = 2 * n;
  const double dx = grid.dx();

  RealFft& fft = RealFft::cached(m);
  std::vector<cplx> kernel_hat(fft.spectrum_size());
  {
    auto buf = fft.real();
    for (std::size_t q = 0; q < m; ++q) {
      // Offset n is never used by an in-grid pair.
      const long d = q <= n ? static_cast<long>(q) : static_cast<long>(q) - static_cast<long>(m);
      buf[q] = log_kernel_cell_average(d, dx);
    }
    fft.forward();
    std::copy(fft.spectrum().begin(), fft.spectrum().end(), kernel_hat.begin());
  }

  auto buf = fft.real();
  std::copy(rho.begin(), rho.end(), buf.begin());
  std::fill(buf.begin() + static_cast<std::ptrdiff_t>(n), buf.end(), 0.0);
  fft.forward();
  auto spec = fft.spectrum();
  for (std::size_t q = 0; q < spec.size(); ++q) spec[q] *= kernel_hat[q];
  fft.inverse();

  const double scale = -dx / (static_cast<double>(dimension) * std::numbers::pi * static_cast<double>(m));
  ConvolutionResult out;
  out.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.s[i] = scale * buf[i];

  double peak = 0.0;
  for (double v : rho) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(rho.front()), std::abs(rho.back()));
  out.boundary_mass_warning = peak > 0.0 && edge > 1e-12 * peak;
  return out;
}

MirrorInterpolator::MirrorInterpolator(std::span<const double> values, const SpatialGrid1D& grid)
    : grid_(grid) {
  const std::size_t n = grid.n_x();
  if (values.size() != n) throw std::invalid_argument("interpolator: size mismatch");
  RealFft& fft = RealFft::cached(2 * n);
  auto buf = fft.real();
  for (std::size_t i = 0; i < n; ++i) {
    buf[i] = values[i];
    buf[2 * n - 1 - i] = values[i];
  }
  fft.forward();
  spectrum_.assign(fft.spectrum().begin(), fft.spectrum().end());
}

void MirrorInterpolator::shifted(double shift, std::span<double> out) const {
  const std::size_t n = grid_.n_x();
  const std::size_t m = 2 * n;
  RealFft& fft = RealFft::cached(m);
  auto spec = fft.spectrum();
  const double phase = 2.0 * std::numbers::pi * (shift / grid_.dx()) / static_cast<double>(m);
  for (std::size_t q = 0; q < n; ++q) {
    const double a = phase * static_cast<double>(q);
    spec[q] = spectrum_[q] * cplx(std::cos(a), std::sin(a));
  }
  // Nyquist mode: (-1)^m cos(pi phi) keeps the interpolant real.
  spec[n] = spectrum_[n] * std::cos(std::numbers::pi * shift / grid_.dx());
  fft.inverse();
  const auto buf = fft.real();
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i] * inv;
}

double MirrorInterpolator::evaluate(double x) const {
  const std::size_t n = grid_.n_x();
  const std::size_t m = 2 * n;
  const double pos = (x - grid_.center(0)) / grid_.dx();
  double sum = spectrum_[0].real();
  for (std::size_t q = 1; q < n; ++q) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(q) * pos / static_cast<double>(m);
    sum += 2.0 * (spectrum_[q] * cplx(std::cos(a), std::sin(a))).real();
  }
  sum += spectrum_[n].real() * std::cos(std::numbers::pi * pos);
  return sum / static_cast<double>(m);
}

ShiftTables shift_tables(std::span<const double> s, const SpatialGrid1D& grid,
                         const VelocityGrid1D& vgrid, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("shift_tables: eps must be positive");
  if (eps * vgrid.v_max() >= grid.length()) {
    throw std::invalid_argument("shift_tables: eps * v_max exceeds the mirror extension");
  }
  const std::size_t n = grid.n_x();
  const std::size_t nv = vgrid.n_half();
  MirrorInterpolator interp(s, grid);
  ShiftTables t{Field2D(nv, n), Field2D(nv, n), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < nv; ++k) {
    const double shift = eps * vgrid.node(k);
    auto plus = t.plus.row(k);
    auto minus = t.minus.row(k);
    interp.shifted(shift, plus);
    interp.shifted(-shift, minus);
    for (std::size_t i = 0; i < n; ++i) {
      plus[i] = std::max(plus[i] - s[i], 0.0);
      minus[i] = std::max(minus[i] - s[i], 0.0);
    }
  }
  // Nodes -v_{n-1} .. -v_0, v_0 .. v_{n-1} are uniformly spaced by dv.
  const double dv = vgrid.dv();
  for (std::size_t k = 0; k < nv; ++k) {
    const double w = vgrid.weight(k);
    const double trap = (k + 1 == nv) ? 0.5 * dv : dv;
    const auto plus = t.plus.row(k);
    const auto minus = t.minus.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double both = plus[i] + minus[i];
      t.bracket[i] += trap * both;
      t.midpoint_bracket[i] += w * both;
    }
  }
  return t;
}

std::vector<double> grad_s_1d(std::span<const double> s, const SpatialGrid1D& grid) {
  const std::size_t n = grid.n_x();
  if (s.size() != n) throw std::invalid_argument("grad_s_1d: size mismatch");
  std::vector<double> g(n, 0.0);
  const double inv = 1.0 / (2.0 * grid.dx());
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (s[i + 1] - s[i - 1]) * inv;
  return g;
}

std::vector<double> grad_s_radial(std::span<const double> rho_tilde, const PolarGrid2D& grid) {
  const std::size_t n = grid.n_r();
  if (rho_tilde.size() != n) throw std::invalid_argument("grad_s_radial: size mismatch");
  std::vector<double> g(n);
  const double dr = grid.dr();
  double inside = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = -(inside + 0.5 * dr * rho_tilde[i]) / grid.r(i);
    inside += dr * rho_tilde[i];
  }
  return g;
}

double ChemoField::linf_grad_s() const {
  double m = 0.0;
  for (double v : grad_s) m = std::max(m, std::abs(v));
  return m;
}

ChemoField build_chemo_1d(std::span<const double> rho, const SpatialGrid1D& grid,
                          const VelocityGrid1D& vgrid, double eps, bool with_shifts) {
  ChemoField c;
  auto conv = convolve_log(rho, grid, 1);
  c.s_values = std::move(conv.s);
  c.boundary_mass_warning = conv.boundary_mass_warning;
  c.grad_s = grad_s_1d(c.s_values, grid);
  if (with_shifts) c.shifts = shift_tables(c.s_values, grid, vgrid, eps);
  return c;
}

}  // namespace apchemo
