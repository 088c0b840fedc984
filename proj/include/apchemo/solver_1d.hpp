#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "apchemo/chemo_field.hpp"
#include "apchemo/field.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kinetic_state.hpp"

namespace apchemo {

enum class KineticModel { nonlocal, local };

enum class TransportScheme { upwind, lax_wendroff, tvd_minmod };

enum class DtPolicy {
  ap_max,        ///< max{eps dx / (2 v_max), dx^2 / 2}
  hyperbolic_half,  ///< eps dx / (2 v_max)
  hyperbolic,       ///< eps dx / v_max
  parabolic,        ///< dx^2 / 2
  fixed,            ///< SchemeConfig::dt_fixed
};

struct SchemeConfig {
  int order = 2;
  KineticModel model = KineticModel::nonlocal;
  /// Ignored for order 1, which always upwinds.
  TransportScheme transport = TransportScheme::tvd_minmod;
  DtPolicy dt_policy = DtPolicy::ap_max;
  double dt_fixed = 0.0;
  bool cfl_check = true;
};

class CflViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double time_step(const SchemeConfig& config, const SpatialGrid1D& grid, const VelocityGrid1D& vgrid,
                 double eps);

/// Frozen collision coefficients T_eps pieces on (v_k, x_i).
///
/// The normalisation 2 sum_k w_k gain_even = loss holds exactly, so the
/// source steps leave rho unchanged to round-off.
struct SourceCoefficients {
  Field2D gain_even;
  Field2D gain_odd;
  std::vector<double> loss;
  double c1 = 0.0;
};

SourceCoefficients source_coefficients(const ChemoField& chemo, const VelocityGrid1D& vgrid,
                                       double eps, KineticModel model);

/// Implicit Euler on the stiff source over dt with rho, S frozen.
void source_step_first_order(KineticState1D& state, const SourceCoefficients& coeffs,
                             std::span<const double> rho, const VelocityGrid1D& vgrid, double dt);

/// Exact-in-time solve of the stiff source over `tau` (half a step in the
/// Strang scheme).
void source_step_exact(KineticState1D& state, const SourceCoefficients& coeffs,
                       std::span<const double> rho, const VelocityGrid1D& vgrid, double tau);

/// Explicit transport over dt with reflecting walls (j odd, r even ghosts).
void transport_step(KineticState1D& state, const VelocityGrid1D& vgrid, double dt,
                    TransportScheme scheme, bool cfl_check = true);

inline void transport_step_upwind(KineticState1D& state, const VelocityGrid1D& vgrid, double dt) {
  transport_step(state, vgrid, dt, TransportScheme::upwind);
}
inline void transport_step_tvd(KineticState1D& state, const VelocityGrid1D& vgrid, double dt) {
  transport_step(state, vgrid, dt, TransportScheme::tvd_minmod);
}

ChemoField build_chemo(const KineticState1D& state, const VelocityGrid1D& vgrid, KineticModel model);

/// One time step of length dt. `chemo` must be built from the current state
/// and is rebuilt from the new density on return.
void advance(KineticState1D& state, ChemoField& chemo, const VelocityGrid1D& vgrid,
             const SchemeConfig& config, double dt);

}  // namespace apchemo
