#pragma once

#include <cstddef>
#include <optional>

#include "apchemo/chemo_field.hpp"
#include "apchemo/kinetic_state.hpp"

namespace apchemo {

/// Refinement trigger state: refine when ||dS/dx||_inf reaches twice the
/// value recorded at the last refinement (or at t = 0).
struct AdaptiveController {
  double s_ref = 0.0;
  std::size_t max_levels = 4;
  std::size_t levels = 0;
};

struct RefinementEvent {
  double time = 0.0;
  std::size_t step = 0;
  std::size_t old_n_x = 0;
  std::size_t new_n_x = 0;
  double grad_s = 0.0;
};

enum class AdaptOutcome { unchanged, refined, cap_reached };

AdaptiveController make_controller(const ChemoField& initial, std::size_t max_levels);

/// Linear interpolation onto the doubled grid: even parts mirror at the
/// walls, odd parts antimirror. The result is rescaled so that the density
/// integral matches `target_mass` exactly.
KineticState1D refine_state(const KineticState1D& state, const VelocityGrid1D& vgrid,
                            double target_mass);

/// Applies the trigger. On refinement the state is replaced, `dt` halved
/// and `event` filled; the caller rebuilds the chemoattractant.
AdaptOutcome adapt_if_needed(AdaptiveController& controller, KineticState1D& state,
                             const ChemoField& chemo, const VelocityGrid1D& vgrid, double& dt,
                             std::size_t step, RefinementEvent* event = nullptr);

}  // namespace apchemo
