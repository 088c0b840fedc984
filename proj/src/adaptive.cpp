#include "apchemo/adaptive.hpp"

namespace apchemo {

AdaptiveController make_controller(const ChemoField& initial, std::size_t max_levels) {
  AdaptiveController c;
  c.s_ref = initial.linf_grad_s();
  c.max_levels = max_levels;
  return c;
}

namespace {

// Fine cells 2i and 2i+1 sit a quarter coarse cell left and right of x_i.
void refine_row(std::span<const double> coarse, std::span<double> fine, double wall_sign) {
  const std::size_t n = coarse.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? coarse[i - 1] : wall_sign * coarse[0];
    const double right = i + 1 < n ? coarse[i + 1] : wall_sign * coarse[n - 1];
    fine[2 * i] = 0.75 * coarse[i] + 0.25 * left;
    fine[2 * i + 1] = 0.75 * coarse[i] + 0.25 * right;
  }
}

}  // namespace

KineticState1D refine_state(const KineticState1D& state, const VelocityGrid1D& vgrid,
                            double target_mass) {
  KineticState1D fine(state.grid.refined(), vgrid.n_half(), state.eps);
  fine.time = state.time;
  for (std::size_t k = 0; k < vgrid.n_half(); ++k) {
    refine_row(state.r_part.row(k), fine.r_part.row(k), 1.0);
    refine_row(state.j_part.row(k), fine.j_part.row(k), -1.0);
  }
  const double mass = total_mass_1d(density_1d(fine, vgrid), fine.grid);
  if (mass > 0.0) {
    const double scale = target_mass / mass;
    for (double& v : fine.r_part.values()) v *= scale;
    for (double& v : fine.j_part.values()) v *= scale;
  }
  return fine;
}

AdaptOutcome adapt_if_needed(AdaptiveController& controller, KineticState1D& state,
                             const ChemoField& chemo, const VelocityGrid1D& vgrid, double& dt,
                             std::size_t step, RefinementEvent* event) {
  const double grad = chemo.linf_grad_s();
  if (!(grad >= 2.0 * controller.s_ref)) return AdaptOutcome::unchanged;
  if (controller.levels >= controller.max_levels) return AdaptOutcome::cap_reached;
  const double mass = total_mass_1d(density_1d(state, vgrid), state.grid);
  const std::size_t old_n = state.grid.n_x();
  state = refine_state(state, vgrid, mass);
  controller.s_ref = grad;
  ++controller.levels;
  dt *= 0.5;
  if (event != nullptr) *event = RefinementEvent{state.time, step, old_n, state.grid.n_x(), grad};
  return AdaptOutcome::refined;
}

}  // namespace apchemo
