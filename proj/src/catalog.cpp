#include <numbers>

#include "apchemo/scenario.hpp"

namespace apchemo {

namespace {

constexpr double pi = std::numbers::pi;

ExperimentConfig nonlocal(std::string name, double mass, double eps, std::size_t n_x, double t_max) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.model = ModelKind::nonlocal1d;
  c.mass = mass;
  c.eps = eps;
  c.n_x = n_x;
  c.t_max = t_max;
  return c;
}

ExperimentConfig two_peaks(std::string name, double w_right, double w_left, double mass, double eps,
                           double t_max) {
  ExperimentConfig c = nonlocal(std::move(name), mass, eps, 400, t_max);
  c.peaks = {Peak{w_right, 0.3, 80.0}, Peak{w_left, -0.3, 80.0}};
  c.record_every = 10;
  c.profile_times = {0.0, t_max / 4, t_max / 2, t_max};
  return c;
}

ExperimentConfig radial(std::string name, double mass, std::size_t n_r, std::size_t n_v) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.model = ModelKind::local2d_radial;
  c.mass = mass;
  c.eps = 1.0;
  c.r_max = 2.0;
  c.n_r = n_r;
  c.n_omega = n_v;
  c.n_theta = n_v;
  c.t_max = 2.0;
  c.record_every = 20;
  c.profile_times = {0.0, 1.0, 2.0};
  return c;
}

std::vector<NamedScenario> build_catalog() {
  std::vector<NamedScenario> out;
  auto add = [&](std::string summary, ExperimentConfig c) {
    std::string name = c.name;
    out.push_back({std::move(name), std::move(summary), std::move(c)});
  };

  add("nonlocal order-2 convergence, subcritical (run with converge, levels from n_x = 100)",
      nonlocal("conv-sub", pi, 1e-6, 100, 0.025));
  add("nonlocal order-2 convergence, supercritical before blow-up",
      nonlocal("conv-super", 4 * pi, 1e-6, 100, 0.0025));

  {
    ExperimentConfig c;
    c.name = "ks-blowup";
    c.model = ModelKind::ks1d;
    c.mass = 4 * pi;
    c.n_x = 500;
    c.t_max = 0.0045;
    c.record_every = 10;
    add("Keller-Segel 1D blow-up at M = 4 pi (refine with converge or n_x overrides)", c);
  }
  {
    ExperimentConfig c = nonlocal("kinetic-bounded", 4 * pi, 0.1, 1000, 0.1);
    c.record_every = 20;
    c.profile_times = {0.0, 0.01, 0.1};
    add("nonlocal kinetic run at M = 4 pi staying bounded (desk scale)", c);
    c.name = "kinetic-bounded-full";
    c.n_x = 2000;
    add("same at full resolution", c);
  }
  {
    ExperimentConfig c = nonlocal("eps-conv-super", 4 * pi, 0.1, 1000, 0.002);
    add("epsilon sweep at M = 4 pi, t = 0.002 (run with eps-sweep)", c);
    c.name = "eps-conv-super-full";
    c.n_x = 2000;
    add("same at full resolution", c);
    c = nonlocal("eps-conv-sub", pi, 0.1, 1000, 0.01);
    add("epsilon sweep at M = pi, t = 0.01", c);
    c.name = "eps-conv-sub-full";
    c.n_x = 2000;
    add("same at full resolution", c);
  }
  {
    ExperimentConfig c = nonlocal("stationary", 4 * pi, 0.1, 1000, 0.1);
    c.record_every = 20;
    add("long-time nonlocal state for the rescaled stationary profile", c);
  }
  {
    ExperimentConfig c;
    c.name = "local-blowup";
    c.model = ModelKind::local1d;
    c.mass = 5 * pi;
    c.eps = 0.4;
    c.n_x = 500;
    c.t_max = 0.2;
    c.order = 1;
    c.dt_policy = DtPolicy::hyperbolic;
    c.record_every = 5;
    add("local model at M = 5 pi on a fixed grid", c);
    c.name = "local-blowup-adaptive";
    c.adaptive = true;
    c.dt_policy = DtPolicy::hyperbolic_half;
    c.max_levels = 4;
    add("same with gradient-triggered grid doubling", c);
  }
  {
    ExperimentConfig c;
    c.name = "local-selfsim";
    c.model = ModelKind::local1d;
    c.mass = pi;
    c.eps = 0.2;
    c.x_min = -10.0;
    c.x_max = 10.0;
    c.n_x = 1000;
    c.t_max = 20.0;
    c.record_every = 50;
    add("subcritical local run on a wide domain for self-similar rescaling", c);
    c.name = "local-selfsim-full";
    c.n_x = 2000;
    add("same at full resolution", c);
  }
  for (double m : {1.0, 9.0, 17.0, 25.0, 29.0, 33.0}) {
    const std::string tag = std::to_string(static_cast<int>(m));
    add("radial 2D local model, M = " + tag, radial("radial-m" + tag, m, 250, 16));
    add("radial 2D local model at full resolution, M = " + tag,
        radial("radial-m" + tag + "-full", m, 1000, 32));
  }
  {
    ExperimentConfig c;
    c.name = "ks-radial";
    c.model = ModelKind::ks2d_radial;
    c.mass = 29.0;
    c.r_max = 2.0;
    c.t_max = 0.05;
    c.record_every = 20;
    add("radial Keller-Segel limit, supercritical", c);
  }
  add("two symmetric peaks at M = 3 pi: diffuse, merge, concentrate",
      two_peaks("two-peaks-sym-3pi", 0.5, 0.5, 3 * pi, 0.1, 0.6));
  add("two symmetric peaks at M = 5 pi: metastable pair, then merge",
      two_peaks("two-peaks-sym-5pi", 0.5, 0.5, 5 * pi, 0.05, 0.6));
  add("two asymmetric peaks at M = 5 pi",
      two_peaks("two-peaks-asym-5pi", 2.2, 2.8, 5 * pi, 0.05, 0.6));
  {
    ExperimentConfig c = nonlocal("five-peaks-11pi", 11 * pi, 0.05, 400, 0.6);
    const double w[] = {0.5, 1.2, 0.8, 0.6, 1.0};
    const double x[] = {0.4, -0.2, -0.6, 0.0, 0.2};
    c.peaks.clear();
    for (int k = 0; k < 5; ++k) c.peaks.push_back(Peak{w[k], x[k], 160.0});
    c.record_every = 10;
    c.profile_times = {0.0, 0.15, 0.3, 0.6};
    add("five unequal peaks at M = 11 pi", c);
  }
  return out;
}

}  // namespace

const std::vector<NamedScenario>& scenario_catalog() {
  static const std::vector<NamedScenario> catalog = build_catalog();
  return catalog;
}

ExperimentConfig named_scenario(std::string_view name) {
  for (const auto& s : scenario_catalog()) {
    if (s.name == name) return s.config;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace apchemo
