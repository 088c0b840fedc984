#include "apchemo/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <thread>

#include "apchemo/chemo_field.hpp"
#include "apchemo/csv.hpp"
#include "apchemo/macro_ks.hpp"
#include "apchemo/solver_1d.hpp"
#include "apchemo/solver_2d.hpp"

namespace apchemo {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_threshold: return "blowup_threshold";
    case RunStatus::refinement_cap: return "refinement_cap";
    case RunStatus::numerical_abort: return "numerical_abort";
  }
  return "unknown";
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed:
    case RunStatus::blowup_threshold: return 0;
    case RunStatus::numerical_abort: return 3;
    case RunStatus::refinement_cap: return 4;
  }
  return 1;
}

double default_blowup_threshold(const ExperimentConfig& c) {
  double area = 0.0;
  double dx = 0.0;
  if (is_radial(c.model)) {
    area = std::numbers::pi * c.r_max * c.r_max;
    dx = c.r_max / static_cast<double>(c.n_r);
  } else {
    area = c.x_max - c.x_min;
    dx = area / static_cast<double>(c.n_x);
  }
  return std::min(1e3 * c.mass / area, c.mass / (4.0 * dx));
}

std::string file_tag(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

struct Snapshot {
  double max_rho = 0.0;
  double min_rho = 0.0;
  double mass = 0.0;
  double linf_grad_s = 0.0;
};

std::pair<double, double> min_max(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

double linf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// S(r_i) = -sum_k rho_tilde_k dr log max(r_i, r_k): the circular mean of
/// the 2D log kernel.
std::vector<double> radial_potential(std::span<const double> rho_tilde, const PolarGrid2D& g) {
  std::vector<double> s(g.n_r());
  for (std::size_t i = 0; i < g.n_r(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.n_r(); ++k) acc += rho_tilde[k] * std::log(std::max(g.r(i), g.r(k)));
    s[i] = -acc * g.dr();
  }
  return s;
}

void write_profile(const std::filesystem::path& path, std::span<const double> x,
                   std::span<const double> rho, std::span<const double> s,
                   std::span<const double> grad, bool radial) {
  CsvWriter w(path, {radial ? "r" : "x", "rho", "s", "grad_s"});
  for (std::size_t i = 0; i < x.size(); ++i) w.row({x[i], rho[i], s[i], grad[i]});
}

class Runner {
 public:
  virtual ~Runner() = default;
  virtual double nominal_dt() = 0;
  virtual void step(double dt, double t_new) = 0;
  virtual Snapshot snapshot() = 0;
  virtual std::vector<double> density() const = 0;
  virtual std::size_t resolution() const = 0;
  virtual double spacing() const = 0;
  virtual LevelSample sample() const = 0;
  virtual void write_profile_csv(const std::filesystem::path& path) const = 0;
  virtual AdaptOutcome adapt(std::size_t, RefinementEvent*) { return AdaptOutcome::unchanged; }
  virtual bool boundary_warning() const { return false; }
  virtual void finish(ScenarioResult&) const {}
};

class Kinetic1DRunner final : public Runner {
 public:
  explicit Kinetic1DRunner(const ExperimentConfig& c)
      : vgrid_(c.v_max, c.n_half),
        state_(init_peaks(SpatialGrid1D(c.x_min, c.x_max, c.n_x), c.peaks, c.mass, vgrid_, c.eps)) {
    scheme_.order = c.order;
    scheme_.model = c.model == ModelKind::local1d ? KineticModel::local : KineticModel::nonlocal;
    scheme_.transport = c.transport;
    scheme_.dt_policy = c.dt_policy;
    scheme_.dt_fixed = c.dt_fixed;
    // Refinement halves dt; the parabolic branch would need a quarter.
    if (c.adaptive && scheme_.dt_policy == DtPolicy::ap_max) scheme_.dt_policy = DtPolicy::hyperbolic_half;
    chemo_ = build_chemo(state_, vgrid_, scheme_.model);
    dt_ = time_step(scheme_, state_.grid, vgrid_, c.eps);
    if (c.adaptive) controller_ = make_controller(chemo_, c.max_levels);
    warning_ = chemo_.boundary_mass_warning;
  }

  double nominal_dt() override { return dt_; }
  void step(double dt, double t_new) override {
    advance(state_, chemo_, vgrid_, scheme_, dt);
    state_.time = t_new;
    warning_ = warning_ || chemo_.boundary_mass_warning;
  }
  Snapshot snapshot() override {
    const auto rho = density_1d(state_, vgrid_);
    const auto [lo, hi] = min_max(rho);
    return {hi, lo, total_mass_1d(rho, state_.grid), chemo_.linf_grad_s()};
  }
  std::vector<double> density() const override { return density_1d(state_, vgrid_); }
  std::size_t resolution() const override { return state_.grid.n_x(); }
  double spacing() const override { return state_.grid.dx(); }
  LevelSample sample() const override { return sample_kinetic_1d(state_, vgrid_); }
  void write_profile_csv(const std::filesystem::path& path) const override {
    write_profile(path, state_.grid.centers(), density(), chemo_.s_values, chemo_.grad_s, false);
  }
  AdaptOutcome adapt(std::size_t step, RefinementEvent* event) override {
    if (!controller_) return AdaptOutcome::unchanged;
    const AdaptOutcome out = adapt_if_needed(*controller_, state_, chemo_, vgrid_, dt_, step, event);
    if (out == AdaptOutcome::refined) chemo_ = build_chemo(state_, vgrid_, scheme_.model);
    return out;
  }
  bool boundary_warning() const override { return warning_; }
  void finish(ScenarioResult& r) const override { r.kinetic = state_; }

 private:
  VelocityGrid1D vgrid_;
  KineticState1D state_;
  SchemeConfig scheme_;
  ChemoField chemo_;
  double dt_ = 0.0;
  std::optional<AdaptiveController> controller_;
  bool warning_ = false;
};

class Ks1DRunner final : public Runner {
 public:
  explicit Ks1DRunner(const ExperimentConfig& c)
      : grid_(c.x_min, c.x_max, c.n_x),
        vgrid_(c.v_max, c.n_half),
        coeffs_(ks_coefficients_1d(vgrid_)),
        drift_(c.ks_drift),
        dt_fixed_(c.dt_policy == DtPolicy::fixed ? c.dt_fixed : 0.0),
        rho_(peaks_density(grid_, c.peaks, c.mass)) {
    grad_ = linf(grad_s_1d(convolve_log(rho_, grid_).s, grid_));
  }

  double nominal_dt() override { return dt_fixed_ > 0.0 ? dt_fixed_ : ks_stable_dt_1d(rho_, grid_, coeffs_); }
  void step(double dt, double) override { grad_ = ks_step_1d(rho_, grid_, coeffs_, dt, drift_).linf_grad_s; }
  Snapshot snapshot() override {
    const auto [lo, hi] = min_max(rho_);
    return {hi, lo, total_mass_1d(rho_, grid_), grad_};
  }
  std::vector<double> density() const override { return rho_; }
  std::size_t resolution() const override { return grid_.n_x(); }
  double spacing() const override { return grid_.dx(); }
  LevelSample sample() const override { return sample_density(rho_, grid_.dx()); }
  void write_profile_csv(const std::filesystem::path& path) const override {
    const auto s = convolve_log(rho_, grid_).s;
    write_profile(path, grid_.centers(), rho_, s, grad_s_1d(s, grid_), false);
  }

 private:
  SpatialGrid1D grid_;
  VelocityGrid1D vgrid_;
  KSCoefficients coeffs_;
  DriftFlux drift_;
  double dt_fixed_;
  std::vector<double> rho_;
  double grad_ = 0.0;
};

std::vector<double> radial_centres(const PolarGrid2D& g) {
  std::vector<double> r(g.n_r());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.r(i);
  return r;
}

class Radial2DRunner final : public Runner {
 public:
  explicit Radial2DRunner(const ExperimentConfig& c)
      : state_(init_radial(PolarGrid2D(c.r_max, c.n_r, c.v_max, c.n_omega, c.n_theta),
                           radial_bump_density(PolarGrid2D(c.r_max, c.n_r, c.v_max, c.n_omega, c.n_theta),
                                               c.mass, c.radial_decay),
                           c.eps)),
        dt_(c.dt_policy == DtPolicy::fixed ? c.dt_fixed : radial_time_step(state_.grid, c.cfl)) {}

  double nominal_dt() override { return dt_; }
  void step(double dt, double t_new) override {
    radial_advance(state_, dt);
    state_.time = t_new;
  }
  Snapshot snapshot() override {
    const auto rt = density_2d(state_);
    const auto rho = radial_rho(rt, state_.grid);
    const auto [lo, hi] = min_max(rho);
    return {hi, lo, total_mass_2d(rt, state_.grid), linf(grad_s_radial(rt, state_.grid))};
  }
  std::vector<double> density() const override { return density_2d(state_); }
  std::size_t resolution() const override { return state_.grid.n_r(); }
  double spacing() const override { return state_.grid.dr(); }
  LevelSample sample() const override { return sample_radial(state_); }
  void write_profile_csv(const std::filesystem::path& path) const override {
    const auto rt = density_2d(state_);
    write_profile(path, radial_centres(state_.grid), radial_rho(rt, state_.grid),
                  radial_potential(rt, state_.grid), grad_s_radial(rt, state_.grid), true);
  }
  void finish(ScenarioResult& r) const override { r.radial = state_; }

 private:
  RadialState2D state_;
  double dt_;
};

class KsRadialRunner final : public Runner {
 public:
  explicit KsRadialRunner(const ExperimentConfig& c)
      : grid_(c.r_max, c.n_r, c.v_max, c.n_omega, c.n_theta),
        coeffs_(ks_coefficients_radial(grid_)),
        drift_(c.ks_drift),
        dt_fixed_(c.dt_policy == DtPolicy::fixed ? c.dt_fixed : 0.0),
        rho_tilde_(radial_bump_density(grid_, c.mass, c.radial_decay)) {
    grad_ = linf(grad_s_radial(rho_tilde_, grid_));
  }

  double nominal_dt() override {
    return dt_fixed_ > 0.0 ? dt_fixed_ : ks_stable_dt_radial(rho_tilde_, grid_, coeffs_);
  }
  void step(double dt, double) override {
    grad_ = ks_step_radial(rho_tilde_, grid_, coeffs_, dt, drift_).linf_grad_s;
  }
  Snapshot snapshot() override {
    const auto rho = radial_rho(rho_tilde_, grid_);
    const auto [lo, hi] = min_max(rho);
    return {hi, lo, total_mass_2d(rho_tilde_, grid_), grad_};
  }
  std::vector<double> density() const override { return rho_tilde_; }
  std::size_t resolution() const override { return grid_.n_r(); }
  double spacing() const override { return grid_.dr(); }
  LevelSample sample() const override { return sample_density(rho_tilde_, grid_.dr()); }
  void write_profile_csv(const std::filesystem::path& path) const override {
    write_profile(path, radial_centres(grid_), radial_rho(rho_tilde_, grid_),
                  radial_potential(rho_tilde_, grid_), grad_s_radial(rho_tilde_, grid_), true);
  }

 private:
  PolarGrid2D grid_;
  KSCoefficients coeffs_;
  DriftFlux drift_;
  double dt_fixed_;
  std::vector<double> rho_tilde_;
  double grad_ = 0.0;
};

std::unique_ptr<Runner> make_runner(const ExperimentConfig& c) {
  switch (c.model) {
    case ModelKind::nonlocal1d:
    case ModelKind::local1d: return std::make_unique<Kinetic1DRunner>(c);
    case ModelKind::ks1d: return std::make_unique<Ks1DRunner>(c);
    case ModelKind::local2d_radial: return std::make_unique<Radial2DRunner>(c);
    case ModelKind::ks2d_radial: return std::make_unique<KsRadialRunner>(c);
  }
  throw ConfigError("unknown model");
}

void write_refinements_csv(const std::filesystem::path& path, const std::vector<RefinementEvent>& events) {
  CsvWriter w(path, {"t", "step", "old_n_x", "new_n_x", "grad_s"});
  for (const auto& e : events) {
    w.row({e.time, static_cast<long long>(e.step), static_cast<long long>(e.old_n_x),
           static_cast<long long>(e.new_n_x), e.grad_s});
  }
}

}  // namespace

ScenarioResult run_scenario(const ExperimentConfig& config, const ScenarioOptions& options) {
  validate(config);
  const bool write = options.write_csv && !config.output_dir.empty();
  if (write) std::filesystem::create_directories(config.output_dir);

  ScenarioResult result;
  result.blowup_threshold = config.blowup_threshold > 0.0 ? config.blowup_threshold
                                                          : default_blowup_threshold(config);
  auto runner = make_runner(config);
  const double initial_l1 = weighted_l1(runner->sample());

  std::vector<double> targets;
  for (double t : config.profile_times) {
    if (t > 0.0 && t < config.t_max) targets.push_back(t);
  }
  for (double t : options.sample_times) {
    if (t > 0.0 && t < config.t_max) targets.push_back(t);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  targets.push_back(config.t_max);

  double t = 0.0;
  double dt = 0.0;
  Snapshot snap = runner->snapshot();
  double prev_max = snap.max_rho;
  auto record = [&] {
    result.timeseries.push_back({t, snap.max_rho, snap.min_rho, snap.mass, snap.linf_grad_s,
                                 runner->resolution(), dt});
    if (options.keep_density_history) {
      result.history_times.push_back(t);
      result.density_history.push_back(runner->density());
    }
  };
  record();
  if (write && std::find(config.profile_times.begin(), config.profile_times.end(), 0.0) !=
                   config.profile_times.end()) {
    runner->write_profile_csv(config.output_dir / ("profile_" + file_tag(0.0) + ".csv"));
  }

  bool stop = false;
  for (std::size_t ti = 0; ti < targets.size() && !stop; ++ti) {
    const double target = targets[ti];
    while (target - t > 1e-12 * std::max(1.0, target)) {
      const double remaining = target - t;
      const double nominal = runner->nominal_dt();
      const double pieces = std::ceil(remaining / nominal - 1e-9);
      const bool last = pieces <= 1.0;
      dt = last ? remaining : remaining / pieces;
      const double t_new = last ? target : t + dt;
      runner->step(dt, t_new);
      t = t_new;
      ++result.steps;

      snap = runner->snapshot();
      if (!std::isfinite(snap.max_rho) || !std::isfinite(snap.min_rho) || !std::isfinite(snap.mass)) {
        result.status = RunStatus::numerical_abort;
        result.message = "non-finite density at step " + std::to_string(result.steps) +
                         " (t = " + format_double(t) + ")";
        record();
        stop = true;
        break;
      }
      if (!result.threshold_crossing && snap.max_rho > result.blowup_threshold) {
        const double w = (result.blowup_threshold - prev_max) / (snap.max_rho - prev_max);
        result.threshold_crossing = t - dt + std::clamp(w, 0.0, 1.0) * dt;
      }
      prev_max = snap.max_rho;

      const bool at_target = t == target;
      if (result.steps % config.record_every == 0 || at_target) record();

      if (config.stop_at_blowup && result.threshold_crossing) {
        if (!(result.steps % config.record_every == 0 || at_target)) record();
        result.status = RunStatus::blowup_threshold;
        result.message = "max rho passed " + format_double(result.blowup_threshold);
        stop = true;
        break;
      }

      RefinementEvent event;
      const AdaptOutcome outcome = runner->adapt(result.steps, &event);
      if (outcome == AdaptOutcome::refined) {
        result.refinements.push_back(event);
        snap = runner->snapshot();
        prev_max = snap.max_rho;
      } else if (outcome == AdaptOutcome::cap_reached) {
        if (!(result.steps % config.record_every == 0 || at_target)) record();
        result.status = RunStatus::refinement_cap;
        result.message = "refinement cap reached at t = " + format_double(t);
        stop = true;
        break;
      }
    }
    if (stop) break;
    const bool is_profile = std::find(config.profile_times.begin(), config.profile_times.end(), target) !=
                            config.profile_times.end();
    if (write && is_profile) {
      runner->write_profile_csv(config.output_dir / ("profile_" + file_tag(target) + ".csv"));
    }
    if (std::find(options.sample_times.begin(), options.sample_times.end(), target) !=
        options.sample_times.end()) {
      result.sample_times.push_back(target);
      result.samples.push_back(runner->sample());
      result.samples.back().initial_l1 = initial_l1;
    }
  }

  result.boundary_mass_warning = runner->boundary_warning();
  result.density = runner->density();
  result.dx = runner->spacing();
  result.sample = runner->sample();
  result.sample.initial_l1 = initial_l1;
  runner->finish(result);

  if (write) {
    write_timeseries_csv(config.output_dir / "timeseries.csv", result.timeseries);
    if (config.adaptive) write_refinements_csv(config.output_dir / "refinements.csv", result.refinements);
    std::ofstream(config.output_dir / "config.txt") << dump_config(config);
  }
  return result;
}

std::vector<ScenarioResult> run_scenarios(const std::vector<ExperimentConfig>& configs,
                                          const ScenarioOptions& options) {
  std::vector<ScenarioResult> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_scenario(configs[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(configs.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<ExperimentConfig> refinement_levels(const ExperimentConfig& base, std::size_t n_levels) {
  std::vector<ExperimentConfig> out;
  for (std::size_t l = 0; l < n_levels; ++l) {
    ExperimentConfig c = base;
    const std::size_t factor = std::size_t{1} << l;
    if (is_radial(base.model)) c.n_r = base.n_r * factor;
    else c.n_x = base.n_x * factor;
    if (!base.output_dir.empty()) c.output_dir = base.output_dir / ("level_" + std::to_string(l));
    out.push_back(std::move(c));
  }
  return out;
}

void write_timeseries_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rows) {
  CsvWriter w(path, {"t", "max_rho", "min_rho", "mass", "linf_grad_s", "n_x", "dt"});
  for (const auto& r : rows) {
    w.row({r.t, r.max_rho, r.min_rho, r.mass, r.linf_grad_s, static_cast<long long>(r.n_x), r.dt});
  }
}

void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows) {
  CsvWriter w(path, {"dx", "e1", "order"});
  for (const auto& r : rows) w.row({r.dx, r.e1, r.order.value_or(std::nan(""))});
}

void write_eps_sweep_csv(const std::filesystem::path& path, const EpsStudy& study) {
  CsvWriter w(path, {"eps", "dist_f_rhoF_l2", "dist_rho_rho0_l1"});
  for (const auto& r : study.rows) w.row({r.eps, r.dist_f_rhoF_l2, r.dist_rho_rho0_l1});
}

void write_stationary_csv(const std::filesystem::path& dir, const StationaryProfile& profile) {
  std::filesystem::create_directories(dir);
  {
    CsvWriter w(dir / ("stationary_" + file_tag(profile.eps) + ".csv"), {"x_rescaled", "eps_rho_eps"});
    for (std::size_t i = 0; i < profile.x_rescaled.size(); ++i) {
      w.row({profile.x_rescaled[i], profile.eps_rho[i]});
    }
  }
  for (const auto& s : profile.stations) {
    CsvWriter w(dir / ("ftilde_" + file_tag(s.x_rescaled) + ".csv"), {"v", "ftilde"});
    for (std::size_t k = 0; k < s.v.size(); ++k) w.row({s.v[k], s.ftilde[k]});
  }
}

void write_selfsim_csv(const std::filesystem::path& path, const SelfSimilarSeries& series) {
  CsvWriter w(path, {"tau", "l1_to_final"});
  for (std::size_t i = 0; i < series.tau.size(); ++i) w.row({series.tau[i], series.l1_to_final[i]});
}

}  // namespace apchemo
