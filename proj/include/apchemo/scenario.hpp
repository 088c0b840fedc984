#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "apchemo/adaptive.hpp"
#include "apchemo/config.hpp"
#include "apchemo/kinetic_state.hpp"
#include "apchemo/studies.hpp"

namespace apchemo {

enum class RunStatus {
  completed,
  blowup_threshold,  ///< stopped at the blow-up threshold on request
  refinement_cap,    ///< adaptivity ran out of levels
  numerical_abort,   ///< NaN or Inf in the state
};

std::string_view to_string(RunStatus status);
/// 0 for completed runs and requested threshold stops, 3 for aborts, 4 for
/// the refinement cap.
int exit_code(RunStatus status);

struct DiagnosticsRecord {
  double t = 0.0;
  double max_rho = 0.0;
  double min_rho = 0.0;
  double mass = 0.0;
  double linf_grad_s = 0.0;
  std::size_t n_x = 0;
  double dt = 0.0;
};

struct ScenarioOptions {
  /// Write CSVs when the config names an output directory.
  bool write_csv = true;
  /// Keep the density at every recorded step (needed for self-similar
  /// rescaling).
  bool keep_density_history = false;
  /// Extra times at which the convergence-norm sample is stored.
  std::vector<double> sample_times;
};

struct ScenarioResult {
  RunStatus status = RunStatus::completed;
  std::string message;
  std::size_t steps = 0;
  std::vector<DiagnosticsRecord> timeseries;
  std::vector<RefinementEvent> refinements;
  double blowup_threshold = 0.0;
  std::optional<double> threshold_crossing;
  bool boundary_mass_warning = false;

  std::optional<KineticState1D> kinetic;
  std::optional<RadialState2D> radial;
  /// Final rho (1D) or rho_tilde = r rho (radial) on the final grid.
  std::vector<double> density;
  double dx = 0.0;
  /// Final solution in the convergence norm, with the initial norm filled.
  LevelSample sample;
  /// Samples at ScenarioOptions::sample_times reached before the run ended.
  std::vector<double> sample_times;
  std::vector<LevelSample> samples;

  std::vector<double> history_times;
  std::vector<std::vector<double>> density_history;

  int exit_code() const { return apchemo::exit_code(status); }
  const DiagnosticsRecord& final_record() const { return timeseries.back(); }
};

/// min(1e3 M / |domain|, M / (4 dx)) on the configured (coarsest) grid.
double default_blowup_threshold(const ExperimentConfig& config);

/// Runs the time loop. Validates the config (ConfigError) first.
ScenarioResult run_scenario(const ExperimentConfig& config, const ScenarioOptions& options = {});

/// Runs independent configs concurrently; results keep input order.
std::vector<ScenarioResult> run_scenarios(const std::vector<ExperimentConfig>& configs,
                                          const ScenarioOptions& options = {});

/// Doubling sequence n, 2n, 4n, ... of the config's spatial resolution.
std::vector<ExperimentConfig> refinement_levels(const ExperimentConfig& base, std::size_t n_levels);

struct NamedScenario {
  std::string name;
  std::string summary;
  ExperimentConfig config;
};

const std::vector<NamedScenario>& scenario_catalog();
/// Throws ConfigError for unknown names.
ExperimentConfig named_scenario(std::string_view name);

/// File-name friendly text for a time or parameter value.
std::string file_tag(double value);

void write_timeseries_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rows);
void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows);
void write_eps_sweep_csv(const std::filesystem::path& path, const EpsStudy& study);
void write_stationary_csv(const std::filesystem::path& dir, const StationaryProfile& profile);
void write_selfsim_csv(const std::filesystem::path& path, const SelfSimilarSeries& series);

}  // namespace apchemo
