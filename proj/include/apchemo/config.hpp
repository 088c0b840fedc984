#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apchemo/kinetic_state.hpp"
#include "apchemo/macro_ks.hpp"
#include "apchemo/solver_1d.hpp"

namespace apchemo {

enum class ModelKind { nonlocal1d, local1d, local2d_radial, ks1d, ks2d_radial };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string name = "custom";
  ModelKind model = ModelKind::nonlocal1d;
  double eps = 1.0;
  double mass = 1.0;

  // 1D
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_x = 500;
  std::size_t n_half = 32;
  double v_max = 1.0;
  std::vector<Peak> peaks{Peak{}};

  // 2D radial
  double r_max = 1.0;
  std::size_t n_r = 250;
  std::size_t n_omega = 16;
  std::size_t n_theta = 16;
  double radial_decay = 15.0;
  double cfl = 0.9;

  int order = 2;
  TransportScheme transport = TransportScheme::lax_wendroff;
  DtPolicy dt_policy = DtPolicy::ap_max;
  double dt_fixed = 0.0;
  DriftFlux ks_drift = DriftFlux::centered;

  bool adaptive = false;
  std::size_t max_levels = 4;
  double t_max = 0.01;

  /// 0 picks the default: min(1e3 M / |domain|, M / (4 dx)).
  double blowup_threshold = 0.0;
  /// Stop once max rho passes the blow-up threshold.
  bool stop_at_blowup = false;

  std::filesystem::path output_dir;
  /// Timeseries cadence in steps (1 = every step).
  std::size_t record_every = 1;
  /// Times at which profile_<t>.csv snapshots are written.
  std::vector<double> profile_times;
};

std::string_view to_string(ModelKind model);
std::string_view to_string(TransportScheme scheme);
std::string_view to_string(DtPolicy policy);

bool is_kinetic_1d(ModelKind model);
bool is_radial(ModelKind model);

/// Applies one `key = value` assignment. Unknown keys and malformed values
/// throw ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
/// Parses an override written as `key=value`.
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Flat `key = value` text, `#` starts a comment.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// `w:c:width, w:c:width, ...`
std::vector<Peak> parse_peaks(std::string_view text);
std::string format_peaks(const std::vector<Peak>& peaks);

/// Throws ConfigError if a field is out of range for the chosen model.
void validate(const ExperimentConfig& config);

/// Round-trippable text of the fields that apply to the configured model.
std::string dump_config(const ExperimentConfig& config);

}  // namespace apchemo
