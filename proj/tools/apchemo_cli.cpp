#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "apchemo/csv.hpp"
#include "apchemo/scenario.hpp"
#include "apchemo/studies.hpp"

namespace fs = std::filesystem;
using namespace apchemo;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("config", common.config, "config file or catalog scenario name")->required();
  cmd->add_option("overrides", common.overrides, "key=value settings applied after the config");
  cmd->add_option("--out", common.out, "output directory");
}

ExperimentConfig resolve(const Common& common) {
  ExperimentConfig c = fs::exists(common.config) ? load_config(common.config) : named_scenario(common.config);
  for (const auto& o : common.overrides) apply_override(c, o);
  if (!common.out.empty()) c.output_dir = common.out;
  else if (c.output_dir.empty()) c.output_dir = fs::path("out") / c.name;
  validate(c);
  return c;
}

void print_summary(const ExperimentConfig& c, const ScenarioResult& r) {
  const auto& last = r.final_record();
  std::printf("%s: %s after %zu steps, t = %.6g, max rho = %.6g, mass = %.12g\n", c.name.c_str(),
              std::string(to_string(r.status)).c_str(), r.steps, last.t, last.max_rho, last.mass);
  if (r.threshold_crossing) std::printf("  max rho crossed %.6g at t = %.6g\n", r.blowup_threshold, *r.threshold_crossing);
  if (!r.refinements.empty()) std::printf("  %zu refinement(s), first at t = %.6g\n", r.refinements.size(), r.refinements.front().time);
  if (r.boundary_mass_warning) std::printf("  warning: density reaches the domain edge\n");
  if (!r.message.empty()) std::printf("  %s\n", r.message.c_str());
}

int worst_exit(const std::vector<ScenarioResult>& results) {
  int code = 0;
  for (const auto& r : results) code = std::max(code, r.exit_code());
  return code;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  for (std::size_t pos = 0; pos <= text.size(); ++pos) {
    if (pos == text.size() || text[pos] == ',') {
      if (!item.empty()) {
        ExperimentConfig scratch;
        apply_setting(scratch, "mass", item);
        out.push_back(scratch.mass);
      }
      item.clear();
    } else if (text[pos] != ' ') {
      item += text[pos];
    }
  }
  return out;
}

int cmd_run(const Common& common, const std::string& stations, bool selfsim) {
  const ExperimentConfig c = resolve(common);
  ScenarioOptions opt;
  opt.keep_density_history = selfsim;
  const ScenarioResult r = run_scenario(c, opt);
  print_summary(c, r);
  if (!stations.empty() && r.kinetic) {
    const VelocityGrid1D vgrid(c.v_max, c.n_half);
    const auto profile = stationary_diagnostics(*r.kinetic, vgrid, parse_list(stations));
    write_stationary_csv(c.output_dir, profile);
    for (const auto& s : profile.stations) {
      std::printf("  station y = %.4g: int F - 1 = %.3e, int v F = %.3e\n", s.x_rescaled,
                  s.zeroth_moment - 1.0, s.first_moment);
    }
  }
  if (selfsim && is_kinetic_1d(c.model)) {
    const SpatialGrid1D grid(c.x_min, c.x_max, r.density.size());
    const auto series = self_similar_profile(r.density_history, r.history_times, grid);
    write_selfsim_csv(c.output_dir / "selfsim.csv", series);
  }
  return r.exit_code();
}

void print_table(const std::vector<ConvergenceRow>& table) {
  for (const auto& row : table) {
    std::printf("dx = %-10.4g e1 = %-12.4e order = %s\n", row.dx, row.e1,
                row.order ? format_double(*row.order).c_str() : "-");
  }
}

int cmd_converge(const Common& common, std::size_t levels, const std::string& times_text) {
  const ExperimentConfig base = resolve(common);
  const auto configs = refinement_levels(base, levels);
  ScenarioOptions opt;
  opt.sample_times = parse_list(times_text);
  const auto results = run_scenarios(configs, opt);
  for (std::size_t l = 0; l < results.size(); ++l) print_summary(configs[l], results[l]);
  fs::create_directories(base.output_dir);
  for (std::size_t k = 0; k < opt.sample_times.size(); ++k) {
    std::vector<LevelSample> samples;
    for (const auto& r : results) {
      if (k < r.samples.size()) samples.push_back(r.samples[k]);
    }
    if (samples.size() != results.size()) break;
    const auto table = convergence_table(samples);
    std::printf("t = %s\n", file_tag(opt.sample_times[k]).c_str());
    print_table(table);
    write_convergence_csv(base.output_dir / ("convergence_" + file_tag(opt.sample_times[k]) + ".csv"), table);
  }
  std::vector<LevelSample> samples;
  for (const auto& r : results) samples.push_back(r.sample);
  const auto table = convergence_table(samples);
  std::printf("t = %s (final)\n", file_tag(base.t_max).c_str());
  print_table(table);
  write_convergence_csv(base.output_dir / "convergence.csv", table);
  return worst_exit(results);
}

int cmd_eps_sweep(const Common& common, const std::string& eps_text) {
  const ExperimentConfig base = resolve(common);
  if (!is_kinetic_1d(base.model)) throw ConfigError("eps-sweep needs a 1D kinetic model");
  const auto eps_values = parse_list(eps_text);
  std::vector<ExperimentConfig> configs;
  for (double e : eps_values) {
    ExperimentConfig c = base;
    c.eps = e;
    c.output_dir = base.output_dir / ("eps_" + file_tag(e));
    configs.push_back(c);
  }
  ExperimentConfig limit = base;
  limit.model = ModelKind::ks1d;
  limit.output_dir = base.output_dir / "ks";
  configs.push_back(limit);
  const auto results = run_scenarios(configs);
  for (std::size_t i = 0; i < results.size(); ++i) print_summary(configs[i], results[i]);
  const VelocityGrid1D vgrid(base.v_max, base.n_half);
  std::size_t index = 0;
  const auto study = eps_convergence([&](double) { return *results[index++].kinetic; }, eps_values,
                                     results.back().density, vgrid);
  write_eps_sweep_csv(base.output_dir / "eps_sweep.csv", study);
  for (const auto& row : study.rows) {
    std::printf("eps = %-8.4g |f - rho F|_2 = %-12.4e |rho - rho0|_1 = %.4e\n", row.eps,
                row.dist_f_rhoF_l2, row.dist_rho_rho0_l1);
  }
  std::printf("fitted orders: %.3f (f - rho F), %.3f (rho - rho0)\n", study.order_f_rhoF,
              study.order_rho_rho0);
  return worst_exit(results);
}

int cmd_sweep_mass(const Common& common, const std::string& mass_text) {
  const ExperimentConfig base = resolve(common);
  std::vector<ExperimentConfig> configs;
  for (double m : parse_list(mass_text)) {
    ExperimentConfig c = base;
    c.mass = m;
    c.output_dir = base.output_dir / ("mass_" + file_tag(m));
    configs.push_back(c);
  }
  const auto results = run_scenarios(configs);
  fs::create_directories(base.output_dir);
  CsvWriter w(base.output_dir / "mass_sweep.csv",
              {"mass", "final_max_rho_over_mass", "sup_max_rho_over_mass", "exit_code"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    print_summary(configs[i], results[i]);
    double sup = 0.0;
    for (const auto& rec : results[i].timeseries) sup = std::max(sup, rec.max_rho);
    const double m = configs[i].mass;
    w.row({m, results[i].final_record().max_rho / m, sup / m, static_cast<long long>(results[i].exit_code())});
  }
  return worst_exit(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinetic chemotaxis simulations"};
  app.require_subcommand(1);

  Common common;
  std::string stations, eps_text, mass_text;
  bool selfsim = false;
  std::size_t levels = 4;

  auto* run = app.add_subcommand("run", "run one scenario");
  add_common(run, common);
  run->add_option("--stationary", stations, "rescaled stations y for stationary_<eps>.csv");
  run->add_flag("--selfsim", selfsim, "write selfsim.csv from the recorded densities");

  auto* converge = app.add_subcommand("converge", "doubling-grid convergence study");
  add_common(converge, common);
  converge->add_option("--levels", levels, "number of grid levels (>= 3)")->capture_default_str();
  std::string times_text;
  converge->add_option("--times", times_text, "comma separated intermediate evaluation times");

  auto* eps_sweep = app.add_subcommand("eps-sweep", "distance to equilibrium and to the limit");
  add_common(eps_sweep, common);
  eps_sweep->add_option("--eps", eps_text, "comma separated eps values")->required();

  auto* sweep_mass = app.add_subcommand("sweep-mass", "same scenario over several masses");
  add_common(sweep_mass, common);
  sweep_mass->add_option("--masses", mass_text, "comma separated masses (4pi style allowed)")->required();

  app.add_subcommand("list-scenarios", "print the scenario catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(common, stations, selfsim);
    if (converge->parsed()) return cmd_converge(common, levels, times_text);
    if (eps_sweep->parsed()) return cmd_eps_sweep(common, eps_text);
    if (sweep_mass->parsed()) return cmd_sweep_mass(common, mass_text);
    for (const auto& s : scenario_catalog()) std::printf("%-24s %s\n", s.name.c_str(), s.summary.c_str());
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CflViolation& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
