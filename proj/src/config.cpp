#include "apchemo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "apchemo/csv.hpp"

namespace apchemo {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

// Accepts plain numbers and multiples of pi ("4pi", "0.5*pi", "pi").
double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double factor = 1.0;
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    factor = std::numbers::pi;
    text = trim(text.substr(0, text.size() - 2));
    if (!text.empty() && text.back() == '*') text = trim(text.substr(0, text.size() - 1));
    if (text.empty()) return factor;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) bad_value(key, text);
  return value * factor;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  unsigned long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_value(key, text);
  return static_cast<std::size_t>(value);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, text);
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view key, std::string_view text, const std::pair<std::string_view, Enum> (&table)[N]) {
  text = trim(text);
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  bad_value(key, text);
}

constexpr std::pair<std::string_view, ModelKind> kModels[] = {
    {"nonlocal1d", ModelKind::nonlocal1d},
    {"local1d", ModelKind::local1d},
    {"local2d_radial", ModelKind::local2d_radial},
    {"ks1d", ModelKind::ks1d},
    {"ks2d_radial", ModelKind::ks2d_radial},
};
constexpr std::pair<std::string_view, TransportScheme> kTransports[] = {
    {"upwind", TransportScheme::upwind},
    {"lax_wendroff", TransportScheme::lax_wendroff},
    {"tvd_minmod", TransportScheme::tvd_minmod},
};
constexpr std::pair<std::string_view, DtPolicy> kPolicies[] = {
    {"ap_max", DtPolicy::ap_max},
    {"hyperbolic_half", DtPolicy::hyperbolic_half},
    {"hyperbolic", DtPolicy::hyperbolic},
    {"parabolic", DtPolicy::parabolic},
    {"fixed", DtPolicy::fixed},
};
constexpr std::pair<std::string_view, DriftFlux> kDrifts[] = {
    {"centered", DriftFlux::centered},
    {"upwind", DriftFlux::upwind},
};

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

}  // namespace

std::string_view to_string(ModelKind model) { return enum_name(model, kModels); }
std::string_view to_string(TransportScheme scheme) { return enum_name(scheme, kTransports); }
std::string_view to_string(DtPolicy policy) { return enum_name(policy, kPolicies); }

bool is_kinetic_1d(ModelKind model) {
  return model == ModelKind::nonlocal1d || model == ModelKind::local1d;
}

bool is_radial(ModelKind model) {
  return model == ModelKind::local2d_radial || model == ModelKind::ks2d_radial;
}

std::vector<Peak> parse_peaks(std::string_view text) {
  std::vector<Peak> peaks;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    const auto fields = split(item, ':');
    if (fields.size() != 3) throw ConfigError("peak '" + std::string(item) + "' is not w:c:width");
    peaks.push_back(Peak{parse_double("peaks", fields[0]), parse_double("peaks", fields[1]),
                         parse_double("peaks", fields[2])});
  }
  return peaks;
}

std::string format_peaks(const std::vector<Peak>& peaks) {
  std::string out;
  for (const auto& p : peaks) {
    if (!out.empty()) out += ", ";
    out += format_double(p.weight) + ":" + format_double(p.center) + ":" + format_double(p.width);
  }
  return out;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "name") c.name = std::string(value);
  else if (key == "model") c.model = parse_enum(key, value, kModels);
  else if (key == "eps") c.eps = parse_double(key, value);
  else if (key == "mass") c.mass = parse_double(key, value);
  else if (key == "x_min") c.x_min = parse_double(key, value);
  else if (key == "x_max") c.x_max = parse_double(key, value);
  else if (key == "n_x") c.n_x = parse_count(key, value);
  else if (key == "n_half") c.n_half = parse_count(key, value);
  else if (key == "v_max") c.v_max = parse_double(key, value);
  else if (key == "peaks") c.peaks = parse_peaks(value);
  else if (key == "r_max") c.r_max = parse_double(key, value);
  else if (key == "n_r") c.n_r = parse_count(key, value);
  else if (key == "n_omega") c.n_omega = parse_count(key, value);
  else if (key == "n_theta") c.n_theta = parse_count(key, value);
  else if (key == "radial_decay") c.radial_decay = parse_double(key, value);
  else if (key == "cfl") c.cfl = parse_double(key, value);
  else if (key == "order") c.order = static_cast<int>(parse_count(key, value));
  else if (key == "transport") c.transport = parse_enum(key, value, kTransports);
  else if (key == "dt_policy") c.dt_policy = parse_enum(key, value, kPolicies);
  else if (key == "dt_fixed") c.dt_fixed = parse_double(key, value);
  else if (key == "ks_drift") c.ks_drift = parse_enum(key, value, kDrifts);
  else if (key == "adaptive") c.adaptive = parse_bool(key, value);
  else if (key == "max_levels") c.max_levels = parse_count(key, value);
  else if (key == "t_max") c.t_max = parse_double(key, value);
  else if (key == "blowup_threshold") c.blowup_threshold = parse_double(key, value);
  else if (key == "stop_at_blowup") c.stop_at_blowup = parse_bool(key, value);
  else if (key == "output_dir") c.output_dir = std::string(value);
  else if (key == "record_every") c.record_every = parse_count(key, value);
  else if (key == "profile_times") {
    c.profile_times.clear();
    for (auto item : split(value, ',')) {
      if (!item.empty()) c.profile_times.push_back(parse_double(key, item));
    }
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' lacks '='");
  apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      try {
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(c.mass > 0.0, "mass must be positive");
  require(c.eps > 0.0, "eps must be positive");
  require(c.t_max > 0.0, "t_max must be positive");
  require(c.order == 1 || c.order == 2, "order must be 1 or 2");
  require(c.record_every >= 1, "record_every must be at least 1");
  require(c.v_max > 0.0, "v_max must be positive");
  if (c.dt_policy == DtPolicy::fixed) require(c.dt_fixed > 0.0, "dt_fixed must be positive");
  if (is_radial(c.model)) {
    require(c.r_max > 0.0, "r_max must be positive");
    require(c.n_r >= 3, "n_r must be at least 3");
    require(c.n_omega >= 1, "n_omega must be positive");
    require(c.n_theta >= 2 && c.n_theta % 2 == 0, "n_theta must be even and positive");
    require(c.radial_decay > 0.0, "radial_decay must be positive");
    require(c.cfl > 0.0 && c.cfl <= 1.0, "cfl must lie in (0, 1]");
    require(!c.adaptive, "adaptivity is available for the 1D models only");
  } else {
    require(c.x_max > c.x_min, "x_max must exceed x_min");
    require(c.n_x >= 3, "n_x must be at least 3");
    require(c.n_half >= 1, "n_half must be positive");
    require(!c.peaks.empty(), "at least one peak is required");
    for (const auto& p : c.peaks) require(p.width > 0.0, "peak widths must be positive");
    if (c.model == ModelKind::ks1d) require(!c.adaptive, "adaptivity applies to kinetic models");
  }
  if (c.adaptive) require(c.max_levels >= 1, "max_levels must be positive");
}

std::string dump_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "name = " << c.name << "\n"
    << "model = " << to_string(c.model) << "\n"
    << "eps = " << format_double(c.eps) << "\n"
    << "mass = " << format_double(c.mass) << "\n";
  if (is_radial(c.model)) {
    o << "r_max = " << format_double(c.r_max) << "\n"
      << "n_r = " << c.n_r << "\n"
      << "n_omega = " << c.n_omega << "\n"
      << "n_theta = " << c.n_theta << "\n"
      << "radial_decay = " << format_double(c.radial_decay) << "\n"
      << "cfl = " << format_double(c.cfl) << "\n";
  } else {
    o << "x_min = " << format_double(c.x_min) << "\n"
      << "x_max = " << format_double(c.x_max) << "\n"
      << "n_x = " << c.n_x << "\n"
      << "n_half = " << c.n_half << "\n"
      << "peaks = " << format_peaks(c.peaks) << "\n"
      << "order = " << c.order << "\n"
      << "transport = " << to_string(c.transport) << "\n"
      << "dt_policy = " << to_string(c.dt_policy) << "\n"
      << "dt_fixed = " << format_double(c.dt_fixed) << "\n"
      << "adaptive = " << (c.adaptive ? "true" : "false") << "\n"
      << "max_levels = " << c.max_levels << "\n";
  }
  o << "v_max = " << format_double(c.v_max) << "\n"
    << "ks_drift = " << enum_name(c.ks_drift, kDrifts) << "\n"
    << "t_max = " << format_double(c.t_max) << "\n"
    << "blowup_threshold = " << format_double(c.blowup_threshold) << "\n"
    << "stop_at_blowup = " << (c.stop_at_blowup ? "true" : "false") << "\n"
    << "record_every = " << c.record_every << "\n";
  if (!c.profile_times.empty()) {
    o << "profile_times = ";
    for (std::size_t i = 0; i < c.profile_times.size(); ++i) {
      o << (i ? ", " : "") << format_double(c.profile_times[i]);
    }
    o << "\n";
  }
  return o.str();
}

}  // namespace apchemo
