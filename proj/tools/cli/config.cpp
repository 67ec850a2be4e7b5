#include "config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "format.hpp"
#include "nlsscat/grid.hpp"

namespace nlsscat::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(std::string_view v, int line, const std::string& key) {
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  const auto d = parse_double(v);
  if (!d) throw ConfigError(line, key + ": expected a number, got '" + std::string(v) + "'");
  return *d;
}

long long to_integer(std::string_view v, int line, const std::string& key) {
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  const auto i = parse_int(v);
  if (!i) throw ConfigError(line, key + ": expected an integer, got '" + std::string(v) + "'");
  return *i;
}

int to_int(std::string_view v, int line, const std::string& key) {
  const long long i = to_integer(v, line, key);
  if (i < -(1LL << 30) || i > (1LL << 30)) throw ConfigError(line, key + ": out of range");
  return static_cast<int>(i);
}

bool to_bool(std::string_view v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, key + ": expected true or false, got '" + std::string(v) + "'");
}

Family to_family(std::string_view v, int line, const std::string& key, bool allow_oscillating) {
  if (v == "gaussian") return Family::Gaussian;
  if (v == "soliton") return Family::Soliton;
  if (allow_oscillating && v == "oscillating") return Family::Oscillating;
  throw ConfigError(line, key + ": unknown family '" + std::string(v) + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Soliton: return "soliton";
    case Family::Oscillating: return "oscillating";
    case Family::Custom: return "custom";
  }
  return "?";
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"params.d", [](RunConfig& c, auto v, int l) { c.params.d = to_int(v, l, "params.d"); }},
      {"params.alpha", [](RunConfig& c, auto v, int l) { c.params.alpha = to_number(v, l, "params.alpha"); }},
      {"params.lambda", [](RunConfig& c, auto v, int l) { c.params.lambda = to_number(v, l, "params.lambda"); }},
      {"params.seed", [](RunConfig& c, auto v, int l) { c.seed = to_integer(v, l, "params.seed"); }},
      {"grid.n", [](RunConfig& c, auto v, int l) { c.n = to_int(v, l, "grid.n"); }},
      {"grid.half_length", [](RunConfig& c, auto v, int l) { c.half_length = to_number(v, l, "grid.half_length"); }},
      {"time.t_end", [](RunConfig& c, auto v, int l) { c.t_end = to_number(v, l, "time.t_end"); }},
      {"time.dt", [](RunConfig& c, auto v, int l) { c.dt = to_number(v, l, "time.dt"); }},
      {"time.schedule",
       [](RunConfig& c, std::string_view v, int l) {
         if (v == "uniform") {
           c.schedule = Schedule::Uniform;
         } else if (v == "octave") {
           c.schedule = Schedule::Octave;
         } else {
           throw ConfigError(l, "time.schedule: expected uniform or octave");
         }
       }},
      {"time.samples", [](RunConfig& c, auto v, int l) { c.samples = to_int(v, l, "time.samples"); }},
      {"time.samples_per_octave",
       [](RunConfig& c, auto v, int l) { c.samples_per_octave = to_int(v, l, "time.samples_per_octave"); }},
      {"time.octaves", [](RunConfig& c, auto v, int l) { c.octaves = to_int(v, l, "time.octaves"); }},
      {"data.family", [](RunConfig& c, auto v, int l) { c.family = to_family(v, l, "data.family", true); }},
      {"data.base", [](RunConfig& c, auto v, int l) { c.base_family = to_family(v, l, "data.base", false); }},
      {"data.amplitude", [](RunConfig& c, auto v, int l) { c.amplitude = to_number(v, l, "data.amplitude"); }},
      {"data.width", [](RunConfig& c, auto v, int l) { c.width = to_number(v, l, "data.width"); }},
      {"data.alpha", [](RunConfig& c, auto v, int l) { c.data_alpha = to_number(v, l, "data.alpha"); }},
      {"data.b", [](RunConfig& c, auto v, int l) { c.b = to_number(v, l, "data.b"); }},
      {"tolerances.blowup_factor",
       [](RunConfig& c, auto v, int l) { c.blowup_factor = to_number(v, l, "tolerances.blowup_factor"); }},
      {"tolerances.boundary",
       [](RunConfig& c, auto v, int l) { c.boundary_tol = to_number(v, l, "tolerances.boundary"); }},
      {"tolerances.cauchy", [](RunConfig& c, auto v, int l) { c.cauchy_tol = to_number(v, l, "tolerances.cauchy"); }},
      {"tolerances.cauchy_stride",
       [](RunConfig& c, auto v, int l) { c.cauchy_stride = to_int(v, l, "tolerances.cauchy_stride"); }},
      {"outputs.prefix",
       [](RunConfig& c, std::string_view v, int l) {
         if (v.empty() || v.find_first_of("/\\") != std::string_view::npos) {
           throw ConfigError(l, "outputs.prefix: non-empty file name without separators required");
         }
         c.prefix = std::string(v);
       }},
      {"outputs.plot", [](RunConfig& c, auto v, int l) { c.plot = to_bool(v, l, "outputs.plot"); }},
      {"outputs.scattering_state",
       [](RunConfig& c, auto v, int l) { c.scattering_state = to_bool(v, l, "outputs.scattering_state"); }},
      {"sweep.parameter", [](RunConfig& c, std::string_view v, int) { c.sweep_parameter = std::string(v); }},
      {"sweep.values",
       [](RunConfig& c, std::string_view v, int l) {
         c.sweep_values.clear();
         std::size_t pos = 0;
         while (pos <= v.size()) {
           const auto comma = v.find(',', pos);
           const auto item = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
           c.sweep_values.push_back(to_number(item, l, "sweep.values"));
           if (comma == std::string_view::npos) break;
           pos = comma + 1;
         }
       }},
  };
  return table;
}

[[noreturn]] void invalid(const std::string& key, const std::string& constraint) {
  throw ConfigError(0, key + ": " + constraint + " required");
}

const char* const kSweepable[] = {"amplitude", "width", "b", "alpha", "lambda"};

}  // namespace

DataSpec RunConfig::data_spec() const {
  auto make = [&](Family f) {
    DataSpec s;
    s.family = f;
    s.amplitude = amplitude;
    s.width = width;
    s.alpha = data_alpha > 0.0 ? data_alpha : params.alpha;
    return s;
  };
  if (family != Family::Oscillating) return make(family);
  DataSpec s;
  s.family = Family::Oscillating;
  s.b = b;
  s.base = std::make_shared<DataSpec>(make(base_family));
  return s;
}

std::vector<double> RunConfig::octave_times() const {
  std::vector<double> ts;
  const int m = samples_per_octave;
  for (int k = m * octaves; k >= 0; --k) ts.push_back(t_end * std::exp2(-static_cast<double>(k) / m));
  return ts;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const char* const known[] = {"params", "grid", "time", "data", "tolerances", "outputs", "sweep"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    if (section.empty()) throw ConfigError(line_no, "key outside of any section");
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string_view::npos) value = trim(value.substr(0, hash));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(line_no, "unknown key " + key);
    if (value.empty()) throw ConfigError(line_no, key + ": empty value");
    it->second(cfg, value, line_no);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  const Params& p = c.params;
  if (p.d < 1 || p.d > 3) invalid("params.d", "d in {1, 2, 3}");
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) invalid("params.alpha", "alpha > 0");
  if (p.d == 3 && !(p.alpha < 4.0)) invalid("params.alpha", "alpha < 4 in d = 3");
  if (!std::isfinite(p.lambda) || p.lambda == 0.0) invalid("params.lambda", "finite nonzero lambda");

  if (c.n < 8 || (c.n & (c.n - 1)) != 0) invalid("grid.n", "power of two >= 8");
  if (!(c.half_length > 0.0) || !std::isfinite(c.half_length)) invalid("grid.half_length", "half_length > 0");

  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) invalid("time.t_end", "t_end > 0");
  if (!(c.dt > 0.0) || !(c.dt <= c.t_end)) invalid("time.dt", "0 < dt <= t_end");
  const double kmax = std::numbers::pi * c.n / (2.0 * c.half_length);
  if (c.dt * kmax * kmax > std::numbers::pi) {
    throw ConfigError(0, "time.dt: stability guard dt * k_max^2 <= pi violated (dt * k_max^2 = " +
                             format_double(c.dt * kmax * kmax) + ")");
  }
  if (c.schedule == Schedule::Uniform) {
    const double steps = c.t_end / c.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps) invalid("time.dt", "t_end an integer multiple of dt");
    if (c.samples < 1) invalid("time.samples", "samples >= 1");
  } else {
    if (c.samples_per_octave < 1) invalid("time.samples_per_octave", "samples_per_octave >= 1");
    if (c.octaves < 1 || c.octaves > 60) invalid("time.octaves", "1 <= octaves <= 60");
  }

  if (!std::isfinite(c.amplitude)) invalid("data.amplitude", "finite amplitude");
  if (!(c.width > 0.0) || !std::isfinite(c.width)) invalid("data.width", "width > 0");
  if (c.data_alpha < 0.0 || !std::isfinite(c.data_alpha)) invalid("data.alpha", "alpha >= 0");
  if (!std::isfinite(c.b)) invalid("data.b", "finite b");
  const bool soliton = c.family == Family::Soliton ||
                       (c.family == Family::Oscillating && c.base_family == Family::Soliton);
  if (soliton && p.d != 1) invalid("data.family", "d = 1 for soliton data");
  if (c.family == Family::Oscillating) {
    const DataSpec spec = c.data_spec();
    const Field base = sample(*spec.base, Grid(p.d, c.n, c.half_length));
    if (!quadratic_phase_resolved(base, c.b)) {
      invalid("data.b", "a chirp resolved by the grid (|b| R_eff dx <= pi)");
    }
  }

  if (!(c.blowup_factor > 1.0)) invalid("tolerances.blowup_factor", "blowup_factor > 1");
  if (!(c.boundary_tol > 0.0) || !(c.boundary_tol < 1.0)) invalid("tolerances.boundary", "0 < boundary < 1");
  if (!(c.cauchy_tol >= 0.0) || !std::isfinite(c.cauchy_tol)) invalid("tolerances.cauchy", "cauchy >= 0");
  if (c.cauchy_stride < 1) invalid("tolerances.cauchy_stride", "cauchy_stride >= 1");

  if (!c.sweep_parameter.empty()) {
    bool ok = false;
    for (const char* k : kSweepable) ok = ok || c.sweep_parameter == k;
    if (!ok) invalid("sweep.parameter", "one of amplitude, width, b, alpha, lambda");
    if (c.sweep_values.empty()) invalid("sweep.values", "a non-empty list");
    for (double v : c.sweep_values) validate(with_parameter(c, c.sweep_parameter, v));
  } else if (!c.sweep_values.empty()) {
    invalid("sweep.parameter", "a parameter name when sweep.values is set");
  }
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value) {
  RunConfig c = cfg;
  c.sweep_parameter.clear();
  c.sweep_values.clear();
  if (name == "amplitude") {
    c.amplitude = value;
  } else if (name == "width") {
    c.width = value;
  } else if (name == "b") {
    c.b = value;
  } else if (name == "alpha") {
    c.params.alpha = value;
  } else if (name == "lambda") {
    c.params.lambda = value;
  } else {
    throw ConfigError(0, "sweep.parameter: unknown parameter " + name);
  }
  return c;
}

std::vector<std::string> resolved_lines(const RunConfig& c) {
  std::vector<std::string> out;
  auto add = [&](const char* key, const std::string& v) { out.push_back(std::string(key) + " = " + v); };
  auto num = [](double v) { return format_double(v); };
  add("params.d", std::to_string(c.params.d));
  add("params.alpha", num(c.params.alpha));
  add("params.lambda", num(c.params.lambda));
  add("params.seed", std::to_string(c.seed));
  add("grid.n", std::to_string(c.n));
  add("grid.half_length", num(c.half_length));
  add("time.t_end", num(c.t_end));
  add("time.dt", num(c.dt));
  add("time.schedule", c.schedule == Schedule::Uniform ? "uniform" : "octave");
  add("time.samples", std::to_string(c.samples));
  add("time.samples_per_octave", std::to_string(c.samples_per_octave));
  add("time.octaves", std::to_string(c.octaves));
  add("data.family", family_name(c.family));
  add("data.base", family_name(c.base_family));
  add("data.amplitude", num(c.amplitude));
  add("data.width", num(c.width));
  add("data.alpha", num(c.data_alpha > 0.0 ? c.data_alpha : c.params.alpha));
  add("data.b", num(c.b));
  add("tolerances.blowup_factor", num(c.blowup_factor));
  add("tolerances.boundary", num(c.boundary_tol));
  add("tolerances.cauchy", num(c.cauchy_tol));
  add("tolerances.cauchy_stride", std::to_string(c.cauchy_stride));
  add("outputs.prefix", c.prefix);
  add("outputs.plot", c.plot ? "true" : "false");
  add("outputs.scattering_state", c.scattering_state ? "true" : "false");
  if (!c.sweep_parameter.empty()) {
    add("sweep.parameter", c.sweep_parameter);
    std::string vals;
    for (double v : c.sweep_values) vals += (vals.empty() ? "" : ",") + num(v);
    add("sweep.values", vals);
  }
  return out;
}

}  // namespace nlsscat::cli
