#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlsscat/initialdata.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat::cli {

/// Malformed document or a value that fails validation. line is 0 when the
/// problem is not tied to one line (a missing or inconsistent key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Schedule { Uniform, Octave };

struct RunConfig {
  Params params{1, 3.0, -1.0};
  long long seed = 0;

  int n = 256;
  double half_length = 20.0;

  double t_end = 10.0;
  double dt = 1e-3;
  Schedule schedule = Schedule::Octave;
  int samples = 100;  // uniform schedule
  int samples_per_octave = 4;
  int octaves = 12;

  // Oscillating data wraps base_family with the remaining fields.
  Family family = Family::Gaussian;
  Family base_family = Family::Gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  double data_alpha = 0.0;  // soliton profile power; 0 means params.alpha
  double b = 0.0;

  double blowup_factor = 1e3;
  double boundary_tol = 1e-6;
  double cauchy_tol = 0.0;  // 0: 1e-4 of the initial Sigma norm
  int cauchy_stride = 4;

  std::string prefix = "run";
  bool plot = true;
  bool scattering_state = true;

  std::string sweep_parameter;
  std::vector<double> sweep_values;

  DataSpec data_spec() const;
  /// Sample times for the octave schedule: t_end 2^{-k/m}, k = m*octaves..0.
  std::vector<double> octave_times() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Throws ConfigError naming the key and the violated constraint.
void validate(const RunConfig& cfg);

/// Applies one sweep lattice value to the named parameter.
RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value);

/// "section.key = value" for every field, in document order.
std::vector<std::string> resolved_lines(const RunConfig& cfg);

}  // namespace nlsscat::cli
