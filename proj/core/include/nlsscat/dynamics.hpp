#pragma once

#include <optional>
#include <vector>

#include "nlsscat/grid.hpp"
#include "nlsscat/observables.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat {

/// Autonomous: i u_t + Delta u + lambda |u|^alpha u = 0.
/// Nonautonomous: i v_s + Delta v + lambda (1-s)^{(alpha d-4)/2} |v|^alpha v = 0
/// on 0 <= s < 1.
enum class Mode { Autonomous, Nonautonomous };

/// f * exp(i lambda weight |f|^alpha dt), pointwise.
Field nonlinear_phase_step(const Field& f, double dt, const Params& p,
                           double weight = 1.0);

/// (1/h) * integral_s^{s+h} (1-sigma)^{(alpha d-4)/2} d sigma, evaluated in
/// closed form. Exactly 1 when alpha d = 4. Requires s + h < 1.
double nonautonomous_weight(const Params& p, double s, double h);

/// One Strang step K(dt/2) N(dt) K(dt/2) starting at time t.
Field strang_step(const Field& f, double t, double dt, const Params& p,
                  Mode mode = Mode::Autonomous);

struct EvolveOptions {
  /// Halt when ||grad u|| exceeds this multiple of its initial value.
  double blowup_factor = 1e3;
  /// A collapsing solution outruns any fixed grid long before the factor
  /// above is reached. Once ||grad u|| has grown by resolution_growth, the
  /// run also halts when more than resolution_tol of the gradient power
  /// |k|^2 |u_k|^2 sits in the outer band (some |k_j| > 2/3 k_max).
  double resolution_growth = 10.0;
  double resolution_tol = 1e-3;
  double boundary_tol = 1e-6;
  bool store_fields = true;
};

enum class DivergenceReason { None, NonFinite, GradientThreshold, ResolutionLost };
const char* to_string(DivergenceReason r);

struct Trajectory {
  Params params;
  Mode mode = Mode::Autonomous;
  std::vector<double> times;
  std::vector<Field> fields;  // empty unless store_fields
  std::vector<ObservableRow> rows;
  bool diverged = false;
  std::optional<double> divergence_time;
  DivergenceReason divergence_reason = DivergenceReason::None;
  bool domain_invalid = false;
  /// Largest step actually used.
  double dt = 0.0;
};

/// Steps from t0 to t1 with fixed dt, recording a sample every sample_every
/// steps and at t1. (t1 - t0) must be an integer multiple of dt.
Trajectory evolve(const Field& u0, double t0, double t1, double dt,
                  const Params& p, int sample_every,
                  const EvolveOptions& opts = {});

/// Samples at t0 and at each entry of sample_times (strictly increasing,
/// all > t0). Each interval is split into the fewest equal steps not
/// exceeding dt.
Trajectory evolve_schedule(const Field& u0, double t0,
                           const std::vector<double>& sample_times, double dt,
                           const Params& p, const EvolveOptions& opts = {},
                           Mode mode = Mode::Autonomous);

/// As evolve for the transformed equation; rows carry E1 and E2. Requires
/// 0 <= s0 < s1 < 1.
Trajectory evolve_nonautonomous(const Field& v0, double s0, double s1,
                                double ds, const Params& p, int sample_every,
                                const EvolveOptions& opts = {});

}  // namespace nlsscat
