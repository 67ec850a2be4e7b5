#pragma once

#include <optional>
#include <string>

#include "nlsscat/dynamics.hpp"
#include "nlsscat/observables.hpp"
#include "nlsscat/thresholds.hpp"

namespace nlsscat {

struct SigmaNorm {
  double h1_part = 0.0;      // ||w||_{H^1}
  double weight_part = 0.0;  // ||x w||_2
  double total = 0.0;
};

SigmaNorm make_sigma_norm(double h1_sq, double weight_sq);

/// Sigma norm of f itself (weight by direct quadrature).
SigmaNorm sigma_norm(const Field& f);

/// Sigma norm of e^{-it Delta} f without forming it: the H^1 part is that of
/// f and the weight is ||(x + 2it grad) f||.
SigmaNorm sigma_norm_free_profile(const Field& f, double t);

/// e^{-it Delta} f.
Field inverse_free_profile(const Field& f, double t);

enum class Verdict { Scattered, BlowupDetected, NonScattering, Inconclusive };
const char* to_string(Verdict v);

struct RapidDecay {
  bool is_rapid = false;
  double norm_value = 0.0;
  /// "weak" at alpha = alpha(d), "strong" above.
  std::string branch;
  /// Estimate at the full horizon divided by the estimate at half of it.
  double horizon_ratio = 0.0;
};

struct LowerBoundReport {
  bool applicable = false;
  /// Scattered runs fall outside the hypotheses; the comparison is reported
  /// without a verdict.
  bool informational = false;
  /// "pointwise" (alpha <= 4/d) or "integral" (alpha > 4/d).
  std::string form;
  double theta = 0.0;
  /// Pointwise form: decay rate 2(1-theta)/(alpha+2) of the lower bound.
  /// Integral form: growth exponent 2 theta.
  double bound_exponent = 0.0;
  /// Pointwise form: fitted decay exponent of ||u||_{alpha+2}.
  /// Integral form: fitted growth exponent of int_0^t (1+s)||u||^{alpha+2}.
  double fitted_exponent = 0.0;
  bool consistent = true;
  bool contradiction = false;
  std::string note;
};

struct RunReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Field> scattering_state;
  TimeSeries cauchy_series;
  std::optional<DecayFit> decay_fit;
  std::optional<RapidDecay> rapid_decay;
  std::optional<LowerBoundReport> lower_bound;
  double tolerance = 0.0;
  double horizon = 0.0;
  /// log-log slope of the Cauchy increments over the last decade.
  double tail_slope = 0.0;
  bool domain_invalid = false;
  std::optional<double> divergence_time;
};

/// Sigma-norm increments ||e^{-it_{n+1}Delta}u(t_{n+1}) - e^{-it_n Delta}u(t_n)||
/// between consecutive samples, tagged with t_{n+1}. Requires stored fields
/// and at least three samples (InsufficientData otherwise).
TimeSeries cauchy_series(const Trajectory& traj);

/// Same increments split into their H^1 and weighted parts.
struct CauchyParts {
  TimeSeries h1;
  TimeSeries weight;
  TimeSeries total;
};
CauchyParts cauchy_parts(const Trajectory& traj);

/// Keeps every stride-th sample counting back from the last one.
Trajectory thin(const Trajectory& traj, int stride);

/// 1e-4 times the Sigma norm of the first sample (as a free profile).
double default_tolerance(const Trajectory& traj);

/// Slope above which the Cauchy tail counts as a plateau.
inline constexpr double kPlateauSlope = -0.05;

/// BlowupDetected when the trajectory diverged; Scattered when the last
/// Cauchy increment is below tol and no sample left the box; NonScattering
/// when the last-decade log-log slope of the increments exceeds
/// kPlateauSlope and every last-decade increment exceeds 10 tol;
/// Inconclusive otherwise. The decay fit of ||u||_{alpha+2} over the last
/// decade is attached when available. With cauchy_stride > 1 the increments
/// are taken between every stride-th sample (see thin) while the decay fit
/// still sees every row.
RunReport classify_run(const Trajectory& traj, double tol, int cauchy_stride = 1);

/// Rapid-decay test on the ||u(t)||_{alpha+2} series. At alpha = alpha(d)
/// the weak L^{a,inf} estimate is compared at horizons T/2 and T; above
/// alpha(d) the trapezoidal L^a time integral is. The series counts as
/// rapidly decaying when the ratio is at most 1.02. Throws
/// InsufficientHorizon when fewer than two samples lie in (0, T/2], and
/// std::invalid_argument when alpha < alpha(d).
RapidDecay rapid_decay_check(const TimeSeries& l_alpha2_series,
                             const ExponentTable& table, double alpha);

inline constexpr double kRapidRatio = 1.02;

/// Compares the decay of ||u(t)||_{alpha+2} against the lower bounds valid
/// for focusing global solutions that do not scatter. theta_override
/// supplies theta where the table leaves it open (d = 2).
LowerBoundReport lower_bound_compare(const TimeSeries& l_alpha2_series,
                                     const ExponentTable& table, const Params& p,
                                     const RunReport& report,
                                     std::optional<double> theta_override = std::nullopt);

struct ConvergenceSeries {
  TimeSeries total;
  TimeSeries h1;
  TimeSeries weight;
};

/// ||u(t_n) - e^{it_n Delta} u_plus||_Sigma at every stored sample with
/// t_n > 0. With w = e^{-it Delta}u(t) - u_plus the H^1 part is ||w||_{H^1}
/// and the weighted part ||(x - 2it grad) w||.
ConvergenceSeries convergence_to_free(const Trajectory& traj, const Field& u_plus);

}  // namespace nlsscat
