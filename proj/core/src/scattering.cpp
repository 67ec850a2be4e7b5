#include "nlsscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlsscat/errors.hpp"

namespace nlsscat {
namespace {

// Least-squares slope of log(v) against log(t) over samples with t >= t_lo.
std::optional<double> tail_log_slope(const TimeSeries& s, double t_lo) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.t[i] >= t_lo && s.t[i] > 0.0 && s.value[i] > 0.0) {
      lx.push_back(std::log(s.t[i]));
      ly.push_back(std::log(s.value[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  return sxy / sxx;
}

TimeSeries restrict_to(const TimeSeries& s, double t_max) {
  TimeSeries out(s.tag);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.t[i] <= t_max) out.push(s.t[i], s.value[i]);
  }
  return out;
}

double trapezoid_power(const TimeSeries& s, double power) {
  double acc = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    acc += 0.5 * (s.t[i] - s.t[i - 1]) *
           (std::pow(s.value[i], power) + std::pow(s.value[i - 1], power));
  }
  return acc;
}

constexpr double kExponentSlack = 0.02;

}  // namespace

SigmaNorm make_sigma_norm(double h1_sq, double weight_sq) {
  SigmaNorm n;
  n.h1_part = std::sqrt(std::max(h1_sq, 0.0));
  n.weight_part = std::sqrt(std::max(weight_sq, 0.0));
  n.total = std::hypot(n.h1_part, n.weight_part);
  return n;
}

SigmaNorm sigma_norm(const Field& f) { return make_sigma_norm(h1_norm_sq(f), variance(f)); }

SigmaNorm sigma_norm_free_profile(const Field& f, double t) {
  return make_sigma_norm(h1_norm_sq(f), pt_norm_sq(f, t));
}

Field inverse_free_profile(const Field& f, double t) { return free_propagate(f, -t); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Scattered: return "Scattered";
    case Verdict::BlowupDetected: return "BlowupDetected";
    case Verdict::NonScattering: return "NonScattering";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CauchyParts cauchy_parts(const Trajectory& traj) {
  if (traj.diverged) throw std::invalid_argument("cauchy series: trajectory diverged");
  if (traj.fields.size() != traj.times.size()) {
    throw std::invalid_argument("cauchy series: trajectory has no stored fields");
  }
  if (traj.fields.size() < 3) {
    throw InsufficientData("cauchy series: need at least 3 samples");
  }
  CauchyParts out;
  out.h1.tag = "cauchy_h1";
  out.weight.tag = "cauchy_weight";
  out.total.tag = "cauchy_sigma";
  for (std::size_t n = 1; n < traj.fields.size(); ++n) {
    const double t1 = traj.times[n - 1];
    const double t2 = traj.times[n];
    // e^{-it2 D}u2 - e^{-it1 D}u1 = e^{-it2 D}(u2 - e^{i(t2-t1) D}u1)
    const Field d = traj.fields[n] - free_propagate(traj.fields[n - 1], t2 - t1);
    const SigmaNorm s = sigma_norm_free_profile(d, t2);
    out.h1.push(t2, s.h1_part);
    out.weight.push(t2, s.weight_part);
    out.total.push(t2, s.total);
  }
  return out;
}

TimeSeries cauchy_series(const Trajectory& traj) { return cauchy_parts(traj).total; }

Trajectory thin(const Trajectory& traj, int stride) {
  if (stride < 1) throw std::invalid_argument("thin: stride >= 1 required");
  if (stride == 1) return traj;
  Trajectory out;
  out.params = traj.params;
  out.mode = traj.mode;
  out.diverged = traj.diverged;
  out.divergence_time = traj.divergence_time;
  out.domain_invalid = traj.domain_invalid;
  out.dt = traj.dt;
  const bool fields = traj.fields.size() == traj.times.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = traj.times.size(); i > 0; i -= std::min<std::size_t>(i, stride)) {
    keep.push_back(i - 1);
  }
  for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
    out.times.push_back(traj.times[*it]);
    out.rows.push_back(traj.rows[*it]);
    if (fields) out.fields.push_back(traj.fields[*it]);
  }
  return out;
}

double default_tolerance(const Trajectory& traj) {
  if (traj.fields.empty()) throw std::invalid_argument("default tolerance: no stored fields");
  return 1e-4 * sigma_norm_free_profile(traj.fields.front(), traj.times.front()).total;
}

RunReport classify_run(const Trajectory& traj, double tol, int cauchy_stride) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify_run: tol > 0 required");
  RunReport r;
  r.tolerance = tol;
  r.horizon = traj.times.empty() ? 0.0 : traj.times.back();
  r.domain_invalid = traj.domain_invalid;
  r.divergence_time = traj.divergence_time;

  const double t_last = r.horizon;
  try {
    const auto la = series_of(traj.rows, [](const ObservableRow& row) { return row.l_alpha2; },
                              "l_alpha2");
    r.decay_fit = fit_decay_exponent(la, 0.1 * t_last, t_last);
  } catch (const InsufficientData&) {
  } catch (const std::invalid_argument&) {
  }

  if (traj.diverged) {
    r.verdict = Verdict::BlowupDetected;
    return r;
  }
  try {
    r.cauchy_series = cauchy_series(cauchy_stride > 1 ? thin(traj, cauchy_stride) : traj);
  } catch (const InsufficientData&) {
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  const auto& inc = r.cauchy_series;
  const double t_end = inc.t.back();
  auto slope = tail_log_slope(inc, 0.1 * t_end);
  if (!slope) slope = tail_log_slope(inc, inc.t[inc.size() - 2]);
  r.tail_slope = slope.value_or(std::numeric_limits<double>::quiet_NaN());

  if (traj.domain_invalid) {
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  if (inc.value.back() < tol) {
    r.verdict = Verdict::Scattered;
    r.scattering_state = inverse_free_profile(traj.fields.back(), traj.times.back());
    return r;
  }
  bool all_high = true;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (inc.t[i] >= 0.1 * t_end && inc.value[i] <= 10.0 * tol) all_high = false;
  }
  if (slope && *slope > kPlateauSlope && all_high) {
    r.verdict = Verdict::NonScattering;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

RapidDecay rapid_decay_check(const TimeSeries& series, const ExponentTable& table,
                             double alpha) {
  if (alpha < table.alpha_crit * (1.0 - 1e-9)) {
    throw std::invalid_argument("rapid decay: alpha >= alpha(d) required");
  }
  if (series.empty()) throw InsufficientHorizon("rapid decay: empty series");
  for (double t : series.t) {
    if (!(t > 0.0)) throw std::invalid_argument("rapid decay: times must be positive");
  }
  const double T = series.t.back();
  const TimeSeries half = restrict_to(series, 0.5 * T);
  if (half.size() < 2) {
    throw InsufficientHorizon("rapid decay: fewer than two samples up to half the horizon");
  }
  RapidDecay r;
  const bool weak = std::abs(alpha - table.alpha_crit) <= 1e-9 * table.alpha_crit;
  if (weak) {
    r.branch = "weak";
    const double full = weak_lorentz_time_norm(series, table.a).value;
    const double part = weak_lorentz_time_norm(half, table.a).value;
    r.norm_value = full;
    r.horizon_ratio = part > 0.0 ? full / part : (full > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  } else {
    r.branch = "strong";
    const double full = trapezoid_power(series, table.a);
    const double part = trapezoid_power(half, table.a);
    r.norm_value = std::pow(full, 1.0 / table.a);
    r.horizon_ratio = part > 0.0 ? full / part : (full > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  }
  r.is_rapid = r.horizon_ratio <= kRapidRatio;
  return r;
}

LowerBoundReport lower_bound_compare(const TimeSeries& series, const ExponentTable& table,
                                     const Params& p, const RunReport& report,
                                     std::optional<double> theta_override) {
  LowerBoundReport out;
  double theta = theta_override ? *theta_override : table.theta;
  if (!std::isfinite(theta)) {
    out.note = "theta not fixed for this dimension; pass it explicitly";
    return out;
  }
  const bool clamped = theta <= 0.0;
  if (clamped) theta = 0.0;
  out.theta = theta;
  if (!(p.lambda > 0.0)) {
    out.note = "defocusing coupling; bounds stated for lambda > 0";
  } else if (clamped) {
    out.note = "theta <= 0; bound evaluated with theta = 0";
  }
  out.informational = report.verdict == Verdict::Scattered || !(p.lambda > 0.0);
  const bool pointwise = p.alpha * p.d <= 4.0 * (1.0 + 1e-12);
  out.form = pointwise ? "pointwise" : "integral";
  if (series.size() < 2) {
    out.note = "series too short";
    return out;
  }
  const double T = series.t.back();
  try {
    if (pointwise) {
      out.bound_exponent = 2.0 * (1.0 - theta) / (p.alpha + 2.0);
      out.fitted_exponent = fit_decay_exponent(series, 0.1 * T, T).exponent;
      // A larger decay exponent than the bound's means faster decay.
      out.consistent = out.fitted_exponent <= out.bound_exponent + kExponentSlack;
    } else {
      out.bound_exponent = 2.0 * theta;
      TimeSeries cumulative("lower_bound_integral");
      double acc = 0.0;
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) {
          const double f0 = (1.0 + series.t[i - 1]) * std::pow(series.value[i - 1], p.alpha + 2.0);
          const double f1 = (1.0 + series.t[i]) * std::pow(series.value[i], p.alpha + 2.0);
          acc += 0.5 * (series.t[i] - series.t[i - 1]) * (f0 + f1);
        }
        cumulative.push(1.0 + series.t[i], acc);
      }
      const double growth = -fit_decay_exponent(cumulative, 0.1 * (1.0 + T), 1.0 + T).exponent;
      out.fitted_exponent = growth;
      out.consistent = growth >= out.bound_exponent - kExponentSlack;
    }
  } catch (const InsufficientData& e) {
    out.note = e.what();
    return out;
  }
  out.applicable = true;
  if (report.verdict == Verdict::BlowupDetected) {
    out.note = "solution not global; bound checked on the computed interval only";
  }
  out.contradiction = !out.informational && !out.consistent &&
                      (report.verdict == Verdict::NonScattering ||
                       report.verdict == Verdict::BlowupDetected);
  return out;
}

ConvergenceSeries convergence_to_free(const Trajectory& traj, const Field& u_plus) {
  if (traj.fields.size() != traj.times.size()) {
    throw std::invalid_argument("convergence_to_free: trajectory has no stored fields");
  }
  ConvergenceSeries out;
  out.total.tag = "free_gap_sigma";
  out.h1.tag = "free_gap_h1";
  out.weight.tag = "free_gap_weight";
  for (std::size_t n = 0; n < traj.fields.size(); ++n) {
    const double t = traj.times[n];
    if (!(t > 0.0)) continue;
    const Field w = inverse_free_profile(traj.fields[n], t) - u_plus;
    const SigmaNorm s = make_sigma_norm(h1_norm_sq(w), pt_norm_sq(w, -t));
    out.total.push(t, s.total);
    out.h1.push(t, s.h1_part);
    out.weight.push(t, s.weight_part);
  }
  return out;
}

}  // namespace nlsscat
