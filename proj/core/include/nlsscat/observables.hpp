#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsscat/grid.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat {

/// Scalar diagnostics of one sample. e1/e2 are set only for samples of the
/// transformed (nonautonomous) equation.
struct ObservableRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double grad_l2_sq = 0.0;
  double l_alpha2 = 0.0;  // ||u||_{L^{alpha+2}}
  double variance = 0.0;  // ||x u||^2
  double pt_norm_sq = 0.0;
  double n_monitor = 0.0;
  double boundary_fraction = 0.0;
  bool valid = true;
  std::optional<double> e1;
  std::optional<double> e2;
};

/// Sampled scalar observable. push() enforces strictly increasing times and
/// finite values.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;
  std::string tag;

  TimeSeries() = default;
  explicit TimeSeries(std::string tag_) : tag(std::move(tag_)) {}

  void push(double time, double v);
  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
};

// Building blocks. Integrals use the uniform cell volume.
double grad_l2_sq(const Field& f);
/// Integral of |f|^p.
double lp_integral(const Field& f, double p);
double variance(const Field& f);
/// ||(x + 2 i t grad) f||^2. For t != 0 this goes through
/// 4 t^2 ||grad(e^{-i|x|^2/4t} f)||^2; when that phase is too steep for the
/// grid (L / 2|t| above k_max / 2) the direct product form is used instead.
double pt_norm_sq(const Field& f, double t);
/// Phase-gradient route only, regardless of resolution.
double pt_norm_sq_phase(const Field& f, double t);
/// Direct route ||x f + 2 i t grad f||^2 with a spectral gradient.
double pt_norm_sq_direct(const Field& f, double t);
double energy(const Field& f, const Params& p);
/// ||f||_{H^1}^2 = ||f||^2 + ||grad f||^2.
double h1_norm_sq(const Field& f);

ObservableRow observe(const Field& f, double t, const Params& p,
                      double boundary_tol = 1e-6);

struct PcxObservation {
  double e1 = 0.0;
  double e2 = 0.0;
  ObservableRow row;
};

/// E1(s), E2(s) of the transformed equation plus the plain row of v(s).
/// Throws std::invalid_argument unless 0 <= s < 1.
PcxObservation observe_pcx(const Field& v, double s, const Params& p,
                           double boundary_tol = 1e-6);

struct WeakNorm {
  double value = 0.0;
  /// True when the series is non-increasing, where the sample maximum is the
  /// exact weak norm rather than an estimate.
  bool exact = false;
};

/// max_i value_i * t_i^{1/a}.
WeakNorm weak_lorentz_time_norm(const TimeSeries& series, double a);

/// max_i t_i^beta * value_i.
double xinfty_norm(const TimeSeries& series, double beta);

/// Time ladder t_k = T * 2^{-k/4}, k = 0..n_samples-1, ascending.
std::vector<double> winfty_ladder(double T, int n_samples);

/// max over winfty_ladder(T, n_samples) of t^beta ||e^{it Delta} u0||_{alpha+2}.
double winfty_norm(const Field& u0, double T, int n_samples, double beta,
                   double alpha);

struct DecayFit {
  double exponent = 0.0;  // value ~ C t^{-exponent}
  double r_squared = 0.0;
  int samples = 0;
};

/// Log-log least squares over samples with t in [t_lo, t_hi]. Throws
/// InsufficientData with fewer than five usable samples.
DecayFit fit_decay_exponent(const TimeSeries& series, double t_lo, double t_hi);

/// Extracts one column of a row sequence as a TimeSeries, skipping t <= 0
/// when positive_times is set.
template <class Getter>
TimeSeries series_of(const std::vector<ObservableRow>& rows, Getter&& get,
                     std::string tag, bool positive_times = true) {
  TimeSeries s(std::move(tag));
  for (const auto& r : rows) {
    if (positive_times && r.t <= 0.0) continue;
    s.push(r.t, get(r));
  }
  return s;
}

}  // namespace nlsscat
