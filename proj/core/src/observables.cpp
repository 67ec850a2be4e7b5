#include "nlsscat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlsscat/errors.hpp"

namespace nlsscat {

void TimeSeries::push(double time, double v) {
  if (!std::isfinite(time) || !std::isfinite(v)) {
    throw std::invalid_argument("time series: non-finite entry");
  }
  if (!t.empty() && time <= t.back()) {
    throw std::invalid_argument("time series: times must increase strictly");
  }
  t.push_back(time);
  value.push_back(v);
}

double grad_l2_sq(const Field& f) {
  const auto spec = to_spectrum(f);
  const auto& k2 = f.grid().k_squared();
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) s += k2[i] * std::norm(spec[i]);
  return s * f.grid().cell_volume() / static_cast<double>(f.size());
}

double lp_integral(const Field& f, double p) {
  double s = 0.0;
  for (cplx z : f.values()) s += std::pow(std::abs(z), p);
  return s * f.grid().cell_volume();
}

double variance(const Field& f) {
  const auto& r2 = f.grid().radius_squared();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += r2[i] * std::norm(f[i]);
  return s * f.grid().cell_volume();
}

double h1_norm_sq(const Field& f) { return l2_norm_sq(f) + grad_l2_sq(f); }

double pt_norm_sq_phase(const Field& f, double t) {
  if (t == 0.0) return variance(f);
  const auto& r2 = f.grid().radius_squared();
  Field g = f;
  auto vals = g.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] *= std::polar(1.0, -r2[i] / (4.0 * t));
  }
  return 4.0 * t * t * grad_l2_sq(g);
}

double pt_norm_sq_direct(const Field& f, double t) {
  const Grid& g = f.grid();
  const auto spec = to_spectrum(f);
  const auto x = g.coords();
  const auto k = g.wavenumbers();
  std::vector<cplx> acc(f.size(), cplx{});
  double total = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    std::vector<cplx> ds(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
      ds[i] = cplx(0.0, k[g.axis_index(i, axis)]) * spec[i];
    }
    const Field grad = from_spectrum(g, std::move(ds));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const cplx w = x[g.axis_index(i, axis)] * f[i] + cplx(0.0, 2.0 * t) * grad[i];
      total += std::norm(w);
    }
  }
  return total * g.cell_volume();
}

double pt_norm_sq(const Field& f, double t) {
  if (t == 0.0) return variance(f);
  const Grid& g = f.grid();
  const double slope = g.half_length() / (2.0 * std::abs(t));
  if (slope <= 0.5 * g.k_max()) return pt_norm_sq_phase(f, t);
  return pt_norm_sq_direct(f, t);
}

double energy(const Field& f, const Params& p) {
  return 0.5 * grad_l2_sq(f) -
         p.lambda / (p.alpha + 2.0) * lp_integral(f, p.alpha + 2.0);
}

ObservableRow observe(const Field& f, double t, const Params& p,
                      double boundary_tol) {
  if (!f.all_finite()) throw std::invalid_argument("observe: non-finite field");
  ObservableRow r;
  r.t = t;
  r.mass = l2_norm_sq(f);
  r.grad_l2_sq = grad_l2_sq(f);
  const double lp = lp_integral(f, p.alpha + 2.0);
  r.l_alpha2 = std::pow(lp, 1.0 / (p.alpha + 2.0));
  r.energy = 0.5 * r.grad_l2_sq - p.lambda / (p.alpha + 2.0) * lp;
  r.variance = variance(f);
  r.pt_norm_sq = pt_norm_sq(f, t);

  const double ad2 = 0.5 * p.alpha * p.d;
  const double bracket = 8.0 * p.lambda / (p.alpha + 2.0);
  if (t != 0.0) {
    const double at = std::abs(t);
    r.n_monitor = std::pow(at, ad2 - 2.0) * r.pt_norm_sq -
                  bracket * std::pow(at, ad2) * lp;
  } else if (ad2 > 2.0 || r.pt_norm_sq == 0.0) {
    r.n_monitor = 0.0;
  } else if (ad2 == 2.0) {
    r.n_monitor = r.pt_norm_sq;
  } else {
    r.n_monitor = std::numeric_limits<double>::infinity();
  }

  r.boundary_fraction = boundary_mass_fraction(f);
  r.valid = r.boundary_fraction <= boundary_tol;
  return r;
}

PcxObservation observe_pcx(const Field& v, double s, const Params& p,
                           double boundary_tol) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw std::invalid_argument("observe_pcx: s must lie in [0, 1)");
  }
  PcxObservation o;
  o.row = observe(v, s, p, boundary_tol);
  const double q = pc_power(p);
  const double lp = std::pow(o.row.l_alpha2, p.alpha + 2.0);
  const double c = p.lambda / (p.alpha + 2.0);
  o.e1 = 0.5 * o.row.grad_l2_sq - std::pow(1.0 - s, q) * c * lp;
  o.e2 = std::pow(1.0 - s, -q) * 0.5 * o.row.grad_l2_sq - c * lp;
  o.row.e1 = o.e1;
  o.row.e2 = o.e2;
  return o;
}

WeakNorm weak_lorentz_time_norm(const TimeSeries& series, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("weak norm: a > 0 required");
  if (series.empty()) throw std::invalid_argument("weak norm: empty series");
  WeakNorm w;
  w.value = 0.0;
  w.exact = true;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series.t[i] > 0.0)) {
      throw std::invalid_argument("weak norm: times must be positive");
    }
    w.value = std::max(w.value, series.value[i] * std::pow(series.t[i], 1.0 / a));
    if (i > 0 && series.value[i] > series.value[i - 1]) w.exact = false;
  }
  return w;
}

double xinfty_norm(const TimeSeries& series, double beta) {
  if (series.empty()) throw std::invalid_argument("X-infinity norm: empty series");
  double m = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series.t[i] > 0.0)) {
      throw std::invalid_argument("X-infinity norm: times must be positive");
    }
    m = std::max(m, std::pow(series.t[i], beta) * series.value[i]);
  }
  return m;
}

std::vector<double> winfty_ladder(double T, int n_samples) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("W-infinity ladder: T > 0 required");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("W-infinity ladder: n_samples >= 2 required");
  }
  std::vector<double> ts(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    ts[n_samples - 1 - k] = T * std::exp2(-0.25 * k);
  }
  return ts;
}

double winfty_norm(const Field& u0, double T, int n_samples, double beta,
                   double alpha) {
  const auto ts = winfty_ladder(T, n_samples);
  const auto spec = to_spectrum(u0);
  const auto& k2 = u0.grid().k_squared();
  double m = 0.0;
  for (double t : ts) {
    std::vector<cplx> s = spec;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= std::polar(1.0, -k2[i] * t);
    const Field u = from_spectrum(u0.grid(), std::move(s));
    const double n = std::pow(lp_integral(u, alpha + 2.0), 1.0 / (alpha + 2.0));
    m = std::max(m, std::pow(t, beta) * n);
  }
  return m;
}

DecayFit fit_decay_exponent(const TimeSeries& series, double t_lo, double t_hi) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.t[i];
    const double v = series.value[i];
    if (t >= t_lo && t <= t_hi && t > 0.0 && v > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(v));
    }
  }
  const std::size_t n = lx.size();
  if (n < 5) {
    throw InsufficientData("decay fit: need at least 5 positive samples in window, got " +
                           std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw InsufficientData("decay fit: window has a single time");
  DecayFit fit;
  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.samples = static_cast<int>(n);
  return fit;
}

}  // namespace nlsscat
