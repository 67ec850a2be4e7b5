#include "nlsscat/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace nlsscat {
namespace {

void apply_phase(std::span<cplx> u, double scale, double alpha) {
  // scale = lambda * weight * dt
  if (scale == 0.0) return;
  if (alpha == 2.0) {
    for (auto& z : u) z *= std::polar(1.0, scale * std::norm(z));
  } else if (alpha == 4.0) {
    for (auto& z : u) {
      const double m = std::norm(z);
      z *= std::polar(1.0, scale * m * m);
    }
  } else {
    const double h = 0.5 * alpha;
    for (auto& z : u) z *= std::polar(1.0, scale * std::pow(std::norm(z), h));
  }
}

bool finite_span(std::span<const cplx> u) {
  for (cplx z : u) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

// Interval between two samples: m steps of size h.
struct Segment {
  long m;
  double h;
  double t_end;
};

class Driver {
 public:
  Driver(const Field& u0, const Params& p, Mode mode, const EvolveOptions& opts)
      : grid_(u0.grid()),
        p_(p),
        mode_(mode),
        opts_(opts),
        u_(u0.values().begin(), u0.values().end()),
        spec_(u0.size()),
        outer_(u0.size(), 0) {
    const double cut = (2.0 / 3.0) * grid_.k_max();
    const auto k = grid_.wavenumbers();
    for (std::size_t i = 0; i < outer_.size(); ++i) {
      for (int a = 0; a < grid_.dim(); ++a) {
        if (std::abs(k[grid_.axis_index(i, a)]) > cut) outer_[i] = 1;
      }
    }
  }

  Trajectory run(double t0, const std::vector<Segment>& segs) {
    Trajectory tr;
    tr.params = p_;
    tr.mode = mode_;
    if (!finite_span(u_)) throw std::invalid_argument("evolve: initial data not finite");
    record(tr, t0);
    grad0_ = std::sqrt(tr.rows.front().grad_l2_sq);

    double t = t0;
    for (const Segment& seg : segs) {
      tr.dt = std::max(tr.dt, seg.h);
      if (!advance(seg, t, tr)) return tr;
      t = seg.t_end;
      record(tr, t);
    }
    return tr;
  }

 private:
  void fft_fwd() {
    detail::fft_forward(grid_.dim(), grid_.points_per_axis(), u_.data(), spec_.data());
  }
  void fft_inv() {
    detail::fft_inverse(grid_.dim(), grid_.points_per_axis(), spec_.data(), u_.data());
    const double inv = 1.0 / static_cast<double>(u_.size());
    for (auto& z : u_) z *= inv;
  }

  double weight(double t, double h) const {
    return mode_ == Mode::Nonautonomous ? nonautonomous_weight(p_, t, h) : 1.0;
  }

  bool advance(const Segment& seg, double t, Trajectory& tr) {
    const auto& k2 = grid_.k_squared();
    std::vector<cplx> half(k2.size()), full(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) {
      half[i] = std::polar(1.0, -0.5 * k2[i] * seg.h);
      full[i] = half[i] * half[i];
    }
    const double nrm = grid_.cell_volume() / static_cast<double>(u_.size());
    const double limit = opts_.blowup_factor * grad0_;

    fft_fwd();
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] *= half[i];
    fft_inv();
    for (long j = 0; j < seg.m; ++j) {
      const double tj = t + j * seg.h;
      apply_phase(u_, p_.lambda * weight(tj, seg.h) * seg.h, p_.alpha);
      fft_fwd();
      double g2 = 0.0;
      double band = 0.0;
      for (std::size_t i = 0; i < spec_.size(); ++i) {
        const double w = k2[i] * std::norm(spec_[i]);
        g2 += w;
        if (outer_[i]) band += w;
      }
      DivergenceReason why = DivergenceReason::None;
      if (!std::isfinite(g2)) {
        why = DivergenceReason::NonFinite;
      } else if (grad0_ > 0.0) {
        const double grad = std::sqrt(g2 * nrm);
        if (grad > limit) {
          why = DivergenceReason::GradientThreshold;
        } else if (grad > opts_.resolution_growth * grad0_ &&
                   band > opts_.resolution_tol * g2) {
          why = DivergenceReason::ResolutionLost;
        }
      }
      const bool bad = why != DivergenceReason::None;
      const auto& mult = (j + 1 < seg.m) ? full : half;
      for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] *= mult[i];
      fft_inv();
      if (bad) {
        tr.diverged = true;
        tr.divergence_time = tj + seg.h;
        tr.divergence_reason = why;
        return false;
      }
    }
    return true;
  }

  void record(Trajectory& tr, double t) {
    Field f(grid_, u_);
    ObservableRow row;
    if (mode_ == Mode::Nonautonomous) {
      row = observe_pcx(f, t, p_, opts_.boundary_tol).row;
    } else {
      row = observe(f, t, p_, opts_.boundary_tol);
    }
    if (!row.valid) tr.domain_invalid = true;
    tr.times.push_back(t);
    tr.rows.push_back(row);
    if (opts_.store_fields) tr.fields.push_back(std::move(f));
  }

  Grid grid_;
  Params p_;
  Mode mode_;
  EvolveOptions opts_;
  std::vector<cplx> u_;
  std::vector<cplx> spec_;
  std::vector<char> outer_;
  double grad0_ = 0.0;
};

void check_options(const EvolveOptions& opts) {
  if (!(opts.resolution_growth > 1.0) || !(opts.resolution_tol > 0.0)) {
    throw std::invalid_argument("evolve: resolution guard needs growth > 1 and tol > 0");
  }
  if (!(opts.blowup_factor > 1.0)) {
    throw std::invalid_argument("evolve: blowup_factor must exceed 1");
  }
  if (!(opts.boundary_tol >= 0.0)) {
    throw std::invalid_argument("evolve: boundary_tol must be nonnegative");
  }
}

std::vector<Segment> uniform_segments(double t0, double t1, double dt,
                                      int sample_every) {
  if (!(t1 > t0)) throw std::invalid_argument("evolve: t1 > t0 required");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt > 0 required");
  if (sample_every < 1) throw std::invalid_argument("evolve: sample_every >= 1 required");
  const double ratio = (t1 - t0) / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("evolve: dt must divide t1 - t0");
  }
  std::vector<Segment> segs;
  long done = 0;
  while (done < n) {
    const long m = std::min<long>(sample_every, n - done);
    done += m;
    const double te = (done == n) ? t1 : t0 + done * dt;
    segs.push_back({m, dt, te});
  }
  return segs;
}

}  // namespace

const char* to_string(DivergenceReason r) {
  switch (r) {
    case DivergenceReason::None: return "none";
    case DivergenceReason::NonFinite: return "non-finite";
    case DivergenceReason::GradientThreshold: return "gradient-threshold";
    case DivergenceReason::ResolutionLost: return "resolution-lost";
  }
  return "?";
}

Field nonlinear_phase_step(const Field& f, double dt, const Params& p,
                           double weight) {
  if (!(weight >= 0.0)) throw std::invalid_argument("nonlinear step: weight >= 0 required");
  if (!f.all_finite()) throw std::invalid_argument("nonlinear step: non-finite field");
  Field out = f;
  apply_phase(out.values(), p.lambda * weight * dt, p.alpha);
  return out;
}

double nonautonomous_weight(const Params& p, double s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("nonautonomous weight: h > 0 required");
  if (!(s >= 0.0) || !(s + h < 1.0)) {
    throw std::invalid_argument("nonautonomous weight: need 0 <= s and s + h < 1");
  }
  if (is_mass_critical(p)) return 1.0;
  const double q1 = pc_power(p) + 1.0;
  const double a = 1.0 - s;
  const double l = std::log1p(-h / a);  // log((1-s-h)/(1-s))
  if (std::abs(q1) < 1e-14) return -l / h;
  return -std::pow(a, q1) * std::expm1(q1 * l) / (q1 * h);
}

Field strang_step(const Field& f, double t, double dt, const Params& p,
                  Mode mode) {
  if (!(dt > 0.0)) throw std::invalid_argument("strang_step: dt > 0 required");
  if (!f.all_finite()) throw std::invalid_argument("strang_step: non-finite field");
  const double w = mode == Mode::Nonautonomous ? nonautonomous_weight(p, t, dt) : 1.0;
  Field g = free_propagate(f, 0.5 * dt);
  apply_phase(g.values(), p.lambda * w * dt, p.alpha);
  return free_propagate(g, 0.5 * dt);
}

Trajectory evolve(const Field& u0, double t0, double t1, double dt,
                  const Params& p, int sample_every, const EvolveOptions& opts) {
  validate(p);
  check_options(opts);
  Driver drv(u0, p, Mode::Autonomous, opts);
  return drv.run(t0, uniform_segments(t0, t1, dt, sample_every));
}

Trajectory evolve_schedule(const Field& u0, double t0,
                           const std::vector<double>& sample_times, double dt,
                           const Params& p, const EvolveOptions& opts,
                           Mode mode) {
  validate(p);
  check_options(opts);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt > 0 required");
  if (sample_times.empty()) throw std::invalid_argument("evolve: empty schedule");
  std::vector<Segment> segs;
  double prev = t0;
  for (double ts : sample_times) {
    if (!(ts > prev)) throw std::invalid_argument("evolve: schedule must increase strictly");
    const double span = ts - prev;
    const long m = std::max<long>(1, static_cast<long>(std::ceil(span / dt - 1e-9)));
    segs.push_back({m, span / m, ts});
    prev = ts;
  }
  if (mode == Mode::Nonautonomous && !(t0 >= 0.0 && prev < 1.0)) {
    throw std::invalid_argument("evolve: nonautonomous schedule must lie in [0, 1)");
  }
  Driver drv(u0, p, mode, opts);
  return drv.run(t0, segs);
}

Trajectory evolve_nonautonomous(const Field& v0, double s0, double s1,
                                double ds, const Params& p, int sample_every,
                                const EvolveOptions& opts) {
  validate(p);
  check_options(opts);
  if (!(s0 >= 0.0) || !(s1 < 1.0)) {
    throw std::invalid_argument("evolve_nonautonomous: need 0 <= s0 < s1 < 1, got s1 = " +
                                std::to_string(s1));
  }
  Driver drv(v0, p, Mode::Nonautonomous, opts);
  return drv.run(s0, uniform_segments(s0, s1, ds, sample_every));
}

}  // namespace nlsscat
