#include "nlsscat/initialdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "nlsscat/groundstate.hpp"
#include "nlsscat/observables.hpp"

namespace nlsscat {
namespace {

Field chirp(const Field& f, double b) {
  const auto& r2 = f.grid().radius_squared();
  Field out = f;
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::polar(1.0, 0.25 * b * r2[i]);
  return out;
}

double lnu_norm(const std::vector<double>& modulus, double nu, double vol) {
  double s = 0.0;
  for (double m : modulus) s += std::pow(m, nu);
  return std::pow(s * vol, 1.0 / nu);
}

// ||e^{i tau Delta} f||_nu and ||e^{i tau Delta}(x f)||_nu for one tau.
std::pair<double, double> propagated_norms(const Field& f, double tau, double nu) {
  const Grid& g = f.grid();
  const auto x = g.coords();
  const double vol = g.cell_volume();
  const Field u = free_propagate(f, tau);
  std::vector<double> mod(f.size());
  for (std::size_t i = 0; i < mod.size(); ++i) mod[i] = std::abs(u[i]);
  const double plain = lnu_norm(mod, nu, vol);

  std::vector<double> sq(f.size(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    Field xf = f;
    auto v = xf.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= x[g.axis_index(i, a)];
    const Field w = free_propagate(xf, tau);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] += std::norm(w[i]);
  }
  for (std::size_t i = 0; i < sq.size(); ++i) mod[i] = std::sqrt(sq[i]);
  return {plain, lnu_norm(mod, nu, vol)};
}

std::vector<double> unit_ladder(double T, int n_samples) {
  if (!(T > 1.0) || !std::isfinite(T)) {
    throw std::invalid_argument("decay functional: horizon T > 1 required");
  }
  if (n_samples < 2) throw std::invalid_argument("decay functional: n_samples >= 2 required");
  std::vector<double> ts(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    ts[k] = std::pow(T, static_cast<double>(k) / (n_samples - 1));
  }
  return ts;
}

}  // namespace

void validate(const DataSpec& spec) {
  if (!std::isfinite(spec.amplitude)) throw std::invalid_argument("data: amplitude must be finite");
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) {
    throw std::invalid_argument("data: width > 0 required");
  }
  if (spec.family == Family::Oscillating) {
    if (!spec.base) throw std::invalid_argument("data: oscillating data needs a base spec");
    if (!std::isfinite(spec.b)) throw std::invalid_argument("data: b must be finite");
    validate(*spec.base);
  }
  if (spec.family == Family::Soliton && !(spec.alpha > 0.0)) {
    throw std::invalid_argument("data: soliton needs alpha > 0");
  }
  if (spec.family == Family::Custom && !spec.custom) {
    throw std::invalid_argument("data: custom family needs a callable");
  }
}

Field sample(const DataSpec& spec, const Grid& g) {
  validate(spec);
  switch (spec.family) {
    case Family::Gaussian:
      return gaussian(g, spec.amplitude, spec.width);
    case Family::Soliton: {
      if (g.dim() != 1) throw std::invalid_argument("data: soliton family is 1D only");
      const Grid unit = g.rescaled(1.0 / spec.width);
      Field q = soliton_closed_form_1d(spec.alpha, unit);
      std::vector<cplx> vals(q.values().begin(), q.values().end());
      for (auto& z : vals) z *= spec.amplitude;
      return Field(g, std::move(vals));
    }
    case Family::Oscillating:
      return oscillating_data(sample(*spec.base, g), spec.b);
    case Family::Custom: {
      Field f(g);
      const auto x = g.coords();
      double pt[3] = {0.0, 0.0, 0.0};
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (int a = 0; a < g.dim(); ++a) pt[a] = x[g.axis_index(i, a)];
        f[i] = spec.amplitude * spec.custom(pt, g.dim());
      }
      return f;
    }
  }
  throw std::invalid_argument("data: unknown family");
}

Field gaussian(const Grid& g, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian: width > 0 required");
  const auto& r2 = g.radius_squared();
  Field f(g);
  const double c = 1.0 / (2.0 * width * width);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = amplitude * std::exp(-c * r2[i]);
  return f;
}

bool gaussian_too_wide(const Grid& g, double width) { return width > 0.25 * g.half_length(); }

Field pcx_phase(const Field& f, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("pcx_phase: sign must be +1 or -1");
  return chirp(f, static_cast<double>(sign));
}

Field oscillating_data(const Field& phi, double b) {
  if (!phi.all_finite()) throw std::invalid_argument("oscillating_data: non-finite phi");
  return free_propagate(chirp(phi, b), 1.0);
}

double effective_radius(const Field& phi, double tail) {
  const auto& r2 = phi.grid().radius_squared();
  std::vector<std::size_t> order(phi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r2[a] > r2[b]; });
  double total = 0.0;
  for (cplx z : phi.values()) total += std::norm(z);
  if (total == 0.0) return 0.0;
  double outer = 0.0;
  for (std::size_t i : order) {
    outer += std::norm(phi[i]);
    if (outer >= tail * total) return std::sqrt(r2[i]);
  }
  return 0.0;
}

bool quadratic_phase_resolved(const Field& phi, double b) {
  return std::abs(b) * effective_radius(phi) * phi.grid().spacing() <= std::numbers::pi;
}

double oscillating_identity_residual(const DataSpec& phi, const Grid& g, double b, double t) {
  const double c = 1.0 + b * t;
  if (!(c > 0.0)) throw std::invalid_argument("oscillating identity: 1 + bt > 0 required");
  const Grid big = g.rescaled(c);

  const Field lhs = free_propagate(chirp(sample(phi, big), b), t);

  const Field w = free_propagate(sample(phi, g), t / c);
  const auto& r2 = big.radius_squared();
  const double amp = std::pow(c, -0.5 * g.dim());
  std::vector<cplx> rhs(w.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    rhs[i] = amp * w[i] * std::polar(1.0, 0.25 * b * r2[i] / c);
  }
  const Field diff = lhs - Field(big, std::move(rhs));
  const double ref = l2_norm_sq(lhs);
  return ref > 0.0 ? std::sqrt(l2_norm_sq(diff) / ref) : std::sqrt(l2_norm_sq(diff));
}

double oscillating_decay_functional(const Field& phi, double b, double T,
                                    int n_samples, double mu0, double nu0) {
  if (!(b > 0.0)) throw std::invalid_argument("decay functional: b > 0 required");
  const double e = 2.0 / mu0;
  double best = 0.0;
  for (double t : unit_ladder(T, n_samples)) {
    const double tau = t / (1.0 + b * t);
    const auto [plain, weighted] = propagated_norms(phi, tau, nu0);
    best = std::max(best, std::pow(tau, e) * (plain + weighted));
  }
  return best;
}

double oscillating_decay_functional_direct(const Field& phi, double b, double T,
                                           int n_samples, double mu0, double nu0) {
  const double e = 2.0 / mu0;
  const Field chirped = chirp(phi, b);
  double best = 0.0;
  for (double t : unit_ladder(T, n_samples)) {
    const auto [plain, weighted] = propagated_norms(chirped, t, nu0);
    best = std::max(best, std::pow(t, e) * (plain + weighted));
  }
  return best;
}

}  // namespace nlsscat
