#include "nlsscat/pcx.hpp"

#include <cmath>
#include <stdexcept>

#include "nlsscat/observables.hpp"

namespace nlsscat {
namespace {

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

PcxPair to_pcx(const Field& u, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("to_pcx: t >= 0 required");
  if (!u.all_finite()) throw std::invalid_argument("to_pcx: non-finite field");
  const Grid& g = u.grid();
  const double a = 1.0 + t;
  const double amp = std::pow(a, 0.5 * g.dim());
  const auto& r2 = g.radius_squared();
  std::vector<cplx> v(u.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = amp * u[i] * std::polar(1.0, -r2[i] / (4.0 * a));
  }
  Grid gv = t == 0.0 ? g : g.rescaled(1.0 / a);
  return PcxPair{u, t, Field(std::move(gv), std::move(v)), t / a};
}

PcxInverse from_pcx(const Field& v, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("from_pcx: s must lie in [0, 1)");
  if (!v.all_finite()) throw std::invalid_argument("from_pcx: non-finite field");
  const Grid& g = v.grid();
  const double c = 1.0 - s;
  const double amp = std::pow(c, 0.5 * g.dim());
  const auto& r2 = g.radius_squared();
  std::vector<cplx> u(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = amp * v[i] * std::polar(1.0, r2[i] / (4.0 * c));
  }
  Grid gu = s == 0.0 ? g : g.rescaled(1.0 / c);
  return PcxInverse{Field(std::move(gu), std::move(u)), s / c};
}

PcxResiduals identity_residuals(const PcxPair& pair, const Params& p,
                                double boundary_tol) {
  const Field& u = pair.u_field;
  const Field& v = pair.v_field;
  PcxResiduals r;
  r.valid = boundary_mass_fraction(u) <= boundary_tol &&
            boundary_mass_fraction(v) <= boundary_tol;
  const int d = u.grid().dim();
  const double lu = lp_integral(u, p.alpha + 2.0);
  const double lv = lp_integral(v, p.alpha + 2.0);
  r.r1 = rel(lv, std::pow(1.0 + pair.t, 0.5 * p.alpha * d) * lu);
  r.r2 = rel(grad_l2_sq(v), 0.25 * pt_norm_sq(u, 1.0 + pair.t));
  r.r3 = rel(grad_l2_sq(u), 0.25 * pt_norm_sq(v, -(1.0 - pair.s)));
  return r;
}

}  // namespace nlsscat
