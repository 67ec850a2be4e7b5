#include "nlsscat/thresholds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlsscat {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Positive root of d x^2 + c x - 4.
double positive_root(int d, double c) {
  return (-c + std::sqrt(c * c + 16.0 * d)) / (2.0 * d);
}

bool strictly_below(double lhs, double rhs) {
  return lhs < rhs - kStrictMargin * std::abs(rhs);
}

}  // namespace

ExponentTable exponents(int d, double alpha) {
  if (d < 1 || d > 3) throw std::invalid_argument("exponents: d must be 1, 2 or 3");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("exponents: alpha > 0 required");
  }
  ExponentTable e;
  e.d = d;
  e.alpha = alpha;
  e.alpha_crit = positive_root(d, d - 2.0);
  e.alpha_small = positive_root(d, d);
  e.mass_crit = 4.0 / d;
  e.energy_crit_finite = d > 2;
  e.energy_crit = e.energy_crit_finite ? 4.0 / (d - 2) : std::numeric_limits<double>::infinity();
  e.conv_bound = 16.0 / (3.0 * d + 2.0);

  const double ad = alpha * d;
  const double top = 4.0 - (d - 2) * alpha;
  e.sigma_tau_applicable = std::abs(ad - 4.0) > 1e-12 * 4.0;
  e.sigma = e.sigma_tau_applicable ? top / (ad - 4.0) : kNaN;
  e.tau = e.sigma_tau_applicable ? 2.0 / (ad - 4.0) : kNaN;
  e.beta = top / (2.0 * alpha * (alpha + 2.0));
  if (d == 2) {
    e.theta = kNaN;
    e.theta_applicable = false;
  } else {
    e.theta = d == 1 ? 1.0 - 2.0 / alpha : (d + 2) / 4.0 - 1.0 / alpha;
    e.theta_applicable = true;
  }
  e.a = 2.0 * alpha * (alpha + 2.0) / top;
  e.mu0 = 4.0 * (d + 2) * (alpha + 2.0) / (alpha * d * d);
  e.nu0 = (d + 2) * (alpha + 2.0) / (alpha + d + 2.0);
  return e;
}

ThresholdVerdict classify_threshold(const ObservableRow& u0_row,
                                    const GroundState& q, const Params& p) {
  ThresholdVerdict v;
  const double ad = p.alpha * p.d;
  if (!(p.lambda > 0.0) || ad < 4.0 * (1.0 - 1e-12)) return v;
  if (q.params.d != p.d || std::abs(q.params.alpha - p.alpha) > 1e-12 * p.alpha) {
    throw std::invalid_argument("classify_threshold: ground state is for another (d, alpha)");
  }
  const double mq = l2_norm_sq(q.profile);
  const double gq = grad_l2_sq(q.profile);
  const double m = u0_row.mass;
  const double g = u0_row.grad_l2_sq;

  if (is_mass_critical(p)) {
    v.regime = Regime::MassCritical;
    const double lhs = std::sqrt(m);
    const double rhs = std::pow(p.lambda, -1.0 / p.alpha) * std::sqrt(mq);
    v.gradient_ratio = lhs / rhs;
    const bool below = strictly_below(lhs, rhs);
    v.below_mass_energy = below;
    v.below_mass_gradient = below;
    v.eta0 = kNaN;
    v.admits_scattering_claim = below;
    return v;
  }

  v.regime = Regime::MassSupercritical;
  const ExponentTable e = exponents(p.d, p.alpha);
  const double eq = 0.5 * gq - lp_integral(q.profile, p.alpha + 2.0) / (p.alpha + 2.0);
  const double me = (m > 0.0 ? std::pow(m, e.sigma) : 0.0) * u0_row.energy;
  const double meq = std::pow(mq, e.sigma) * eq;
  v.eta0 = me * std::pow(p.lambda, 2.0 * e.tau) / meq;
  v.below_mass_energy = strictly_below(me, std::pow(p.lambda, -2.0 * e.tau) * meq);

  const double lhs = (m > 0.0 ? std::pow(m, 0.5 * e.sigma) : 0.0) * std::sqrt(g);
  const double rhs = std::pow(p.lambda, -e.tau) * std::pow(mq, 0.5 * e.sigma) * std::sqrt(gq);
  v.gradient_ratio = lhs / rhs;
  v.below_mass_gradient = strictly_below(lhs, rhs);
  v.admits_scattering_claim = v.below_mass_energy && v.below_mass_gradient;
  return v;
}

double f_eval(double x, double c_gn, double alpha, int d) {
  if (!(x >= 0.0)) throw std::invalid_argument("f_eval: x >= 0 required");
  return 0.5 * x * x - c_gn / (alpha + 2.0) * std::pow(x, 0.5 * alpha * d);
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::MassCritical: return "MassCritical";
    case Regime::MassSupercritical: return "MassSupercritical";
    case Regime::NotApplicable: return "NotApplicable";
  }
  return "?";
}

}  // namespace nlsscat
