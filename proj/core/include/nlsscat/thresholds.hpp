#pragma once

#include "nlsscat/groundstate.hpp"
#include "nlsscat/observables.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat {

/// Critical exponents for (d, alpha). Entries that do not exist for the
/// given pair are NaN with the matching flag cleared.
struct ExponentTable {
  int d = 1;
  double alpha = 0.0;
  double alpha_crit = 0.0;   // positive root of d x^2 + (d-2) x - 4
  double alpha_small = 0.0;  // positive root of d x^2 + d x - 4
  double mass_crit = 0.0;    // 4/d
  double energy_crit = 0.0;  // 4/(d-2); +inf for d <= 2
  bool energy_crit_finite = false;
  double conv_bound = 0.0;  // 16/(3d+2)
  double sigma = 0.0;       // (4-(d-2)alpha)/(alpha d-4)
  double tau = 0.0;         // 2/(alpha d-4)
  bool sigma_tau_applicable = false;
  double beta = 0.0;  // (4-(d-2)alpha)/(2 alpha(alpha+2))
  /// (d+2)/4 - 1/alpha for d >= 3, 1 - 2/alpha for d = 1. For d = 2 any
  /// value in (0, 1 - 1/alpha) is admissible, so it is left NaN.
  double theta = 0.0;
  bool theta_applicable = false;
  double a = 0.0;    // 2 alpha(alpha+2)/(4-alpha(d-2))
  double mu0 = 0.0;  // 4(d+2)(alpha+2)/(alpha d^2)
  double nu0 = 0.0;  // (d+2)(alpha+2)/(alpha+d+2)
};

ExponentTable exponents(int d, double alpha);

enum class Regime { MassCritical, MassSupercritical, NotApplicable };

struct ThresholdVerdict {
  Regime regime = Regime::NotApplicable;
  /// In the mass-critical regime both booleans hold the single mass
  /// condition ||u0|| < lambda^{-1/alpha} ||Q||.
  bool below_mass_energy = false;
  bool below_mass_gradient = false;
  /// M^sigma E lambda^{2 tau} / (M_Q^sigma E_Q); NaN in the critical regime.
  double eta0 = 0.0;
  bool admits_scattering_claim = false;
  /// lhs / rhs of the mass-gradient (supercritical) or mass (critical)
  /// comparison.
  double gradient_ratio = 0.0;
};

/// Relative margin for strict inequalities.
inline constexpr double kStrictMargin = 1e-9;

/// Compares u0 (through its observable row) against the ground state q of
/// the same (d, alpha). Returns regime NotApplicable for lambda < 0 or
/// alpha < 4/d.
ThresholdVerdict classify_threshold(const ObservableRow& u0_row,
                                    const GroundState& q, const Params& p);

/// 1/2 x^2 - C_GN/(alpha+2) x^{alpha d/2}.
double f_eval(double x, double c_gn, double alpha, int d);

const char* to_string(Regime r);

}  // namespace nlsscat
