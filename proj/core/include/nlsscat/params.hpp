#pragma once

namespace nlsscat {

/// Coefficients of i u_t + Delta u + lambda |u|^alpha u = 0 in dimension d.
struct Params {
  int d = 1;
  double alpha = 2.0;
  double lambda = 1.0;
};

/// Throws std::invalid_argument when d is outside {1,2,3}, alpha <= 0,
/// alpha >= 4/(d-2) for d = 3, or lambda is zero or non-finite.
void validate(const Params& p);

/// (alpha d - 4) / 2, the power of (1 - s) in the transformed equation.
double pc_power(const Params& p);

/// alpha d == 4 up to a relative 1e-12.
bool is_mass_critical(const Params& p);

}  // namespace nlsscat
