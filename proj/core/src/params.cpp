#include "nlsscat/params.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsscat {

void validate(const Params& p) {
  if (p.d < 1 || p.d > 3) {
    throw std::invalid_argument("params: d must be 1, 2 or 3");
  }
  if (!std::isfinite(p.alpha) || p.alpha <= 0.0) {
    throw std::invalid_argument("params: alpha > 0 required");
  }
  if (p.d >= 3 && p.alpha >= 4.0 / (p.d - 2)) {
    throw std::invalid_argument("params: alpha < 4/(d-2) required");
  }
  if (!std::isfinite(p.lambda) || p.lambda == 0.0) {
    throw std::invalid_argument("params: lambda must be finite and nonzero");
  }
}

double pc_power(const Params& p) { return 0.5 * (p.alpha * p.d - 4.0); }

bool is_mass_critical(const Params& p) {
  return std::abs(p.alpha * p.d - 4.0) <= 1e-12 * 4.0;
}

}  // namespace nlsscat
