#pragma once

#include <utility>

#include "nlsscat/grid.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat {

/// Positive radial solution of -Delta Q + Q = |Q|^alpha Q.
struct GroundState {
  Field profile;
  Params params;
  /// ||-Delta Q + Q - Q^{alpha+1}||_2
  double residual = 0.0;
  int iterations = 0;
};

/// ((alpha+2)/2)^{1/alpha} sech^{2/alpha}(alpha x / 2). Requires d = 1.
Field soliton_closed_form_1d(double alpha, const Grid& g);

/// Wraps a sampled profile (e.g. the closed form) and fills in its residual.
GroundState make_ground_state(Field profile, const Params& p);

/// Equation residual ||-Delta w + w - |w|^alpha w||_2.
double ground_state_residual(const Field& w, double alpha);

/// Petviashvili iteration w <- S^gamma (1 - Delta)^{-1} w^{alpha+1},
/// gamma = (alpha+1)/alpha, stopped when the L2 change of an iterate drops
/// below tol. The iterate is averaged over axis reflections and permutations
/// after every update. Throws NonConvergence after max_iter iterations and
/// DivergedIterate when the stabilising factor leaves (0, inf).
GroundState petviashvili(const Params& p, const Grid& g, const Field& init,
                         double tol = 1e-12, int max_iter = 2000);

/// Relative errors of
///   ||Q||^2 = (4-(d-2)alpha)/(alpha d) ||grad Q||^2
///   ||Q||^2 = (4-(d-2)alpha)/(2(alpha+2)) ||Q||_{alpha+2}^{alpha+2}
/// (each relative to ||Q||^2).
std::pair<double, double> pohozaev_residuals(const GroundState& q);
std::pair<double, double> pohozaev_residuals(const Field& w, const Params& p);

/// Sharp Gagliardo-Nirenberg constant from Q. Uses (alpha+2)/2 ||Q||^{-alpha}
/// when alpha d = 4.
double gn_constant(const GroundState& q, const Params& p);

/// ||w||_{alpha+2}^{alpha+2} / (||w||^{(4-(d-2)alpha)/2} ||grad w||^{alpha d/2}).
double gn_functional(const Field& w, const Params& p);

}  // namespace nlsscat
