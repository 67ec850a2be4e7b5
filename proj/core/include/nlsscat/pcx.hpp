#pragma once

#include "nlsscat/grid.hpp"
#include "nlsscat/params.hpp"

namespace nlsscat {

/// u(t) on a grid of half-length L and its image v(s) on the companion grid
/// of half-length L/(1+t), sample for sample.
struct PcxPair {
  Field u_field;
  double t = 0.0;
  Field v_field;
  double s = 0.0;
};

/// v(s, y) = (1+t)^{d/2} u(t, x) e^{-i|x|^2/(4(1+t))}, s = t/(1+t), y = x/(1+t).
PcxPair to_pcx(const Field& u, double t);

struct PcxInverse {
  Field u;
  double t = 0.0;
};

/// u(t, x) = (1-s)^{d/2} v(s, y) e^{i|y|^2/(4(1-s))} on the grid of
/// half-length L/(1-s). Requires 0 <= s < 1.
PcxInverse from_pcx(const Field& v, double s);

struct PcxResiduals {
  double r1 = 0.0;  // ||v||_{a+2}^{a+2} = (1+t)^{alpha d/2} ||u||_{a+2}^{a+2}
  double r2 = 0.0;  // ||grad v||^2 = 1/4 ||(x + 2i(1+t) grad) u||^2
  double r3 = 0.0;  // ||grad u||^2 = 1/4 ||(y - 2i(1-s) grad) v||^2
  bool valid = true;
};

/// Relative residuals of the three transform identities. valid is false when
/// either field carries more than boundary_tol of its mass near the edge.
PcxResiduals identity_residuals(const PcxPair& pair, const Params& p,
                                double boundary_tol = 1e-6);

}  // namespace nlsscat
