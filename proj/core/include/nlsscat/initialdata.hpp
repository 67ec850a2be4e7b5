#pragma once

#include <functional>
#include <memory>

#include "nlsscat/grid.hpp"

namespace nlsscat {

enum class Family { Gaussian, Soliton, Oscillating, Custom };

/// Closed-form description of initial data, so the same data can be sampled
/// on several grids.
///   Gaussian:    amplitude * exp(-|x|^2 / (2 width^2))
///   Soliton:     amplitude * Q(x / width), the 1D ground state for `alpha`
///   Oscillating: e^{i Delta}(e^{i b|x|^2/4} base)
///   Custom:      amplitude * custom(x), x of length d
struct DataSpec {
  Family family = Family::Gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  double alpha = 2.0;
  double b = 0.0;
  std::shared_ptr<const DataSpec> base;
  std::function<cplx(const double*, int)> custom;
};

/// Throws std::invalid_argument on width <= 0, non-finite amplitude or an
/// Oscillating spec without base.
void validate(const DataSpec& spec);

Field sample(const DataSpec& spec, const Grid& g);

/// amplitude * exp(-|x|^2/(2 width^2)). Throws on width <= 0.
Field gaussian(const Grid& g, double amplitude, double width);

/// True when the Gaussian is wide enough (width > L/4) for periodic images to
/// matter.
bool gaussian_too_wide(const Grid& g, double width);

/// f * e^{sign i|x|^2/4}, sign = +1 or -1.
Field pcx_phase(const Field& f, int sign);

/// e^{i Delta}(e^{i b|x|^2/4} phi).
Field oscillating_data(const Field& phi, double b);

/// Smallest radius outside of which phi carries less than `tail` of its
/// mass.
double effective_radius(const Field& phi, double tail = 1e-14);

/// False when the chirp e^{i b|x|^2/4} is too steep for the grid:
/// |b| * R_eff * dx > pi with R_eff from effective_radius.
bool quadratic_phase_resolved(const Field& phi, double b);

/// Relative L2 gap between e^{it Delta}(e^{ib|x|^2/4} phi) and
/// e^{ib|x|^2/(4(1+bt))} D_{1/(1+bt)} e^{i t/(1+bt) Delta} phi,
/// D_c w(x) = c^{d/2} w(c x). The left side is computed on g stretched by
/// 1+bt; the right side propagates phi sampled on g itself, so the dilation
/// maps samples onto samples. Requires 1 + bt > 0.
double oscillating_identity_residual(const DataSpec& phi, const Grid& g,
                                     double b, double t);

/// Finite-horizon version of
///   sup_{t >= 1} t^{2/mu0} ( ||e^{it Delta}[e^{ib|x|^2/4} x phi]||_{nu0}
///                          + ||e^{it Delta}[e^{ib|x|^2/4} phi]||_{nu0} ),
/// evaluated in the dilated frame where it reads
///   sup (t/(1+bt))^{2/mu0} ( ||e^{i tau Delta}(x phi)||_{nu0}
///                          + ||e^{i tau Delta} phi||_{nu0} ),  tau = t/(1+bt),
/// over the ladder t_k = T 2^{-k/4} >= 1. For d = 1 x phi is the scalar
/// product; for d > 1 the vector norm |x phi| is used.
double oscillating_decay_functional(const Field& phi, double b, double T,
                                    int n_samples, double mu0, double nu0);

/// Same functional evaluated directly on the chirped data (no dilation).
/// Needs a grid that contains the spread of e^{it Delta}(e^{ib|x|^2/4} phi)
/// up to time T; used to cross-check the dilated form.
double oscillating_decay_functional_direct(const Field& phi, double b, double T,
                                           int n_samples, double mu0, double nu0);

}  // namespace nlsscat
