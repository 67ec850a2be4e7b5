#include "nlsscat/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nlsscat/errors.hpp"
#include "nlsscat/observables.hpp"

namespace nlsscat {
namespace {

// Flat index of the sample obtained by permuting and reflecting the axes of
// `flat`.
std::size_t mapped_index(const Grid& g, std::size_t flat, const int* perm,
                         unsigned reflect_mask) {
  const int n = g.points_per_axis();
  const int d = g.dim();
  int idx[3] = {0, 0, 0};
  for (int a = 0; a < d; ++a) {
    int j = g.axis_index(flat, perm[a]);
    if (reflect_mask & (1u << a)) j = (n - j) % n;
    idx[a] = j;
  }
  std::size_t out = 0;
  for (int a = 0; a < d; ++a) out = out * n + idx[a];
  return out;
}

void symmetrize(const Grid& g, std::vector<double>& w) {
  const int d = g.dim();
  const int ident[3] = {0, 1, 2};
  // Reflections, one axis at a time.
  std::vector<double> tmp(w.size());
  for (int a = 0; a < d; ++a) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      tmp[i] = 0.5 * (w[i] + w[mapped_index(g, i, ident, 1u << a)]);
    }
    w.swap(tmp);
  }
  if (d == 1) return;
  int perm[3] = {0, 1, 2};
  std::vector<double> acc(w.size(), 0.0);
  int count = 0;
  do {
    for (std::size_t i = 0; i < w.size(); ++i) acc[i] += w[mapped_index(g, i, perm, 0u)];
    ++count;
  } while (std::next_permutation(perm, perm + d));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = acc[i] / count;
}

double pohozaev_c1(const Params& p) {
  return (4.0 - (p.d - 2) * p.alpha) / (p.alpha * p.d);
}
double pohozaev_c2(const Params& p) {
  return (4.0 - (p.d - 2) * p.alpha) / (2.0 * (p.alpha + 2.0));
}

}  // namespace

Field soliton_closed_form_1d(double alpha, const Grid& g) {
  if (g.dim() != 1) throw std::invalid_argument("closed-form soliton requires d = 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("closed-form soliton: alpha > 0 required");
  const double amp = std::pow(0.5 * (alpha + 2.0), 1.0 / alpha);
  Field q(g);
  const auto x = g.coords();
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double c = std::cosh(0.5 * alpha * x[j]);
    q[j] = amp * std::pow(c, -2.0 / alpha);
  }
  return q;
}

double ground_state_residual(const Field& w, double alpha) {
  const auto spec = to_spectrum(w);
  const auto& k2 = w.grid().k_squared();
  std::vector<cplx> ls(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) ls[i] = (1.0 + k2[i]) * spec[i];
  Field r = from_spectrum(w.grid(), std::move(ls));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] -= std::pow(std::abs(w[i]), alpha) * w[i];
  }
  return std::sqrt(l2_norm_sq(r));
}

GroundState make_ground_state(Field profile, const Params& p) {
  GroundState q{std::move(profile), p, 0.0, 0};
  q.residual = ground_state_residual(q.profile, p.alpha);
  return q;
}

GroundState petviashvili(const Params& p, const Grid& g, const Field& init,
                         double tol, int max_iter) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("petviashvili: alpha > 0 required");
  if (!(tol > 0.0)) throw std::invalid_argument("petviashvili: tol > 0 required");
  if (max_iter < 1) throw std::invalid_argument("petviashvili: max_iter >= 1 required");
  if (!init.grid().same_shape(g) || init.grid().half_length() != g.half_length()) {
    throw std::invalid_argument("petviashvili: initial guess lives on another grid");
  }
  std::vector<double> w(g.size());
  double wsum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(init[i].imag()) > 1e-12 * (1.0 + std::abs(init[i].real())) ||
        init[i].real() < 0.0) {
      throw std::invalid_argument("petviashvili: initial guess must be real and nonnegative");
    }
    w[i] = init[i].real();
    wsum += w[i];
  }
  if (!(wsum > 0.0)) throw std::invalid_argument("petviashvili: initial guess is zero");

  const double gamma = (p.alpha + 1.0) / p.alpha;
  const auto& k2 = g.k_squared();
  const double vol = g.cell_volume();
  const double inv_n = 1.0 / static_cast<double>(g.size());

  Field work(g);
  for (int it = 1; it <= max_iter; ++it) {
    auto vals = work.values();
    for (std::size_t i = 0; i < w.size(); ++i) vals[i] = w[i];
    const auto ws = to_spectrum(work);
    for (std::size_t i = 0; i < w.size(); ++i) {
      vals[i] = std::pow(std::abs(w[i]), p.alpha) * w[i];
    }
    auto ns = to_spectrum(work);

    double lhs = 0.0;
    for (std::size_t i = 0; i < ws.size(); ++i) lhs += (1.0 + k2[i]) * std::norm(ws[i]);
    lhs *= vol * inv_n;
    double rhs = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) rhs += w[i] * vals[i].real();
    rhs *= vol;
    const double S = lhs / rhs;
    if (!std::isfinite(S) || !(S > 0.0)) {
      throw DivergedIterate("petviashvili: stabilising factor left (0, inf) at iteration " +
                            std::to_string(it));
    }
    const double scale = std::pow(S, gamma);
    for (std::size_t i = 0; i < ns.size(); ++i) ns[i] *= scale / (1.0 + k2[i]);
    const Field next = from_spectrum(g, std::move(ns));

    std::vector<double> wn(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) wn[i] = next[i].real();
    symmetrize(g, wn);

    double diff = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) diff += (wn[i] - w[i]) * (wn[i] - w[i]);
    diff = std::sqrt(diff * vol);
    w.swap(wn);
    if (!std::isfinite(diff)) {
      throw DivergedIterate("petviashvili: non-finite iterate at iteration " +
                            std::to_string(it));
    }
    if (diff < tol) {
      Field prof(g);
      for (std::size_t i = 0; i < w.size(); ++i) prof[i] = w[i];
      GroundState q = make_ground_state(std::move(prof), p);
      q.iterations = it;
      return q;
    }
  }
  throw NonConvergence("petviashvili: no convergence in " + std::to_string(max_iter) +
                       " iterations");
}

std::pair<double, double> pohozaev_residuals(const Field& w, const Params& p) {
  const double m = l2_norm_sq(w);
  if (m == 0.0) return {0.0, 0.0};
  const double g2 = grad_l2_sq(w);
  const double lp = lp_integral(w, p.alpha + 2.0);
  return {std::abs(m - pohozaev_c1(p) * g2) / m, std::abs(m - pohozaev_c2(p) * lp) / m};
}

std::pair<double, double> pohozaev_residuals(const GroundState& q) {
  return pohozaev_residuals(q.profile, q.params);
}

double gn_constant(const GroundState& q, const Params& p) {
  const double m = l2_norm_sq(q.profile);
  if (!(m > 0.0)) throw std::invalid_argument("gn_constant: zero profile");
  if (is_mass_critical(p)) return 0.5 * (p.alpha + 2.0) * std::pow(m, -0.5 * p.alpha);
  const double ad = p.alpha * p.d;
  const double sigma = (4.0 - (p.d - 2) * p.alpha) / (ad - 4.0);
  const double g = std::sqrt(grad_l2_sq(q.profile));
  const double base = std::pow(m, 0.5 * sigma) * g;
  return 2.0 * (p.alpha + 2.0) / ad * std::pow(base, -0.5 * (ad - 4.0));
}

double gn_functional(const Field& w, const Params& p) {
  const double m = l2_norm_sq(w);
  const double g2 = grad_l2_sq(w);
  if (!(m > 0.0) || !(g2 > 0.0)) throw std::invalid_argument("gn_functional: degenerate w");
  const double lp = lp_integral(w, p.alpha + 2.0);
  return lp / (std::pow(m, 0.25 * (4.0 - (p.d - 2) * p.alpha)) *
               std::pow(g2, 0.25 * p.alpha * p.d));
}

}  // namespace nlsscat
