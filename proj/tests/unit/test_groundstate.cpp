#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlsscat/errors.hpp"
#include "nlsscat/groundstate.hpp"
#include "nlsscat/initialdata.hpp"
#include "nlsscat/observables.hpp"

using namespace nlsscat;

namespace {

double linf_gap(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Q(x / c), still sampled on g.
Field dilated(const Grid& g, double alpha, double c) {
  Field q(g);
  const double amp = std::pow(0.5 * (alpha + 2.0), 1.0 / alpha);
  const auto x = g.coords();
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = amp * std::pow(std::cosh(0.5 * alpha * x[j] / c), -2.0 / alpha);
  }
  return q;
}

}  // namespace

TEST_CASE("closed-form 1D ground state") {
  const Grid g(1, 2048, 20.0);
  const Field q = soliton_closed_form_1d(2.0, g);
  CHECK(q[1024].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto x = g.coords();
  for (std::size_t j = 0; j < q.size(); j += 97) {
    CHECK(q[j].real() == doctest::Approx(std::sqrt(2.0) / std::cosh(x[j])).epsilon(1e-14));
  }
  // sech(20) is not negligible against the periodic wrap, hence the wider box.
  CHECK(ground_state_residual(soliton_closed_form_1d(2.0, Grid(1, 4096, 40.0)), 2.0) < 1e-10);
  CHECK(l2_norm_sq(q) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(grad_l2_sq(q) == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
  CHECK(lp_integral(q, 4.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-8));

  const Field q4 = soliton_closed_form_1d(4.0, g);
  CHECK(l2_norm_sq(q4) == doctest::Approx(std::sqrt(3.0) * std::numbers::pi / 2.0).epsilon(1e-8));

  CHECK_THROWS_AS(soliton_closed_form_1d(2.0, Grid(2, 16, 5.0)), std::invalid_argument);
  CHECK_THROWS_AS(soliton_closed_form_1d(0.0, g), std::invalid_argument);
}

TEST_CASE("Petviashvili reproduces the closed form in 1D") {
  const Grid g(1, 2048, 40.0);
  for (double alpha : {2.0, 4.0, 6.0}) {
    const Params p{1, alpha, 1.0};
    const GroundState q = petviashvili(p, g, gaussian(g, 1.0, 1.0));
    CHECK(linf_gap(q.profile, soliton_closed_form_1d(alpha, g)) < 1e-6);
    const auto [r1, r2] = pohozaev_residuals(q);
    CHECK(r1 < 1e-6);
    CHECK(r2 < 1e-6);
    CHECK(q.residual < 1e-10);
    CHECK(q.iterations > 0);
  }
}

TEST_CASE("Petviashvili in 2D: Pohozaev identities") {
  const Grid g(2, 256, 20.0);
  const Params p{2, 2.0, 1.0};
  const GroundState q = petviashvili(p, g, gaussian(g, 1.0, 1.0));
  const auto [r1, r2] = pohozaev_residuals(q);
  CHECK(r1 < 1e-5);
  CHECK(r2 < 1e-5);
  // (4 - (d-2) alpha)/(alpha d) = 1: mass equals the gradient norm.
  CHECK(l2_norm_sq(q.profile) == doctest::Approx(grad_l2_sq(q.profile)).epsilon(1e-5));
  // Radial: values along the two axes agree.
  for (int j = 0; j < 256; j += 17) {
    CHECK(q.profile[128 * 256 + j].real() ==
          doctest::Approx(q.profile[j * 256 + 128].real()).epsilon(1e-10));
  }
}

TEST_CASE("Petviashvili is insensitive to the initial amplitude") {
  const Grid g(1, 1024, 30.0);
  const Params p{1, 3.0, 1.0};
  const GroundState ref = petviashvili(p, g, gaussian(g, 1.0, 1.0));
  for (double s : {0.1, 10.0}) {
    const GroundState q = petviashvili(p, g, gaussian(g, s, 1.0));
    CHECK(linf_gap(q.profile, ref.profile) < 1e-10);
  }
}

TEST_CASE("Petviashvili failure modes") {
  const Grid g(1, 256, 20.0);
  const Params p{1, 2.0, 1.0};
  CHECK_THROWS_AS(petviashvili(p, g, gaussian(g, 1.0, 1.0), 1e-12, 2), NonConvergence);
  CHECK_THROWS_AS(petviashvili(p, g, gaussian(g, 1e-200, 1.0)), DivergedIterate);
  CHECK_THROWS_AS(petviashvili(p, g, Field(g)), std::invalid_argument);
  CHECK_THROWS_AS(petviashvili(p, g, gaussian(g, -1.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(petviashvili(p, g, gaussian(Grid(1, 256, 10.0), 1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("Pohozaev residuals detect non-ground states") {
  const Grid g(1, 2048, 20.0);
  const Params p{1, 2.0, 1.0};
  const Field q = soliton_closed_form_1d(2.0, g);
  const auto [r1, r2] = pohozaev_residuals(q, p);
  CHECK(r1 < 1e-8);
  CHECK(r2 < 1e-8);

  // The first identity is homogeneous of degree two, so 2Q still satisfies it;
  // the second one is not.
  const auto [s1, s2] = pohozaev_residuals(2.0 * q, p);
  CHECK(s1 < 1e-8);
  CHECK(s2 > 0.1);

  // A dilation breaks the first one.
  const auto [w1, w2] = pohozaev_residuals(dilated(g, 2.0, 2.0), p);
  CHECK(w1 > 0.1);
  (void)w2;

  CHECK(pohozaev_residuals(Field(g), p) == std::pair{0.0, 0.0});
}

TEST_CASE("sharp Gagliardo-Nirenberg constant") {
  const Grid g(1, 4096, 40.0);
  const Params crit{1, 4.0, 1.0};
  const GroundState q4 = make_ground_state(soliton_closed_form_1d(4.0, g), crit);
  const double pi = std::numbers::pi;
  CHECK(gn_constant(q4, crit) == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-6));

  for (double alpha : {2.0, 4.0, 6.0}) {
    const Params p{1, alpha, 1.0};
    const GroundState q = make_ground_state(soliton_closed_form_1d(alpha, g), p);
    const double c = gn_constant(q, p);
    CHECK(gn_functional(q.profile, p) == doctest::Approx(c).epsilon(1e-6));
    for (double w : {0.5, 1.0, 3.0}) {
      CHECK(gn_functional(gaussian(g, 1.0, w), p) < c);
    }
    for (double s : {0.3, 2.0}) {
      CHECK(gn_functional(s * q.profile, p) <= c * (1.0 + 1e-6));
      CHECK(gn_functional(dilated(g, alpha, 1.7), p) <= c * (1.0 + 1e-6));
    }
  }
}
