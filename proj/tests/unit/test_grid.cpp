#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlsscat/grid.hpp"

using namespace nlsscat;

namespace {

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Field f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(nd(rng), nd(rng));
  return f;
}

double rel_l2_gap(const Field& a, const Field& b) {
  return std::sqrt(l2_norm_sq(a - b) / l2_norm_sq(b));
}

// e^{it Delta} e^{-a x^2} = (1 + 4iat)^{-1/2} e^{-a x^2 / (1 + 4iat)} in 1D.
cplx gaussian_propagated(double x, double a, double t) {
  const cplx den(1.0, 4.0 * a * t);
  return std::exp(-a * x * x / den) / std::sqrt(den);
}

}  // namespace

TEST_CASE("centered grid layout") {
  const Grid g(1, 8, 4.0);
  const double pi = std::numbers::pi;
  const auto x = g.coords();
  for (int j = 0; j < 8; ++j) CHECK(x[j] == doctest::Approx(-4.0 + j));
  const auto k = g.wavenumbers();
  const int m[8] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int j = 0; j < 8; ++j) CHECK(k[j] == doctest::Approx(pi * m[j] / 4.0));
  CHECK(g.k_max() == doctest::Approx(pi));
  CHECK(Grid(2, 256, 16.0).size() == 65536u);
  CHECK(Grid(3, 16, 1.0).cell_volume() == doctest::Approx(std::pow(0.125, 3)));
}

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(Grid(3, 7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 8, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 8, INFINITY), std::invalid_argument);
}

TEST_CASE("row-major axis index, last axis fastest") {
  const Grid g(3, 8, 1.0);
  const std::size_t flat = (2 * 8 + 5) * 8 + 7;
  CHECK(g.axis_index(flat, 0) == 2);
  CHECK(g.axis_index(flat, 1) == 5);
  CHECK(g.axis_index(flat, 2) == 7);
}

TEST_CASE("free propagation of a Gaussian against the closed form") {
  const Grid g(1, 1024, 20.0);
  Field f(g);
  const auto x = g.coords();
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::exp(-0.5 * x[j] * x[j]);

  const Field u = free_propagate(f, 1.0);
  CHECK(std::abs(u[512]) == doctest::Approx(std::pow(5.0, -0.25)).epsilon(1e-8));

  // At t = 2 the tail reaches |x| = 20, so the sweep uses a wider box.
  const Grid wide(1, 2048, 40.0);
  const auto xw = wide.coords();
  Field fw(wide);
  for (std::size_t j = 0; j < fw.size(); ++j) fw[j] = std::exp(-0.5 * xw[j] * xw[j]);
  for (double t : {0.5, 1.0, 2.0}) {
    const Field v = free_propagate(fw, t);
    double err = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      err = std::max(err, std::abs(v[j] - gaussian_propagated(xw[j], 0.5, t)));
    }
    CHECK(err < 1e-8);
  }
}

TEST_CASE("free propagator: identity, inverse, unitarity, group law") {
  for (int d : {1, 2}) {
    const Grid g(d, d == 1 ? 256 : 32, 6.0);
    const Field f = random_field(g, 7u + d);
    const Field same = free_propagate(f, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == f[i]);

    CHECK(rel_l2_gap(free_propagate(free_propagate(f, 0.7), -0.7), f) < 1e-12);
    for (double t : {-3.0, 0.01, 1.0, 25.0}) {
      CHECK(l2_norm_sq(free_propagate(f, t)) == doctest::Approx(l2_norm_sq(f)).epsilon(1e-12));
    }
    const Field a = free_propagate(f, 0.3 + 1.1);
    const Field b = free_propagate(free_propagate(f, 0.3), 1.1);
    CHECK(rel_l2_gap(b, a) < 1e-12);
  }
}

TEST_CASE("Parseval") {
  const Grid g(2, 64, 3.0);
  const Field f = random_field(g, 11u);
  CHECK(spectral_l2_norm_sq(f) == doctest::Approx(l2_norm_sq(f)).epsilon(1e-12));
}

TEST_CASE("boundary mass fraction") {
  const Grid g1(1, 64, 8.0);
  Field spike(g1);
  spike[32] = 1.0;  // x = 0
  CHECK(boundary_mass_fraction(spike) == 0.0);
  CHECK(boundary_mass_fraction(Field(g1)) == 0.0);

  for (int d : {1, 2, 3}) {
    const Grid g(d, 32, 5.0);
    Field u(g);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 1.0;
    // Independent count of the shell: samples with some |x_a| > 0.9 L.
    const auto x = g.coords();
    int inner = 0;
    for (int j = 0; j < 32; ++j) inner += std::abs(x[j]) <= 0.9 * 5.0;
    const double expected = 1.0 - std::pow(inner / 32.0, d);
    CHECK(boundary_mass_fraction(u) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(boundary_mass_fraction(u) - (1.0 - std::pow(0.9, d))) < d * 2.0 / 32.0);
  }
}

TEST_CASE("field arithmetic checks shapes") {
  const Grid a(1, 16, 1.0);
  const Grid b(1, 32, 1.0);
  Field f(a);
  CHECK_THROWS_AS(f += Field(b), std::invalid_argument);
  f[3] = cplx(1.0, 2.0);
  f *= 2.0;
  CHECK(f[3] == cplx(2.0, 4.0));
  CHECK(f.all_finite());
  f[0] = cplx(NAN, 0.0);
  CHECK_FALSE(f.all_finite());
}

TEST_CASE("rescaled companion grid") {
  const Grid g(2, 16, 4.0);
  const Grid h = g.rescaled(0.5);
  CHECK(h.same_shape(g));
  CHECK(h.half_length() == 2.0);
  CHECK(h.coords()[3] == doctest::Approx(0.5 * g.coords()[3]));
}
