#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsscat/dynamics.hpp"
#include "nlsscat/groundstate.hpp"
#include "nlsscat/initialdata.hpp"
#include "nlsscat/pcx.hpp"

using namespace nlsscat;

namespace {

double rel_gap(const Field& a, const Field& b) {
  return std::sqrt(l2_norm_sq(a - b) / l2_norm_sq(b));
}

// Composite Simpson rule, the oracle for the closed-form substep weight.
template <class F>
double simpson(F&& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double soliton_phase_error(double dt) {
  const Grid g(1, 1024, 20.0);
  const Params p{1, 2.0, 1.0};
  const Field q = soliton_closed_form_1d(2.0, g);
  Trajectory tr = evolve(q, 0.0, 1.0, dt, p, static_cast<int>(std::lround(1.0 / dt)));
  const Field exact = std::polar(1.0, 1.0) * q;
  return rel_gap(tr.fields.back(), exact);
}

double max_energy_drift(const Trajectory& tr) {
  const double e0 = tr.rows.front().energy;
  double m = 0.0;
  for (const auto& r : tr.rows) m = std::max(m, std::abs(r.energy - e0) / std::abs(e0));
  return m;
}

}  // namespace

TEST_CASE("nonlinear phase step") {
  const Grid g(1, 64, 4.0);
  const Params p{1, 2.0, 1.0};
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  Field f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(nd(rng), nd(rng));

  const Field same = nonlinear_phase_step(f, 0.0, p);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == f[i]);

  Field unit(g);
  for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = std::polar(1.0, 0.1 * i);
  const Field rot = nonlinear_phase_step(unit, 0.1, p);
  for (std::size_t i = 0; i < unit.size(); ++i) {
    CHECK(std::abs(rot[i] - unit[i] * std::polar(1.0, 0.1)) < 1e-15);
  }

  for (double alpha : {1.5, 2.0, 3.0, 4.0, 6.0}) {
    const Params q{1, alpha, -0.7};
    const Field out = nonlinear_phase_step(f, 0.3, q, 0.8);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(std::abs(out[i]) - std::abs(f[i])) < 1e-14 * (1.0 + std::abs(f[i])));
      const cplx expect = f[i] * std::polar(1.0, -0.7 * 0.8 * 0.3 * std::pow(std::abs(f[i]), alpha));
      CHECK(std::abs(out[i] - expect) < 1e-12 * (1.0 + std::abs(f[i])));
    }
  }
  CHECK_THROWS_AS(nonlinear_phase_step(f, 0.1, p, -1.0), std::invalid_argument);
}

TEST_CASE("nonautonomous substep weight matches quadrature") {
  struct Case {
    int d;
    double alpha;
  };
  for (Case c : {Case{1, 3.0}, Case{1, 2.0}, Case{1, 6.0}, Case{3, 1.0}, Case{2, 1.5}}) {
    const Params p{c.d, c.alpha, 1.0};
    const double q = pc_power(p);
    for (double s : {0.0, 0.3, 0.9}) {
      for (double h : {1e-3, 0.05}) {
        const double ref =
            simpson([&](double x) { return std::pow(1.0 - x, q); }, s, s + h) / h;
        CHECK(nonautonomous_weight(p, s, h) == doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
  CHECK(nonautonomous_weight(Params{1, 4.0, 1.0}, 0.7, 0.2) == 1.0);
  CHECK(nonautonomous_weight(Params{2, 2.0, 1.0}, 0.7, 0.2) == 1.0);
  CHECK_THROWS_AS(nonautonomous_weight(Params{1, 3.0, 1.0}, 0.9, 0.1), std::invalid_argument);
}

TEST_CASE("strang step") {
  const Grid g(1, 1024, 20.0);
  const Field f = gaussian(g, 1.0, 1.0);
  const Field a = strang_step(f, 0.0, 0.01, Params{1, 2.0, 1e-300});
  CHECK(rel_gap(a, free_propagate(f, 0.01)) < 1e-14);

  const Params p{1, 2.0, 1.0};
  const Field q = soliton_closed_form_1d(2.0, g);
  const Field one = strang_step(q, 0.0, 1e-3, p);
  CHECK(std::sqrt(l2_norm_sq(one - std::polar(1.0, 1e-3) * q)) <= 1e-8);

  const double ratio = soliton_phase_error(2e-3) / soliton_phase_error(1e-3);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("evolve bookkeeping") {
  const Grid g(1, 128, 10.0);
  const Params p{1, 3.0, -1.0};
  Trajectory zero = evolve(Field(g), 0.0, 1.0, 0.01, p, 10);
  REQUIRE(zero.rows.size() == 11);
  for (const auto& f : zero.fields) CHECK(l2_norm_sq(f) == 0.0);
  CHECK_FALSE(zero.diverged);

  CHECK_THROWS_AS(evolve(Field(g), 0.0, 1.0, 0.3, p, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(Field(g), 1.0, 0.0, 0.1, p, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(Field(g), 0.0, 1.0, 0.1, Params{1, -1.0, 1.0}, 1),
                  std::invalid_argument);

  const Field u0 = gaussian(g, 1.0, 1.0);
  Trajectory tr = evolve(u0, 0.0, 1.0, 0.01, p, 30);
  REQUIRE(tr.times.size() == 5);
  CHECK(tr.times.back() == 1.0);
  for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);

  Trajectory sched = evolve_schedule(u0, 0.0, {0.1, 0.35, 1.0}, 0.1, p);
  CHECK(sched.times.size() == 4);
  CHECK(sched.dt <= 0.1 + 1e-15);
  CHECK_THROWS_AS(evolve_schedule(u0, 0.0, {0.5, 0.4}, 0.1, p), std::invalid_argument);
}

TEST_CASE("mass exact, energy drift second order") {
  const Grid g(1, 512, 30.0);
  const Params p{1, 2.0, 1.0};
  const Field u0 = gaussian(g, 1.2, 1.0);
  Trajectory a = evolve(u0, 0.0, 2.0, 0.02, p, 5);
  Trajectory b = evolve(u0, 0.0, 2.0, 0.01, p, 10);
  for (const auto& r : b.rows) {
    CHECK(std::abs(r.mass - b.rows.front().mass) / b.rows.front().mass <= 1e-10);
  }
  const double ratio = max_energy_drift(a) / max_energy_drift(b);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("pseudo-conformal law along a trajectory") {
  // d/dt [P_t - 8 lambda t^2/(alpha+2) ||u||^{a+2}] = 4 lambda (alpha d - 4)/(alpha+2) t ||u||^{a+2}
  const Grid g(1, 1024, 40.0);
  const Params p{1, 3.0, -1.0};
  const Field u0 = gaussian(g, 1.0, 1.0);
  auto residual = [&](double dt) {
    Trajectory tr = evolve(u0, 0.0, 1.0 + dt, dt, p, 1);
    const std::size_t i = tr.rows.size() - 2;
    auto bracket = [&](const ObservableRow& r) {
      const double lp = std::pow(r.l_alpha2, p.alpha + 2.0);
      return r.pt_norm_sq - 8.0 * p.lambda * r.t * r.t / (p.alpha + 2.0) * lp;
    };
    const double fd = (bracket(tr.rows[i + 1]) - bracket(tr.rows[i - 1])) / (2.0 * dt);
    const auto& r = tr.rows[i];
    const double rhs = 4.0 * p.lambda * (p.alpha * p.d - 4.0) / (p.alpha + 2.0) * r.t *
                       std::pow(r.l_alpha2, p.alpha + 2.0);
    return std::abs(fd - rhs) / std::abs(rhs);
  };
  const double coarse = residual(0.02);
  const double fine = residual(0.01);
  CHECK(coarse < 1e-3);
  CHECK(coarse / fine > 3.0);
}

TEST_CASE("negative-energy focusing data trips the detector") {
  const Grid g(1, 4096, 10.0);
  const Params p{1, 6.0, 1.0};
  const Field u0 = gaussian(g, 1.5, 1.0);
  REQUIRE(energy(u0, p) < 0.0);
  Trajectory tr = evolve(u0, 0.0, 5.0, 2e-5, p, 5000);
  CHECK(tr.diverged);
  REQUIRE(tr.divergence_time.has_value());
  CHECK(*tr.divergence_time < 5.0);
  CHECK(tr.times.back() <= *tr.divergence_time);
  CHECK(tr.divergence_reason != DivergenceReason::None);
}

TEST_CASE("nonautonomous evolution") {
  const Grid g(1, 1024, 20.0);
  const Field u0 = gaussian(g, 1.0, 1.0);
  const Field v0 = pcx_phase(u0, -1);

  CHECK_THROWS_AS(evolve_nonautonomous(v0, 0.0, 1.0, 0.01, Params{1, 3.0, -1.0}, 1),
                  std::invalid_argument);

  Trajectory lin = evolve_nonautonomous(v0, 0.0, 0.5, 0.01, Params{1, 3.0, 1e-300}, 50);
  CHECK(rel_gap(lin.fields.back(), free_propagate(v0, 0.5)) < 1e-12);

  // alpha d = 4: the transformed equation is the original one.
  const Params crit{1, 4.0, 1.0};
  Trajectory na = evolve_nonautonomous(v0, 0.0, 0.5, 0.005, crit, 20);
  Trajectory au = evolve(v0, 0.0, 0.5, 0.005, crit, 20);
  REQUIRE(na.fields.size() == au.fields.size());
  for (std::size_t i = 0; i < na.fields.back().size(); ++i) {
    CHECK(na.fields.back()[i] == au.fields.back()[i]);
  }
  REQUIRE(na.rows.back().e1.has_value());
  CHECK(*na.rows.back().e1 == doctest::Approx(na.rows.back().energy).epsilon(1e-14));
  CHECK(*na.rows.back().e2 == doctest::Approx(na.rows.back().energy).epsilon(1e-14));
}

TEST_CASE("transport equivalence at s = 1/2") {
  // u on [-40, 40) to t = 1; its image lives on [-20, 20), the grid of v.
  const Params p{1, 3.0, -1.0};
  const Grid gu(1, 2048, 40.0);
  const Grid gv(1, 2048, 20.0);
  Trajectory tu = evolve(gaussian(gu, 1.0, 1.0), 0.0, 1.0, 5e-4, p, 2000);
  Trajectory tv = evolve_nonautonomous(pcx_phase(gaussian(gv, 1.0, 1.0), -1), 0.0, 0.5,
                                       2.5e-4, p, 2000);
  const PcxPair pair = to_pcx(tu.fields.back(), 1.0);
  CHECK(pair.s == 0.5);
  CHECK(pair.v_field.grid() == gv);
  CHECK(rel_gap(tv.fields.back(), pair.v_field) <= 1e-6);
}

TEST_CASE("E1 non-increasing for focusing mass-subcritical data") {
  const Grid g(1, 512, 20.0);
  const Params p{1, 2.0, 1.0};
  Trajectory tr = evolve_nonautonomous(pcx_phase(gaussian(g, 1.0, 1.0), -1), 0.0, 0.9,
                                       0.005, p, 4);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) {
    CHECK(*tr.rows[i].e1 <= *tr.rows[i - 1].e1 + 1e-12);
  }
}
