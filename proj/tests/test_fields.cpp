#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smectic/fields.hpp"
#include "smectic/jump_energy.hpp"

using namespace smectic;

namespace {

RadialProfile parabola(double L, std::size_t m) {
  return RadialProfile::sample(0.0, kPi, m, [L](double t) { return L / (1.0 + std::sin(t)); },
                               ProfileRepr::Rho);
}

RadialProfile constant(double lo, double hi, std::size_t m, double c) {
  return RadialProfile::sample(lo, hi, m, [c](double) { return c; }, ProfileRepr::Rho);
}

double mod_gap(double a, double b, double period) { return std::abs(std::remainder(a - b, period)); }

}  // namespace

TEST_CASE("radial profile invariants") {
  CHECK_THROWS_AS(RadialProfile(0, 1, {1.0, 1.0}, ProfileRepr::Rho), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(0, 1, {1.0, 0.0, 1.0}, ProfileRepr::Rho), std::invalid_argument);
  CHECK_NOTHROW(RadialProfile(0, 1, {1.0, -3.0, 1.0}, ProfileRepr::U));
  const std::vector<double> uneven{0.0, 0.1, 0.3};
  CHECK_THROWS(RadialProfile::from_samples(uneven, {1, 1, 1}, ProfileRepr::Rho));

  const auto p = RadialProfile::sample(0.0, 1.0, 11, [](double t) { return t; }, ProfileRepr::U);
  CHECK(p.theta(10) == 1.0);
  CHECK(p.rho(3) == doctest::Approx(std::exp(-0.3)));
  const auto as_rho = p.as(ProfileRepr::Rho);
  CHECK(as_rho.repr() == ProfileRepr::Rho);
  CHECK(as_rho.u(7) == doctest::Approx(0.7));
  CHECK(p.rho_at(0.25) == doctest::Approx(0.5 * (std::exp(-0.2) + std::exp(-0.3))));
  CHECK_THROWS(p.rho_at(1.5));

  const auto fine = p.resampled(21);
  CHECK(fine.size() == 21);
  CHECK(fine.u(5) == doctest::Approx(0.25));
}

TEST_CASE("difference stencils are exact on quadratics") {
  const double h = 0.1;
  std::vector<double> v(9);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 3.0 * i * h * i * h - 2.0 * i * h + 1.0;
  const auto d = nodal_derivative(v, h);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(d[i] == doctest::Approx(6.0 * i * h - 2.0).epsilon(1e-12));
  const auto c = cell_derivative(v, h);
  CHECK(c.size() == v.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == doctest::Approx(6.0 * (k + 0.5) * h - 2.0).epsilon(1e-12));

  const auto w = trapezoid_weights(5, 0.25);
  CHECK(w[0] == 0.125);
  CHECK(w[2] == 0.25);
  CHECK(w[4] == 0.125);
}

TEST_CASE("configuration invariants") {
  CHECK_NOTHROW(RectangleConfig(1.0, 1.0, parabola(1.0, 21)));
  CHECK_THROWS(RectangleConfig(1.0, 0.5, parabola(1.0, 21)));
  CHECK_THROWS(RectangleConfig(2.0, 2.0, parabola(1.0, 21)));
  CHECK_THROWS(QuarterConfig(parabola(1.0, 21)));
  CHECK(QuarterConfig(constant(0, kPi / 2, 11, 0.5)).admissible());
  CHECK_FALSE(QuarterConfig(constant(0, kPi / 2, 11, 1.2)).admissible());
}

TEST_CASE("eval_director on the two restricted problems") {
  const double L = 1.0;
  const RectangleConfig rect(L, 1.0, constant(0, kPi, 41, L));
  const double t = kPi / 4;
  CHECK(eval_director(rect, 0.5 * std::cos(t), 0.5 * std::sin(t)).radians() == doctest::Approx(t));
  CHECK(eval_director(rect, 0.9, 0.9).radians() == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(eval_director(rect, std::cos(0.3), std::sin(0.3)), std::domain_error);
  CHECK_THROWS_AS(eval_director(rect, 0.0, 2.0), std::domain_error);

  const QuarterConfig quarter(constant(0, kPi / 2, 41, 0.5));
  const double q = kPi / 3;
  CHECK(eval_director(quarter, 0.75 * std::cos(q), 0.75 * std::sin(q)).radians() == doctest::Approx(q));
  CHECK(eval_director(quarter, 0.2 * std::cos(q), 0.2 * std::sin(q)).radians() == doctest::Approx(kPi / 2));

  const auto lim = director_limits(rect, 0.4);
  CHECK(lim.inside.radians() == doctest::Approx(0.4));
  CHECK(lim.outside.radians() == doctest::Approx(kPi / 2));
}

TEST_CASE("curve geometry reference values") {
  const auto circle = constant(0, kPi, 101, 0.7);
  for (const double th : {0.0, 0.4, 1.3, kPi}) {
    const auto g = curve_geometry(circle, th);
    // Normals are lines here: tangent + pi/2 points inward on a circle.
    CHECK(mod_gap(g.normal_angle, th, kPi) < 1e-12);
    CHECK(g.arclength_density == doctest::Approx(0.7));
  }

  const double L = 1.3;
  const auto p = parabola(L, 4001);
  const auto g0 = curve_geometry(p, 0.0);
  CHECK(mod_gap(g0.normal_angle, kPi / 4, kPi) < 1e-6);
  CHECK(g0.arclength_density == doctest::Approx(L * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(g0.x1 == doctest::Approx(L));
  const auto g1 = curve_geometry(p, kPi / 2);
  CHECK(mod_gap(g1.normal_angle, kPi / 2, kPi) < 1e-6);
  CHECK(g1.arclength_density == doctest::Approx(L / 2).epsilon(1e-6));
}

TEST_CASE("the parabola profile bisects the director jump") {
  const double L = 1.0;
  const auto p = parabola(L, 40001);
  const RectangleConfig rect(L, 1.0, p);
  double worst = 0.0;
  double worst_cart = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double th = p.theta(i);
    const auto g = curve_geometry(p, th);
    const auto lim = director_limits(rect, th);
    const double mid = 0.5 * (lim.inside.radians() + lim.outside.radians());
    worst = std::max(worst, mod_gap(g.normal_angle, mid, kPi / 2));
    worst_cart = std::max(worst_cart, std::abs(g.x2 - (L / 2 - g.x1 * g.x1 / (2 * L))));
  }
  CHECK(worst <= 1e-8);
  CHECK(worst_cart <= 1e-10);
}

TEST_CASE("zig-zag configurations") {
  const QTensor qp = q_from_angle(kPi / 2);
  const QTensor qm = q_from_angle(0.0);
  for (const int n : {1, 2, 3, 7, 16, 64}) {
    const auto z = make_zigzag(1.0, n, qp, qm);
    CHECK(z.interface_length() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(z.bisecting);
    CHECK(check_partition(z, 1.0).empty());
  }
  const auto z3 = make_zigzag(2.5, 3, qp, qm);
  CHECK(z3.interface_length() == doctest::Approx(2.5 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(check_partition(z3, 6.25).empty());

  const auto flat = make_zigzag(1.0, 0, qp, qm);
  REQUIRE(flat.interfaces.size() == 1);
  CHECK(flat.interface_length() == doctest::Approx(1.0));
  CHECK(flat.interfaces[0].nu.angle() == doctest::Approx(kPi / 2));
  CHECK_FALSE(flat.bisecting);

  const auto skew = make_zigzag(1.0, 4, q_from_angle(kPi / 3), qm);
  CHECK_FALSE(skew.bisecting);
  CHECK_THROWS(make_zigzag(0.0, 1, qp, qm));
  CHECK_THROWS(make_zigzag(1.0, -1, qp, qm));
}

TEST_CASE("check_partition reports inconsistencies") {
  const QTensor qp = q_from_angle(kPi / 2);
  const QTensor qm = q_from_angle(0.0);
  auto z = make_zigzag(1.0, 2, qp, qm);
  CHECK_FALSE(check_partition(z, 2.0).empty());
  std::swap(z.interfaces[0].q_plus, z.interfaces[0].q_minus);
  CHECK_FALSE(check_partition(z, 1.0).empty());
}

TEST_CASE("parabolic arc fit") {
  const double a = 0.3;
  const double b = 0.5;
  CHECK(parabolic_arc_x1(a, b, 0.0) == doctest::Approx(a));
  CHECK(parabolic_arc_x1(a, b, b / 2) == doctest::Approx(0.0));

  // The two arcs in polar form: r = a / (1 - sin) and r = b / (1 + sin).
  const auto arcs = RadialProfile::sample(
      0.0, kPi / 2, 201,
      [&](double t) { return std::min(a / (1.0 - std::sin(t)), b / (1.0 + std::sin(t))); },
      ProfileRepr::Rho);
  const auto fit = fit_parabolic_arcs(arcs);
  CHECK(fit.a == doctest::Approx(a));
  CHECK(fit.b == doctest::Approx(b));
  CHECK(fit.max_deviation <= 1e-10);

  const auto circle = fit_parabolic_arcs(constant(0, kPi / 2, 201, 0.5));
  CHECK(circle.a == doctest::Approx(0.5));
  CHECK(circle.b == doctest::Approx(1.0));
  CHECK(circle.max_deviation > 1e-3);
}
