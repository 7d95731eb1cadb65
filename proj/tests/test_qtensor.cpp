#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smectic/qtensor.hpp"

using namespace smectic;

namespace {

const double kInvTwoSqrt2 = 1.0 / (2.0 * std::sqrt(2.0));

// Mod-pi distance between two angles.
double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, kPi)); }

SampledField circular_layers(double h) {
  const auto n = static_cast<std::size_t>(std::llround(0.5 / h)) + 1;
  return sample_field(n, n, 0.5, 0.5, h, [](double x, double y) { return std::atan2(y, x); });
}

}  // namespace

TEST_CASE("q_from_angle reference values") {
  const QTensor q0 = q_from_angle(0.0);
  CHECK(q0.q11() == doctest::Approx(kInvTwoSqrt2).epsilon(1e-15));
  CHECK(std::abs(q0.q12()) < 1e-16);

  const QTensor qpi = q_from_angle(kPi);
  CHECK(std::abs(qpi.q11() - q0.q11()) < 1e-15);
  CHECK(std::abs(qpi.q12() - q0.q12()) < 1e-15);

  const QTensor q45 = q_from_angle(kPi / 4);
  CHECK(std::abs(q45.q11()) < 1e-16);
  CHECK(q45.q12() == doctest::Approx(kInvTwoSqrt2).epsilon(1e-15));
}

TEST_CASE("q_from_angle matches the matrix definition") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double b = beta(rng);
    const double n1 = std::cos(b);
    const double n2 = std::sin(b);
    const auto m = q_from_angle(b).matrix();
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(m[0][0] - s * (n1 * n1 - 0.5)) < 1e-15);
    CHECK(std::abs(m[0][1] - s * n1 * n2) < 1e-15);
    CHECK(std::abs(m[1][0] - s * n1 * n2) < 1e-15);
    CHECK(std::abs(m[1][1] - s * (n2 * n2 - 0.5)) < 1e-15);
  }
}

TEST_CASE("angle_from_q inverts and validates") {
  CHECK(angle_from_q(kInvTwoSqrt2, 0.0).radians() == 0.0);
  CHECK(angle_from_q(0.0, kInvTwoSqrt2).radians() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK_THROWS_AS(angle_from_q(0.3, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(QTensor::from_components(0.3, 0.3), std::invalid_argument);
  // Parsed inputs get the looser tolerance.
  CHECK_NOTHROW(QTensor::from_components(kInvTwoSqrt2 + 1e-11, 0.0));
  CHECK_THROWS(QTensor::from_components(kInvTwoSqrt2 + 1e-7, 0.0));
}

TEST_CASE("director angles canonicalize to [0, pi)") {
  CHECK(DirectorAngle(kPi).radians() == doctest::Approx(0.0));
  CHECK(DirectorAngle(-kPi / 4).radians() == doctest::Approx(3 * kPi / 4));
  CHECK(DirectorAngle(7.0).radians() >= 0.0);
  CHECK(DirectorAngle(7.0).radians() < kPi);
}

TEST_CASE("round trip over random angles") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> beta(-20.0, 20.0);
  double worst = 0.0;
  double worst_defect = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double b = beta(rng);
    const QTensor q = q_from_angle(b);
    worst = std::max(worst, angle_gap(angle_from_q(q).radians(), b));
    worst_defect = std::max(worst_defect, std::abs(manifold_defect(q.q11(), q.q12())));
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_defect <= 1e-12);
}

TEST_CASE("q_distance reference values and the sine identity") {
  CHECK(q_distance(q_from_angle(0.3), q_from_angle(0.3)) == 0.0);
  CHECK(q_distance(q_from_angle(kPi / 2), q_from_angle(0.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q_distance(q_from_angle(kPi / 3), q_from_angle(0.0)) ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));

  // Direct Frobenius norm of the matrix difference as an independent route.
  const auto a = q_from_angle(kPi / 3).matrix();
  const auto b = q_from_angle(0.0).matrix();
  double frob = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) frob += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
  }
  CHECK(std::sqrt(frob) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  double worst = 0.0;
  double worst_rot = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double bp = ang(rng);
    const double bm = ang(rng);
    const double d = ang(rng);
    const double dist = q_distance(q_from_angle(bp), q_from_angle(bm));
    worst = std::max(worst, std::abs(dist - std::abs(std::sin(bp - bm))));
    worst_rot = std::max(worst_rot, std::abs(q_distance(q_from_angle(bp + d), q_from_angle(bm + d)) - dist));
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_rot <= 1e-12);
}

TEST_CASE("q_normal_form reference values and the second identity") {
  CHECK(q_normal_form(q_from_angle(0.0), UnitVector(0.0)) == doctest::Approx(kInvTwoSqrt2));
  CHECK(std::abs(q_normal_form(q_from_angle(0.0), UnitVector(kPi / 4))) < 1e-16);
  CHECK(q_normal_form(q_from_angle(1.234), UnitVector(1.234)) == doctest::Approx(kInvTwoSqrt2));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  double worst = 0.0;
  double worst_formula = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double bp = ang(rng);
    const double bm = ang(rng);
    const double g = ang(rng);
    const UnitVector nu(g);
    const double lhs = std::sqrt(2.0) * std::abs(q_normal_form(q_from_angle(bp), nu) -
                                                 q_normal_form(q_from_angle(bm), nu));
    const double rhs = std::abs(std::sin(bp + bm - 2 * g) * std::sin(bp - bm));
    worst = std::max(worst, std::abs(lhs - rhs));
    const double c = std::cos(bp - g);
    worst_formula = std::max(
        worst_formula, std::abs(q_normal_form(q_from_angle(bp), nu) - (c * c - 0.5) / std::sqrt(2.0)));
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_formula <= 1e-12);
}

TEST_CASE("constraint residual vanishes on constant fields") {
  const auto uniform = sample_field(20, 30, -1.0, 0.0, 0.05, [](double, double) { return 0.7; });
  const auto res = constraint_residual(uniform);
  CHECK(res.max_abs() == 0.0);
  CHECK(res.count(ResidualStatus::Evaluated) == 18u * 28u);
  CHECK(res.count(ResidualStatus::Boundary) == 20u * 30u - 18u * 28u);

  const auto horizontal = sample_field(16, 16, 0.0, 0.0, 0.1, [](double, double) { return kPi / 2; });
  CHECK(constraint_residual(horizontal).max_abs() == 0.0);
}

TEST_CASE("constraint residual on circular layers") {
  const auto r256 = constraint_residual(circular_layers(1.0 / 256));
  CHECK(r256.max_abs() <= 1e-3);

  // The residual is |d_r Q|^2 with d_r Q = 0 exactly, so second-order
  // difference errors enter squared: observed order 4.
  const auto r512 = constraint_residual(circular_layers(1.0 / 512));
  const auto r1024 = constraint_residual(circular_layers(1.0 / 1024));
  const double ratio1 = r256.max_abs() / r512.max_abs();
  const double ratio2 = r512.max_abs() / r1024.max_abs();
  CHECK(ratio1 == doctest::Approx(16.0).epsilon(0.05));
  CHECK(ratio2 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("residual is non-zero where layers are not parallel") {
  // Director tangent to circles: A(Q)(grad Q, grad Q) = |d_theta Q|^2 / r^2 = 1 / r^2.
  const double h = 1.0 / 128;
  const auto field =
      sample_field(65, 65, 0.5, 0.5, h, [](double x, double y) { return std::atan2(y, x) + kPi / 2; });
  const auto res = constraint_residual(field);
  const std::size_t i = 32;
  const std::size_t j = 20;
  const double x = field.x(i);
  const double y = field.y(j);
  CHECK(res.values[i * field.ny + j] == doctest::Approx(1.0 / (x * x + y * y)).epsilon(1e-3));
}

TEST_CASE("residual skips stencils touching the jump set") {
  // Director jumps across x = 0.51 between horizontal and circular layers.
  const double h = 1.0 / 64;
  const auto field = sample_field(
      33, 33, 0.25, 0.25, h,
      [](double x, double y) { return x < 0.51 ? kPi / 2 : std::atan2(y, x); },
      [](double x, double, double hh) { return x < 0.51 && x + hh > 0.51; });
  const auto res = constraint_residual(field);
  CHECK(res.count(ResidualStatus::SkippedJump) > 0);
  for (std::size_t j = 1; j + 1 < field.ny; ++j) {
    // Columns 16 and 17 bound the masked cells [0.5, 0.515625].
    for (const std::size_t i : {16u, 17u}) {
      CHECK(res.status[i * field.ny + j] == ResidualStatus::SkippedJump);
      CHECK(std::isnan(res.values[i * field.ny + j]));
    }
  }
  CHECK(res.max_abs() <= 1e-3);
}
