#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smectic/jump_energy.hpp"

using namespace smectic;

namespace {

JumpTriple triple(double bp, double bm, double gamma) {
  return {q_from_angle(bp), q_from_angle(bm), UnitVector(gamma)};
}

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> angle{-10.0, 10.0};
  std::uniform_real_distribution<double> alpha{0.01, 0.99};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double a() { return angle(rng); }
  Alpha al() { return Alpha(alpha(rng)); }
};

}  // namespace

TEST_CASE("alpha must lie strictly inside (0, 1)") {
  CHECK_NOTHROW(Alpha(0.99));
  CHECK_THROWS_AS(Alpha(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Alpha(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Alpha(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(Alpha(std::nan("")), std::invalid_argument);
}

TEST_CASE("zeta reference values") {
  const Alpha a(0.5);
  CHECK(zeta(triple(kPi / 2, 0, kPi / 4), a, 1e-12) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(zeta(triple(kPi / 2, 0, kPi / 2), a, 1e-12) == kInfinite);
  CHECK(zeta(triple(0.4, 0.4, 1.1), a, 1e-12) == 0.0);
  CHECK(zeta(triple(0.4, 0.4 + kPi, 1.1), a, 1e-12) == 0.0);
  CHECK_THROWS(zeta(triple(0.4, 0.1, 1.1), a, -1.0));
}

TEST_CASE("zeta tolerance defines the constraint") {
  const Alpha a(0.5);
  // Normal 1e-6 off the bisector: defect about 1e-6 / sqrt2.
  const auto t = triple(kPi / 2, 0, kPi / 4 + 1e-6);
  CHECK(zeta(t, a, 1e-12) == kInfinite);
  CHECK(zeta(t, a, 1e-5) == doctest::Approx(1.0));
}

TEST_CASE("phi reference values") {
  CHECK(phi(triple(kPi / 2, 0, kPi / 4), Alpha(0.2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi(triple(kPi / 2, 0, kPi / 2), Alpha(0.5)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(phi(triple(1.0, 1.0, 0.3), Alpha(0.5)) == 0.0);
}

TEST_CASE("phi_angular reference values") {
  const Alpha a(0.5);
  CHECK(phi_angular(kPi / 2, 0, kPi / 4, a) == doctest::Approx(1.0).epsilon(1e-14));
  const double s = std::sqrt(3.0) / 2;
  CHECK(phi_angular(kPi / 3, 0, 0, a) ==
        doctest::Approx(std::sqrt(s) * std::sqrt(1 + s)).epsilon(1e-14));
  CHECK(phi_angular(0.7, 0.7, 2.0, a) == 0.0);
}

TEST_CASE("bisectors") {
  const auto b = bisectors(q_from_angle(kPi / 2), q_from_angle(0.0));
  for (int k = 0; k < 4; ++k) {
    CHECK(b[k].angle() == doctest::Approx(kPi / 4 + k * kPi / 2).epsilon(1e-14));
  }
  CHECK_THROWS_AS(bisectors(q_from_angle(0.3), q_from_angle(0.3 + kPi)), std::invalid_argument);

  const auto b3 = bisectors(q_from_angle(kPi / 3), q_from_angle(0.0));
  CHECK(b3[0].angle() == doctest::Approx(kPi / 6).epsilon(1e-14));
  const Alpha a(0.3);
  CHECK(phi({q_from_angle(kPi / 3), q_from_angle(0.0), b3[0]}, a) ==
        doctest::Approx(std::pow(std::sin(kPi / 3), 0.3)).epsilon(1e-14));

  Sampler s(7);
  for (int k = 0; k < 2000; ++k) {
    const QTensor qp = q_from_angle(s.a());
    const QTensor qm = q_from_angle(s.a());
    if (q_distance(qp, qm) < 1e-6) continue;
    const auto nus = bisectors(qp, qm);
    for (const auto& nu : nus) CHECK(std::abs(bisector_defect({qp, qm, nu})) <= 1e-12);
    CHECK(std::abs(nus[2].x() + nus[0].x()) < 1e-12);
    CHECK(std::abs(nus[2].y() + nus[0].y()) < 1e-12);
    CHECK(std::abs(nus[3].x() + nus[1].x()) < 1e-12);
    CHECK(std::abs(nus[3].y() + nus[1].y()) < 1e-12);
  }
}

TEST_CASE("phi agrees with both angular forms on random samples") {
  Sampler s(21);
  double worst_forms = 0.0;
  double worst_tensor = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double bp = s.a();
    const double bm = s.a();
    const double g = s.a();
    const Alpha a = s.al();
    const auto [f1, f2] = phi_angular_forms(bp, bm, g, a);
    worst_forms = std::max(worst_forms, std::abs(f1 - f2));
    worst_tensor = std::max(worst_tensor, std::abs(phi(triple(bp, bm, g), a) - f1));
  }
  CHECK(worst_forms <= 1e-12);
  CHECK(worst_tensor <= 1e-12);
}

TEST_CASE("C1: phi vanishes exactly on equal tensors") {
  Sampler s(31);
  for (int k = 0; k < 10000; ++k) {
    const double b = s.a();
    const Alpha a = s.al();
    CHECK(phi(triple(b, b + kPi * std::round(s.a()), s.a()), a) == 0.0);
    const double bm = s.a();
    const auto t = triple(b, bm, s.a());
    const double d = q_distance(t.q_plus, t.q_minus);
    if (d >= 1e-12) CHECK(phi(t, a) >= std::pow(d, a.value()) * (1 - 1e-14));
  }
}

TEST_CASE("C2: swapping sides and flipping the normal") {
  Sampler s(41);
  for (int k = 0; k < 10000; ++k) {
    const double bp = s.a();
    const double bm = s.a();
    const double g = s.a();
    const Alpha a = s.al();
    const double lhs = phi({q_from_angle(bm), q_from_angle(bp), UnitVector(g).opposite()}, a);
    const double rhs = phi(triple(bp, bm, g), a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }
}

TEST_CASE("C3: rotation and reflection invariance") {
  Sampler s(51);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double bp = s.a();
    const double bm = s.a();
    const double g = s.a();
    const double d = s.a();
    const Alpha a = s.al();
    const double base = phi(triple(bp, bm, g), a);
    worst = std::max(worst, std::abs(phi(triple(bp + d, bm + d, g + d), a) - base));
    worst = std::max(worst, std::abs(phi(triple(-bp, -bm, -g), a) - base));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("C4: minima over normals sit at the bisectors") {
  Sampler s(61);
  const int n = 10000;
  const double cell = 2 * kPi / n;
  for (int trial = 0; trial < 20; ++trial) {
    const QTensor qp = q_from_angle(s.a());
    const QTensor qm = q_from_angle(s.a());
    if (q_distance(qp, qm) < 1e-3) continue;
    const Alpha a = s.al();
    const auto nus = bisectors(qp, qm);
    const double at_bisector = phi({qp, qm, nus[0]}, a);
    double grid_min = kInfinite;
    double argmin = 0.0;
    for (int k = 0; k < n; ++k) {
      const double g = k * cell;
      const double v = phi({qp, qm, UnitVector(g)}, a);
      CHECK(at_bisector <= v + 1e-14);
      if (v < grid_min) {
        grid_min = v;
        argmin = g;
      }
    }
    double gap = kInfinite;
    for (const auto& nu : nus) gap = std::min(gap, std::abs(std::remainder(argmin - nu.angle(), 2 * kPi)));
    CHECK(gap <= cell);
    for (const auto& nu : nus) CHECK(phi({qp, qm, nu}, a) == doctest::Approx(at_bisector).epsilon(1e-13));
  }
}

TEST_CASE("envelope lies below the singular density") {
  Sampler s(71);
  for (int k = 0; k < 10000; ++k) {
    const auto t = triple(s.a(), s.a(), s.a());
    const Alpha a = s.al();
    CHECK(phi(t, a) <= zeta(t, a, 0.0));
  }
  // Equality at the bisectors.
  for (int k = 0; k < 1000; ++k) {
    const QTensor qp = q_from_angle(s.a());
    const QTensor qm = q_from_angle(s.a());
    if (q_distance(qp, qm) < 1e-6) continue;
    const Alpha a = s.al();
    const JumpTriple t{qp, qm, bisectors(qp, qm)[1]};
    CHECK(phi(t, a) == doctest::Approx(zeta(t, a, 1e-12)).epsilon(1e-13));
  }
}

TEST_CASE("anisotropy factor lies in [1, sqrt2]") {
  Sampler s(81);
  for (int k = 0; k < 10000; ++k) {
    const auto t = triple(s.a(), s.a(), s.a());
    const double d = q_distance(t.q_plus, t.q_minus);
    if (d < 1e-8) continue;
    const Alpha a = s.al();
    const double ratio = phi(t, a) / std::pow(d, a.value());
    CHECK(ratio >= 1.0 - 1e-14);
    CHECK(ratio <= std::sqrt(2.0) + 1e-14);
  }
}

TEST_CASE("jump_density dispatches on the kind") {
  const auto t = triple(kPi / 2, 0, kPi / 2);
  const Alpha a(0.5);
  CHECK(jump_density(DensityKind::Singular, t, a, 1e-12) == kInfinite);
  CHECK(jump_density(DensityKind::Envelope, t, a, 1e-12) == phi(t, a));
}
