#include "smectic/jump_energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smectic {

Alpha::Alpha(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in the open interval (0, 1), got " +
                                std::to_string(alpha));
  }
}

double bisector_defect(const JumpTriple& t) {
  return q_normal_form(t.q_plus, t.nu) - q_normal_form(t.q_minus, t.nu);
}

double zeta(const JumpTriple& t, Alpha a, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("zeta: tolerance must be non-negative");
  const double dist = q_distance(t.q_plus, t.q_minus);
  if (dist < kCoincidenceTolerance) return 0.0;
  if (std::abs(bisector_defect(t)) <= tol) return std::pow(dist, a.value());
  return kInfinite;
}

double phi(const JumpTriple& t, Alpha a) {
  const double dist = q_distance(t.q_plus, t.q_minus);
  if (dist < kCoincidenceTolerance) return 0.0;
  const double anisotropy = 1.0 + std::sqrt(2.0) * std::abs(bisector_defect(t)) / dist;
  return std::pow(dist, a.value()) * std::sqrt(anisotropy);
}

std::pair<double, double> phi_angular_forms(double beta_plus, double beta_minus,
                                            double gamma, Alpha a) {
  const double magnitude = std::pow(std::abs(std::sin(beta_plus - beta_minus)), a.value());
  const double first =
      magnitude * std::sqrt(1.0 + std::abs(std::sin(beta_plus + beta_minus - 2.0 * gamma)));
  const double half = 0.5 * (beta_plus + beta_minus) - gamma;
  const double second = magnitude * (std::abs(std::cos(half)) + std::abs(std::sin(half)));
  return {first, second};
}

double phi_angular(double beta_plus, double beta_minus, double gamma, Alpha a) {
  const double magnitude = std::pow(std::abs(std::sin(beta_plus - beta_minus)), a.value());
  return magnitude * std::sqrt(1.0 + std::abs(std::sin(beta_plus + beta_minus - 2.0 * gamma)));
}

std::array<UnitVector, 4> bisectors(const QTensor& q_plus, const QTensor& q_minus) {
  if (q_distance(q_plus, q_minus) < kCoincidenceTolerance) {
    throw std::invalid_argument("bisectors: Q+ == Q-, every normal satisfies the condition");
  }
  const double mean =
      0.5 * (angle_from_q(q_plus).radians() + angle_from_q(q_minus).radians());
  std::array<UnitVector, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = UnitVector(mean + k * 0.5 * kPi);
  return out;
}

double jump_density(DensityKind kind, const JumpTriple& t, Alpha a, double tol) {
  return kind == DensityKind::Singular ? zeta(t, a, tol) : phi(t, a);
}

}  // namespace smectic
