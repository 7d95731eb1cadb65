#pragma once

#include <array>
#include <limits>
#include <utility>

#include "smectic/qtensor.hpp"

namespace smectic {

/// Exponent of the jump magnitude, strictly inside (0, 1).
class Alpha {
 public:
  explicit Alpha(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

struct JumpTriple {
  QTensor q_plus;
  QTensor q_minus;
  UnitVector nu;
};

/// Singular density (infinite off the bisectors) or its envelope.
enum class DensityKind { Singular, Envelope };

/// Extended-real infinity returned by the singular density.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// |dQ| below this is treated as Q+ == Q-.
inline constexpr double kCoincidenceTolerance = 1e-14;

/// Dislocation-free condition residual Q+ nu.nu - Q- nu.nu.
double bisector_defect(const JumpTriple& t);

/// |Q+ - Q-|^alpha when |Q+ nu.nu - Q- nu.nu| <= tol, kInfinite otherwise.
double zeta(const JumpTriple& t, Alpha a, double tol);

/// Envelope density
///   |dQ|^alpha (1 + sqrt2 |Q+ nu.nu - Q- nu.nu| / |dQ|)^(1/2),
/// and exactly 0 when Q+ == Q-.
double phi(const JumpTriple& t, Alpha a);

/// The two angular forms of the envelope density:
///   |sin(b+ - b-)|^a (1 + |sin(b+ + b- - 2g)|)^(1/2)
///   |sin(b+ - b-)|^a (|cos((b+ + b-)/2 - g)| + |sin((b+ + b-)/2 - g)|)
std::pair<double, double> phi_angular_forms(double beta_plus, double beta_minus,
                                            double gamma, Alpha a);

/// Angular form of phi. Angles are used as given.
double phi_angular(double beta_plus, double beta_minus, double gamma, Alpha a);

/// The four normals bisecting the directors, gamma_k = (b+ + b-)/2 + k pi/2.
/// Throws std::invalid_argument when Q+ == Q-.
std::array<UnitVector, 4> bisectors(const QTensor& q_plus, const QTensor& q_minus);

/// Dispatches on the density kind; `tol` only applies to Singular.
double jump_density(DensityKind kind, const JumpTriple& t, Alpha a, double tol);

}  // namespace smectic
