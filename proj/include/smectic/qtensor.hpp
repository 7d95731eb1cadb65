#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace smectic {

inline constexpr double kPi = std::numbers::pi;

/// Membership tolerance for tensors built from an angle.
inline constexpr double kExactTolerance = 1e-12;
/// Membership tolerance for tensors built from user-supplied components.
inline constexpr double kParsedTolerance = 1e-9;

/// Line-field angle. Directors n and -n are identified, so the angle is
/// stored modulo pi in [0, pi).
class DirectorAngle {
 public:
  DirectorAngle() = default;
  explicit DirectorAngle(double beta);

  double radians() const { return beta_; }

 private:
  double beta_ = 0.0;
};

/// Unit normal nu = (cos gamma, sin gamma). The angle is kept as given.
class UnitVector {
 public:
  UnitVector() = default;
  explicit UnitVector(double gamma) : gamma_(gamma) {}

  double angle() const { return gamma_; }
  double x() const { return std::cos(gamma_); }
  double y() const { return std::sin(gamma_); }
  UnitVector opposite() const { return UnitVector(gamma_ + kPi); }

 private:
  double gamma_ = 0.0;
};

/// Normalized two-dimensional uniaxial Q-tensor
///   Q = (n (x) n - I/2) / sqrt(2) = [[q11, q12], [q12, -q11]],
/// with q11^2 + q12^2 = 1/8, i.e. Frobenius norm 1/2.
class QTensor {
 public:
  /// Builds a tensor from raw components; throws std::invalid_argument when
  /// the components are off the unit-norm manifold by more than `tol`.
  static QTensor from_components(double q11, double q12,
                                 double tol = kParsedTolerance);

  double q11() const { return q11_; }
  double q12() const { return q12_; }

  std::array<std::array<double, 2>, 2> matrix() const {
    return {{{q11_, q12_}, {q12_, -q11_}}};
  }

  friend bool operator==(const QTensor&, const QTensor&) = default;

 private:
  friend QTensor q_from_angle(DirectorAngle beta);
  QTensor(double q11, double q12) : q11_(q11), q12_(q12) {}

  double q11_ = 0.0;
  double q12_ = 0.0;
};

/// Distance of (q11, q12) from the manifold, measured on q11^2 + q12^2.
double manifold_defect(double q11, double q12);

QTensor q_from_angle(DirectorAngle beta);
inline QTensor q_from_angle(double beta) { return q_from_angle(DirectorAngle(beta)); }

DirectorAngle angle_from_q(const QTensor& q);
/// Validating overload for raw components (parsed input).
DirectorAngle angle_from_q(double q11, double q12);

/// Frobenius distance |Q+ - Q-|; equals |sin(beta+ - beta-)|.
double q_distance(const QTensor& qp, const QTensor& qm);

/// Contraction nu . (Q nu).
double q_normal_form(const QTensor& q, const UnitVector& nu);

// ---------------------------------------------------------------------------
// Sampled fields and the layer-thickness constraint residual.

/// Q-tensor samples on a rectangular lattice x = x0 + i h, y = y0 + j h with
/// 0 <= i < nx, 0 <= j < ny. Cell (i, j) spans [x_i, x_{i+1}] x [y_j, y_{j+1}]
/// and is marked in `jump_mask` when the jump set crosses it.
struct SampledField {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 0.0;
  std::vector<QTensor> values;       // index i * ny + j
  std::vector<std::uint8_t> jump_mask;  // index i * (ny - 1) + j

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
  double y(std::size_t j) const { return y0 + static_cast<double>(j) * h; }
  const QTensor& at(std::size_t i, std::size_t j) const { return values[i * ny + j]; }
  bool cell_masked(std::size_t i, std::size_t j) const {
    return jump_mask[i * (ny - 1) + j] != 0;
  }
};

/// Samples a director-angle field. `masked` (optional) marks cells crossed by
/// the jump set given the cell's lower-left corner and the spacing.
SampledField sample_field(
    std::size_t nx, std::size_t ny, double x0, double y0, double h,
    const std::function<double(double, double)>& director_angle,
    const std::function<bool(double, double, double)>& masked = {});

enum class ResidualStatus : std::uint8_t { Evaluated, Boundary, SkippedJump };

struct ResidualGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;  // NaN where not evaluated
  std::vector<ResidualStatus> status;

  double max_abs() const;
  std::size_t count(ResidualStatus s) const;
};

/// Pointwise A(Q)(grad Q, grad Q) = (sqrt2 Q_hk + delta_hk / 2) Q_ij,h Q_ij,k
/// with central differences. Points whose stencil touches a masked cell are
/// flagged SkippedJump; lattice-boundary points are flagged Boundary.
ResidualGrid constraint_residual(const SampledField& field);

}  // namespace smectic
