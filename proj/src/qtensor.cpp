#include "smectic/qtensor.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace smectic {
namespace {

constexpr double kNormSquared = 0.125;  // q11^2 + q12^2 on the manifold
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

DirectorAngle::DirectorAngle(double beta) {
  double b = std::fmod(beta, kPi);
  if (b < 0.0) b += kPi;
  // fmod can return exactly pi after the shift for tiny negative inputs.
  if (b >= kPi) b = 0.0;
  beta_ = b;
}

double manifold_defect(double q11, double q12) {
  return std::abs(q11 * q11 + q12 * q12 - kNormSquared);
}

QTensor QTensor::from_components(double q11, double q12, double tol) {
  if (!std::isfinite(q11) || !std::isfinite(q12) ||
      manifold_defect(q11, q12) > tol) {
    throw std::invalid_argument(
        "Q-tensor components (" + std::to_string(q11) + ", " + std::to_string(q12) +
        ") are not on the manifold q11^2 + q12^2 = 1/8");
  }
  return QTensor(q11, q12);
}

QTensor q_from_angle(DirectorAngle beta) {
  const double two_beta = 2.0 * beta.radians();
  const double scale = 1.0 / (2.0 * kSqrt2);
  return QTensor(scale * std::cos(two_beta), scale * std::sin(two_beta));
}

DirectorAngle angle_from_q(const QTensor& q) {
  return DirectorAngle(0.5 * std::atan2(q.q12(), q.q11()));
}

DirectorAngle angle_from_q(double q11, double q12) {
  return angle_from_q(QTensor::from_components(q11, q12, kParsedTolerance));
}

double q_distance(const QTensor& qp, const QTensor& qm) {
  const double d11 = qp.q11() - qm.q11();
  const double d12 = qp.q12() - qm.q12();
  return std::sqrt(2.0 * (d11 * d11 + d12 * d12));
}

double q_normal_form(const QTensor& q, const UnitVector& nu) {
  const auto m = q.matrix();
  const double vx = nu.x();
  const double vy = nu.y();
  const double qx = m[0][0] * vx + m[0][1] * vy;
  const double qy = m[1][0] * vx + m[1][1] * vy;
  return vx * qx + vy * qy;
}

SampledField sample_field(std::size_t nx, std::size_t ny, double x0, double y0, double h,
                          const std::function<double(double, double)>& director_angle,
                          const std::function<bool(double, double, double)>& masked) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("sample_field: need at least 2x2 points");
  if (!(h > 0.0)) throw std::invalid_argument("sample_field: spacing must be positive");

  SampledField f;
  f.nx = nx;
  f.ny = ny;
  f.x0 = x0;
  f.y0 = y0;
  f.h = h;
  f.values.reserve(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      f.values.push_back(q_from_angle(director_angle(f.x(i), f.y(j))));
    }
  }
  f.jump_mask.assign((nx - 1) * (ny - 1), 0);
  if (masked) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      for (std::size_t j = 0; j + 1 < ny; ++j) {
        f.jump_mask[i * (ny - 1) + j] = masked(f.x(i), f.y(j), h) ? 1 : 0;
      }
    }
  }
  return f;
}

double ResidualGrid::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (status[k] == ResidualStatus::Evaluated) m = std::max(m, std::abs(values[k]));
  }
  return m;
}

std::size_t ResidualGrid::count(ResidualStatus s) const {
  return static_cast<std::size_t>(std::count(status.begin(), status.end(), s));
}

ResidualGrid constraint_residual(const SampledField& field) {
  const std::size_t nx = field.nx;
  const std::size_t ny = field.ny;
  if (field.values.size() != nx * ny || field.jump_mask.size() != (nx - 1) * (ny - 1)) {
    throw std::invalid_argument("constraint_residual: inconsistent field dimensions");
  }

  ResidualGrid out;
  out.nx = nx;
  out.ny = ny;
  out.values.assign(nx * ny, std::numeric_limits<double>::quiet_NaN());
  out.status.assign(nx * ny, ResidualStatus::Boundary);

  const double inv2h = 1.0 / (2.0 * field.h);
  for (std::size_t i = 1; i + 1 < nx; ++i) {
    for (std::size_t j = 1; j + 1 < ny; ++j) {
      // The 5-point stencil around (i, j) lies in the four incident cells.
      if (field.cell_masked(i - 1, j - 1) || field.cell_masked(i - 1, j) ||
          field.cell_masked(i, j - 1) || field.cell_masked(i, j)) {
        out.status[i * ny + j] = ResidualStatus::SkippedJump;
        continue;
      }
      const QTensor& e = field.at(i + 1, j);
      const QTensor& w = field.at(i - 1, j);
      const QTensor& n = field.at(i, j + 1);
      const QTensor& s = field.at(i, j - 1);
      // Independent component gradients; index 0 = x, 1 = y.
      const double g11[2] = {(e.q11() - w.q11()) * inv2h, (n.q11() - s.q11()) * inv2h};
      const double g12[2] = {(e.q12() - w.q12()) * inv2h, (n.q12() - s.q12()) * inv2h};

      const auto q = field.at(i, j).matrix();
      double a = 0.0;
      for (int hh = 0; hh < 2; ++hh) {
        for (int k = 0; k < 2; ++k) {
          const double coeff = kSqrt2 * q[hh][k] + (hh == k ? 0.5 : 0.0);
          // Q_ij,h Q_ij,k summed over the full trace-free symmetric matrix.
          const double contraction = 2.0 * (g11[hh] * g11[k] + g12[hh] * g12[k]);
          a += coeff * contraction;
        }
      }
      out.values[i * ny + j] = a;
      out.status[i * ny + j] = ResidualStatus::Evaluated;
    }
  }
  return out;
}

}  // namespace smectic
