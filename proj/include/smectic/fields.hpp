#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smectic/qtensor.hpp"

namespace smectic {

/// Stored quantity of a radial profile: rho directly, or u with rho = exp(-u).
enum class ProfileRepr { Rho, U };

/// Samples of a polar jump curve r = rho(theta) on a uniform grid of m >= 3
/// angles spanning [lo, hi] inclusive.
class RadialProfile {
 public:
  RadialProfile(double theta_lo, double theta_hi, std::vector<double> values,
                ProfileRepr repr);

  /// Builds a profile from explicit angles, which must be uniform to 1e-12.
  static RadialProfile from_samples(std::span<const double> thetas,
                                    std::vector<double> values, ProfileRepr repr);

  static RadialProfile sample(double theta_lo, double theta_hi, std::size_t m,
                              const std::function<double(double)>& fn, ProfileRepr repr);

  std::size_t size() const { return values_.size(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double spacing() const { return (hi_ - lo_) / static_cast<double>(size() - 1); }
  double theta(std::size_t i) const;
  ProfileRepr repr() const { return repr_; }
  const std::vector<double>& values() const { return values_; }

  double rho(std::size_t i) const;
  double u(std::size_t i) const;
  std::vector<double> rho_values() const;
  std::vector<double> u_values() const;
  std::vector<double> thetas() const;

  RadialProfile as(ProfileRepr repr) const;

  /// rho at an arbitrary angle in [lo, hi] by linear interpolation of rho.
  double rho_at(double theta) const;

  /// Linear interpolation of the stored values onto an m-point grid.
  RadialProfile resampled(std::size_t m) const;

 private:
  double lo_;
  double hi_;
  std::vector<double> values_;
  ProfileRepr repr_;
};

/// Nodal derivative: central differences inside, second-order one-sided
/// differences at both ends.
std::vector<double> nodal_derivative(std::span<const double> v, double h);

/// Cell derivative (v[k+1] - v[k]) / h, central about each cell midpoint.
std::vector<double> cell_derivative(std::span<const double> v, double h);

/// Trapezoid weights for m uniformly spaced nodes.
std::vector<double> trapezoid_weights(std::size_t m, double h);

// ---------------------------------------------------------------------------
// Restricted configurations.

/// Rectangle (-L, L) x (0, H): circular layers inside the curve, horizontal
/// layers outside. The profile spans [0, pi] with rho(0) = rho(pi) = L.
class RectangleConfig {
 public:
  RectangleConfig(double L, double H, RadialProfile profile);

  double L() const { return L_; }
  double H() const { return H_; }
  const RadialProfile& profile() const { return profile_; }

 private:
  double L_;
  double H_;
  RadialProfile profile_;
};

/// Unit quarter disk: horizontal layers inside the curve, circular layers
/// outside. The profile spans [0, pi/2] with free end values.
class QuarterConfig {
 public:
  explicit QuarterConfig(RadialProfile profile);

  const RadialProfile& profile() const { return profile_; }
  /// rho < 1 at every sample (the curve stays inside the disk).
  bool admissible() const;

 private:
  RadialProfile profile_;
};

/// Director angles on the two sides of the curve at a given polar angle.
struct DirectorLimits {
  DirectorAngle inside;   // r < rho(theta)
  DirectorAngle outside;  // r > rho(theta)
};

DirectorLimits director_limits(const RectangleConfig& config, double theta);
DirectorLimits director_limits(const QuarterConfig& config, double theta);

/// Director at a point off the jump curve. Throws std::domain_error for points
/// outside the domain or within 1e-12 of the curve.
DirectorAngle eval_director(const RectangleConfig& config, double x1, double x2);
DirectorAngle eval_director(const QuarterConfig& config, double x1, double x2);

struct CurveGeometry {
  double x1 = 0.0;
  double x2 = 0.0;
  double tangent_angle = 0.0;
  double normal_angle = 0.0;  // tangent + pi/2, in [0, 2 pi)
  double arclength_density = 0.0;
};

/// Point, tangent, normal and |dC/dtheta| of the polar curve. rho' is the
/// nodal derivative of the samples, interpolated linearly.
CurveGeometry curve_geometry(const RadialProfile& profile, double theta);

// ---------------------------------------------------------------------------
// Piecewise-constant configurations.

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Region {
  std::vector<Point2> polygon;  // counter-clockwise
  QTensor q;
};

/// Straight jump segment; nu points from the Q- side into the Q+ side.
struct Interface {
  Point2 a;
  Point2 b;
  QTensor q_plus;
  QTensor q_minus;
  UnitVector nu;

  double length() const;
};

struct PiecewiseConstantConfig {
  std::vector<Region> regions;
  std::vector<Interface> interfaces;
  /// Every interface normal satisfies the dislocation-free condition.
  bool bisecting = false;

  double interface_length() const;
};

double polygon_area(std::span<const Point2> polygon);
bool point_in_polygon(std::span<const Point2> polygon, Point2 p);

/// Checks the structural invariants: region areas sum to `domain_area`, each
/// normal is orthogonal to its segment, and the regions found just across each
/// interface carry the declared Q+ / Q- values. Returns an empty string when
/// consistent, otherwise a description of the first violation.
std::string check_partition(const PiecewiseConstantConfig& config, double domain_area,
                            double tol = 1e-9);

/// Square [0, b] x [0, b] split by a 45-degree sawtooth of n_teeth teeth
/// (Q- below, Q+ above). n_teeth == 0 gives a flat horizontal interface.
PiecewiseConstantConfig make_zigzag(double b, int n_teeth, const QTensor& q_plus,
                                    const QTensor& q_minus);

/// Whether every interface normal bisects its director pair to `tol`.
bool all_bisecting(const PiecewiseConstantConfig& config, double tol = kExactTolerance);

// ---------------------------------------------------------------------------
// Parabolic-arc comparison for the quarter-disk curve.

struct ArcFit {
  double a = 0.0;
  double b = 0.0;
  double max_deviation = 0.0;
};

/// x1 = min(sqrt(a^2 + 2 a x2), sqrt(b^2 - 2 b x2)); the second branch is
/// clamped to 0 above its apex x2 = b/2.
double parabolic_arc_x1(double a, double b, double x2);

/// Pins a = rho(0), b = 2 rho(pi/2) and reports the largest horizontal gap
/// between the profile and the arcs at equal height.
ArcFit fit_parabolic_arcs(const RadialProfile& profile);

}  // namespace smectic
