#include "smectic/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smectic/jump_energy.hpp"

namespace smectic {
namespace {

constexpr double kGridTolerance = 1e-12;
constexpr double kCurveTolerance = 1e-12;

double to_rho(double value, ProfileRepr repr) {
  return repr == ProfileRepr::Rho ? value : std::exp(-value);
}

double to_u(double value, ProfileRepr repr) {
  return repr == ProfileRepr::U ? value : -std::log(value);
}

// Locates theta on a uniform grid: returns the left node and the fraction.
std::pair<std::size_t, double> locate(double lo, double h, std::size_t m, double theta) {
  double t = (theta - lo) / h;
  t = std::clamp(t, 0.0, static_cast<double>(m - 1));
  auto k = static_cast<std::size_t>(std::floor(t));
  if (k >= m - 1) k = m - 2;
  return {k, t - static_cast<double>(k)};
}

double interpolate(std::span<const double> v, double lo, double h, double theta) {
  const auto [k, frac] = locate(lo, h, v.size(), theta);
  return (1.0 - frac) * v[k] + frac * v[k + 1];
}

void require_in_span(const RadialProfile& p, double theta, const char* who) {
  if (!(theta >= p.lo() - kGridTolerance && theta <= p.hi() + kGridTolerance)) {
    std::ostringstream msg;
    msg << who << ": angle " << theta << " outside the profile span [" << p.lo() << ", "
        << p.hi() << "]";
    throw std::domain_error(msg.str());
  }
}

double wrap_two_pi(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile::RadialProfile(double theta_lo, double theta_hi, std::vector<double> values,
                             ProfileRepr repr)
    : lo_(theta_lo), hi_(theta_hi), values_(std::move(values)), repr_(repr) {
  if (values_.size() < 3) throw std::invalid_argument("RadialProfile: need at least 3 samples");
  if (!(theta_hi > theta_lo)) throw std::invalid_argument("RadialProfile: empty angular span");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("RadialProfile: non-finite sample");
    if (repr_ == ProfileRepr::Rho && !(v > 0.0)) {
      throw std::invalid_argument("RadialProfile: rho samples must be strictly positive");
    }
  }
}

RadialProfile RadialProfile::from_samples(std::span<const double> thetas,
                                          std::vector<double> values, ProfileRepr repr) {
  if (thetas.size() != values.size()) {
    throw std::invalid_argument("RadialProfile: angle and value counts differ");
  }
  if (thetas.size() < 3) throw std::invalid_argument("RadialProfile: need at least 3 samples");
  const double lo = thetas.front();
  const double hi = thetas.back();
  const double h = (hi - lo) / static_cast<double>(thetas.size() - 1);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (std::abs(thetas[i] - (lo + static_cast<double>(i) * h)) > kGridTolerance) {
      throw std::invalid_argument("RadialProfile: angles are not uniformly spaced");
    }
  }
  return RadialProfile(lo, hi, std::move(values), repr);
}

RadialProfile RadialProfile::sample(double theta_lo, double theta_hi, std::size_t m,
                                    const std::function<double(double)>& fn,
                                    ProfileRepr repr) {
  if (m < 3) throw std::invalid_argument("RadialProfile: need at least 3 samples");
  std::vector<double> v(m);
  const double h = (theta_hi - theta_lo) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    v[i] = fn(i + 1 == m ? theta_hi : theta_lo + static_cast<double>(i) * h);
  }
  return RadialProfile(theta_lo, theta_hi, std::move(v), repr);
}

double RadialProfile::theta(std::size_t i) const {
  if (i + 1 == size()) return hi_;
  return lo_ + static_cast<double>(i) * spacing();
}

double RadialProfile::rho(std::size_t i) const { return to_rho(values_[i], repr_); }
double RadialProfile::u(std::size_t i) const { return to_u(values_[i], repr_); }

std::vector<double> RadialProfile::rho_values() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = rho(i);
  return out;
}

std::vector<double> RadialProfile::u_values() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = u(i);
  return out;
}

std::vector<double> RadialProfile::thetas() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = theta(i);
  return out;
}

RadialProfile RadialProfile::as(ProfileRepr repr) const {
  if (repr == repr_) return *this;
  return RadialProfile(lo_, hi_, repr == ProfileRepr::Rho ? rho_values() : u_values(), repr);
}

double RadialProfile::rho_at(double theta) const {
  require_in_span(*this, theta, "rho_at");
  const auto r = rho_values();
  return interpolate(r, lo_, spacing(), theta);
}

RadialProfile RadialProfile::resampled(std::size_t m) const {
  if (m < 3) throw std::invalid_argument("RadialProfile: need at least 3 samples");
  const double h = spacing();
  return sample(lo_, hi_, m, [&](double t) { return interpolate(values_, lo_, h, t); }, repr_);
}

// ---------------------------------------------------------------------------
// Stencils

std::vector<double> nodal_derivative(std::span<const double> v, double h) {
  const std::size_t m = v.size();
  if (m < 3) throw std::invalid_argument("nodal_derivative: need at least 3 samples");
  std::vector<double> d(m);
  const double inv2h = 1.0 / (2.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv2h;
  d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) * inv2h;
  return d;
}

std::vector<double> cell_derivative(std::span<const double> v, double h) {
  if (v.size() < 2) throw std::invalid_argument("cell_derivative: need at least 2 samples");
  std::vector<double> d(v.size() - 1);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) d[k] = (v[k + 1] - v[k]) / h;
  return d;
}

std::vector<double> trapezoid_weights(std::size_t m, double h) {
  std::vector<double> w(m, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

// ---------------------------------------------------------------------------
// Configurations

RectangleConfig::RectangleConfig(double L, double H, RadialProfile profile)
    : L_(L), H_(H), profile_(profile.as(ProfileRepr::Rho)) {
  if (!(L > 0.0)) throw std::invalid_argument("RectangleConfig: L must be positive");
  if (!(H > 0.5 * L)) throw std::invalid_argument("RectangleConfig: need H > L/2");
  if (std::abs(profile_.lo()) > kGridTolerance || std::abs(profile_.hi() - kPi) > kGridTolerance) {
    throw std::invalid_argument("RectangleConfig: profile must span [0, pi]");
  }
  auto v = profile_.values();
  if (std::abs(v.front() - L) > kGridTolerance || std::abs(v.back() - L) > kGridTolerance) {
    throw std::invalid_argument("RectangleConfig: profile must satisfy rho(0) = rho(pi) = L");
  }
  v.front() = L;
  v.back() = L;
  profile_ = RadialProfile(0.0, kPi, std::move(v), ProfileRepr::Rho);
}

QuarterConfig::QuarterConfig(RadialProfile profile) : profile_(std::move(profile)) {
  if (std::abs(profile_.lo()) > kGridTolerance ||
      std::abs(profile_.hi() - 0.5 * kPi) > kGridTolerance) {
    throw std::invalid_argument("QuarterConfig: profile must span [0, pi/2]");
  }
}

bool QuarterConfig::admissible() const {
  const auto r = profile_.rho_values();
  return std::all_of(r.begin(), r.end(), [](double x) { return x < 1.0; });
}

DirectorLimits director_limits(const RectangleConfig& config, double theta) {
  require_in_span(config.profile(), theta, "director_limits");
  return {DirectorAngle(theta), DirectorAngle(0.5 * kPi)};
}

DirectorLimits director_limits(const QuarterConfig& config, double theta) {
  require_in_span(config.profile(), theta, "director_limits");
  return {DirectorAngle(0.5 * kPi), DirectorAngle(theta)};
}

DirectorAngle eval_director(const RectangleConfig& config, double x1, double x2) {
  const double L = config.L();
  if (x1 < -L || x1 > L || x2 < 0.0 || x2 > config.H()) {
    throw std::domain_error("eval_director: point outside the rectangle");
  }
  const double r = std::hypot(x1, x2);
  if (r == 0.0) throw std::domain_error("eval_director: director undefined at the layer centre");
  const double theta = std::atan2(x2, x1);
  const double rho = config.profile().rho_at(theta);
  if (std::abs(r - rho) <= kCurveTolerance) {
    throw std::domain_error("eval_director: point on the jump curve; use director_limits");
  }
  const auto limits = director_limits(config, theta);
  return r < rho ? limits.inside : limits.outside;
}

DirectorAngle eval_director(const QuarterConfig& config, double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (x1 < 0.0 || x2 < 0.0 || r > 1.0 + kCurveTolerance) {
    throw std::domain_error("eval_director: point outside the quarter disk");
  }
  const double theta = r == 0.0 ? 0.0 : std::atan2(x2, x1);
  const double rho = config.profile().rho_at(theta);
  if (std::abs(r - rho) <= kCurveTolerance) {
    throw std::domain_error("eval_director: point on the jump curve; use director_limits");
  }
  const auto limits = director_limits(config, theta);
  return r < rho ? limits.inside : limits.outside;
}

CurveGeometry curve_geometry(const RadialProfile& profile, double theta) {
  require_in_span(profile, theta, "curve_geometry");
  const auto r = profile.rho_values();
  const double h = profile.spacing();
  const auto dr = nodal_derivative(r, h);
  const double rho = interpolate(r, profile.lo(), h, theta);
  const double drho = interpolate(dr, profile.lo(), h, theta);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CurveGeometry g;
  g.x1 = rho * c;
  g.x2 = rho * s;
  g.tangent_angle = std::atan2(drho * s + rho * c, drho * c - rho * s);
  g.normal_angle = wrap_two_pi(g.tangent_angle + 0.5 * kPi);
  g.arclength_density = std::hypot(rho, drho);
  return g;
}

// ---------------------------------------------------------------------------
// Piecewise-constant configurations

double Interface::length() const { return std::hypot(b.x - a.x, b.y - a.y); }

double PiecewiseConstantConfig::interface_length() const {
  double total = 0.0;
  for (const auto& s : interfaces) total += s.length();
  return total;
}

double polygon_area(std::span<const Point2> polygon) {
  double twice = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    const Point2& p = polygon[k];
    const Point2& q = polygon[(k + 1) % polygon.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

bool point_in_polygon(std::span<const Point2> polygon, Point2 p) {
  bool inside = false;
  for (std::size_t k = 0, j = polygon.size() - 1; k < polygon.size(); j = k++) {
    const Point2& a = polygon[k];
    const Point2& b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::string check_partition(const PiecewiseConstantConfig& config, double domain_area,
                            double tol) {
  double area = 0.0;
  for (const auto& r : config.regions) {
    if (r.polygon.size() < 3) return "region with fewer than 3 vertices";
    area += std::abs(polygon_area(r.polygon));
  }
  if (std::abs(area - domain_area) > tol * std::max(1.0, domain_area)) {
    std::ostringstream msg;
    msg << "region areas sum to " << area << ", domain area is " << domain_area;
    return msg.str();
  }

  auto region_at = [&](Point2 p) -> const Region* {
    for (const auto& r : config.regions) {
      if (point_in_polygon(r.polygon, p)) return &r;
    }
    return nullptr;
  };

  for (std::size_t k = 0; k < config.interfaces.size(); ++k) {
    const Interface& s = config.interfaces[k];
    const double len = s.length();
    if (!(len > 0.0)) return "interface " + std::to_string(k) + " has zero length";
    const double dot = s.nu.x() * (s.b.x - s.a.x) + s.nu.y() * (s.b.y - s.a.y);
    if (std::abs(dot) > tol * len) {
      return "interface " + std::to_string(k) + " normal is not orthogonal to the segment";
    }
    const Point2 mid{0.5 * (s.a.x + s.b.x), 0.5 * (s.a.y + s.b.y)};
    const double delta = 1e-7 * len;
    const Point2 up{mid.x + delta * s.nu.x(), mid.y + delta * s.nu.y()};
    const Point2 down{mid.x - delta * s.nu.x(), mid.y - delta * s.nu.y()};
    if (const Region* r = region_at(up); r && q_distance(r->q, s.q_plus) > kExactTolerance) {
      return "interface " + std::to_string(k) + ": region on the +nu side is not Q+";
    }
    if (const Region* r = region_at(down); r && q_distance(r->q, s.q_minus) > kExactTolerance) {
      return "interface " + std::to_string(k) + ": region on the -nu side is not Q-";
    }
  }
  return {};
}

bool all_bisecting(const PiecewiseConstantConfig& config, double tol) {
  return std::all_of(config.interfaces.begin(), config.interfaces.end(),
                     [&](const Interface& s) {
                       return std::abs(bisector_defect({s.q_plus, s.q_minus, s.nu})) <= tol;
                     });
}

PiecewiseConstantConfig make_zigzag(double b, int n_teeth, const QTensor& q_plus,
                                    const QTensor& q_minus) {
  if (!(b > 0.0)) throw std::invalid_argument("make_zigzag: base must be positive");
  if (n_teeth < 0) throw std::invalid_argument("make_zigzag: n_teeth must be >= 0");

  std::vector<Point2> line;
  if (n_teeth == 0) {
    line = {{0.0, 0.5 * b}, {b, 0.5 * b}};
  } else {
    const double width = b / n_teeth;
    const double base = 0.25 * b;
    line.push_back({0.0, base});
    for (int k = 0; k < n_teeth; ++k) {
      line.push_back({(k + 0.5) * width, base + 0.5 * width});
      line.push_back({k + 1 == n_teeth ? b : (k + 1) * width, base});
    }
  }

  PiecewiseConstantConfig config;
  for (std::size_t k = 0; k + 1 < line.size(); ++k) {
    const Point2 a = line[k];
    const Point2 c = line[k + 1];
    // Upward normal of a left-to-right segment.
    const double gamma = std::atan2(c.y - a.y, c.x - a.x) + 0.5 * kPi;
    config.interfaces.push_back({a, c, q_plus, q_minus, UnitVector(gamma)});
  }

  std::vector<Point2> lower{{0.0, 0.0}, {b, 0.0}};
  lower.insert(lower.end(), line.rbegin(), line.rend());
  std::vector<Point2> upper(line.begin(), line.end());
  upper.push_back({b, b});
  upper.push_back({0.0, b});
  config.regions.push_back({std::move(lower), q_minus});
  config.regions.push_back({std::move(upper), q_plus});
  config.bisecting = all_bisecting(config);
  return config;
}

// ---------------------------------------------------------------------------
// Parabolic arcs

double parabolic_arc_x1(double a, double b, double x2) {
  const double first = std::sqrt(std::max(0.0, a * a + 2.0 * a * x2));
  const double second = std::sqrt(std::max(0.0, b * b - 2.0 * b * x2));
  return std::min(first, second);
}

ArcFit fit_parabolic_arcs(const RadialProfile& profile) {
  if (std::abs(profile.lo()) > kGridTolerance ||
      std::abs(profile.hi() - 0.5 * kPi) > kGridTolerance) {
    throw std::invalid_argument("fit_parabolic_arcs: profile must span [0, pi/2]");
  }
  const auto r = profile.rho_values();
  ArcFit fit;
  fit.a = r.front();
  fit.b = 2.0 * r.back();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double t = profile.theta(i);
    const double x1 = r[i] * std::cos(t);
    const double x2 = r[i] * std::sin(t);
    fit.max_deviation = std::max(fit.max_deviation, std::abs(x1 - parabolic_arc_x1(fit.a, fit.b, x2)));
  }
  return fit;
}

}  // namespace smectic
