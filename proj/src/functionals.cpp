#include "smectic/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smectic {
namespace {

const double kSqrt2 = std::sqrt(2.0);

// One quadrature sample: integrand evaluated at `node` with derivative
// sum_k coef[k] * v[idx[k]], multiplied by `weight`.
struct Sample {
  std::size_t node = 0;
  double weight = 0.0;
  std::array<std::size_t, 3> idx{};
  std::array<double, 3> coef{};
  int terms = 0;

  double derivative(std::span<const double> v) const {
    double d = 0.0;
    for (int k = 0; k < terms; ++k) d += coef[k] * v[idx[k]];
    return d;
  }

  void scatter(std::span<double> grad, double dI_dd) const {
    for (int k = 0; k < terms; ++k) grad[idx[k]] += dI_dd * coef[k];
  }
};

std::vector<Sample> make_samples(std::size_t m, double h, DerivativeStencil stencil) {
  std::vector<Sample> out;
  if (stencil == DerivativeStencil::Nodal) {
    const double c = 1.0 / (2.0 * h);
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Sample s;
      s.node = i;
      s.weight = (i == 0 || i + 1 == m) ? 0.5 * h : h;
      if (i == 0) {
        s.idx = {0, 1, 2};
        s.coef = {-3.0 * c, 4.0 * c, -c};
        s.terms = 3;
      } else if (i + 1 == m) {
        s.idx = {m - 1, m - 2, m - 3};
        s.coef = {3.0 * c, -4.0 * c, c};
        s.terms = 3;
      } else {
        s.idx = {i - 1, i + 1, 0};
        s.coef = {-c, c, 0.0};
        s.terms = 2;
      }
      out.push_back(s);
    }
  } else {
    out.reserve(2 * (m - 1));
    for (std::size_t k = 0; k + 1 < m; ++k) {
      for (std::size_t end : {k, k + 1}) {
        Sample s;
        s.node = end;
        s.weight = 0.5 * h;
        s.idx = {k, k + 1, 0};
        s.coef = {-1.0 / h, 1.0 / h, 0.0};
        s.terms = 2;
        out.push_back(s);
      }
    }
  }
  return out;
}

double node_theta(std::size_t i, std::size_t m, double lo, double hi) {
  if (i + 1 == m) return hi;
  return lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(m - 1);
}

// f / sqrt(eps + f^2), taking 0 where both vanish.
double smooth_sign(double f, double root) { return root > 0.0 ? f / root : 0.0; }

void require_quarter_span(const RadialProfile& p, const char* who) {
  if (std::abs(p.lo()) > 1e-12 || std::abs(p.hi() - 0.5 * kPi) > 1e-12) {
    throw std::invalid_argument(std::string(who) + ": profile must span [0, pi/2]");
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!(K1 > 0.0)) throw std::invalid_argument("K1 must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
}

std::string_view to_string(DerivativeStencil s) {
  return s == DerivativeStencil::Nodal ? "nodal-central" : "staggered-central";
}

double BoundaryTermForm::g(double theta) const {
  return weight == BoundaryWeight::Linear ? 1.0 - 2.0 * theta / kPi : std::cos(theta);
}

double BoundaryTermForm::dg(double theta) const {
  return weight == BoundaryWeight::Linear ? -2.0 / kPi : -std::sin(theta);
}

double jump_f(double theta, double du) {
  return (du * du - 1.0) * std::cos(theta) + 2.0 * du * std::sin(theta);
}

// ---------------------------------------------------------------------------
// QuarterObjective

QuarterObjective::QuarterObjective(std::size_t m, const ModelParams& params,
                                   BoundaryTermForm form, DerivativeStencil stencil)
    : m_(m), h_(0.5 * kPi / static_cast<double>(m - 1)), params_(params), form_(form),
      stencil_(stencil) {
  if (m < 3) throw std::invalid_argument("QuarterObjective: need at least 3 mesh points");
  params_.validate();
}

EnergyBreakdown QuarterObjective::evaluate(std::span<const double> u,
                                           std::span<double> grad) const {
  if (u.size() != m_) throw std::invalid_argument("QuarterObjective: wrong vector size");
  const bool want_grad = !grad.empty();
  if (want_grad) {
    if (grad.size() != m_) throw std::invalid_argument("QuarterObjective: wrong gradient size");
    std::fill(grad.begin(), grad.end(), 0.0);
  }

  const double mu = params_.mu;
  const double alpha = params_.alpha.value();
  const double eps = params_.epsilon;
  EnergyBreakdown e;

  // Elastic: (K1/2) trapezoid of u.
  for (std::size_t i = 0; i < m_; ++i) {
    const double w = (i == 0 || i + 1 == m_) ? 0.5 * h_ : h_;
    e.elastic += 0.5 * params_.K1 * w * u[i];
    if (want_grad) grad[i] += 0.5 * params_.K1 * w;
  }

  const auto samples = make_samples(m_, h_, stencil_);
  for (const Sample& s : samples) {
    const double theta = node_theta(s.node, m_, 0.0, 0.5 * kPi);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double d = s.derivative(u);
    const double decay = std::exp(-u[s.node]);

    // Interior jump: mu |cos|^alpha e^{-u} (d^2 + 1 + sqrt(eps + f^2))^{1/2}.
    const double f = (d * d - 1.0) * c + 2.0 * d * sn;
    const double root = std::sqrt(eps + f * f);
    const double inner = d * d + 1.0 + root;
    const double sq = std::sqrt(inner);
    const double pref = mu * std::pow(std::abs(c), alpha) * decay;
    const double jump = pref * sq;
    e.jump_interior += s.weight * jump;

    double dI_dd = 0.0;
    double dI_du = 0.0;
    if (want_grad) {
      const double dinner = 2.0 * d + smooth_sign(f, root) * (2.0 * d * c + 2.0 * sn);
      dI_dd += pref * dinner / (2.0 * sq);
      dI_du -= jump;
    }

    if (form_.form == BoundaryForm::Integral) {
      const double g = form_.g(theta);
      const double dg = form_.dg(theta);
      const double bd = kSqrt2 * mu * decay * (d * g - dg);
      e.jump_boundary += s.weight * bd;
      if (want_grad) {
        dI_dd += kSqrt2 * mu * decay * g;
        dI_du -= bd;
      }
    }

    if (want_grad) {
      grad[s.node] += s.weight * dI_du;
      s.scatter(grad, s.weight * dI_dd);
    }
  }

  if (form_.form == BoundaryForm::Pointwise) {
    const double bd = kSqrt2 * mu * std::exp(-u[0]);
    e.jump_boundary = bd;
    if (want_grad) grad[0] -= bd;
  }

  e.total = e.elastic + e.jump_interior + e.jump_boundary;
  return e;
}

// ---------------------------------------------------------------------------
// RectangleObjective

RectangleObjective::RectangleObjective(std::size_t m, double L, const ModelParams& params,
                                       DerivativeStencil stencil)
    : m_(m), h_(kPi / static_cast<double>(m - 1)), L_(L), params_(params), stencil_(stencil) {
  if (m < 3) throw std::invalid_argument("RectangleObjective: need at least 3 mesh points");
  if (!(L > 0.0)) throw std::invalid_argument("RectangleObjective: L must be positive");
  params_.validate();
}

std::vector<double> RectangleObjective::full_profile(std::span<const double> interior) const {
  if (interior.size() != m_ - 2) throw std::invalid_argument("RectangleObjective: wrong size");
  std::vector<double> rho(m_);
  rho.front() = L_;
  rho.back() = L_;
  std::copy(interior.begin(), interior.end(), rho.begin() + 1);
  return rho;
}

double RectangleObjective::operator()(std::span<const double> interior,
                                      std::span<double> grad) const {
  const auto rho = full_profile(interior);
  const bool want_grad = !grad.empty();
  std::vector<double> full_grad(want_grad ? m_ : 0, 0.0);

  const double mu = params_.mu;
  const double alpha = params_.alpha.value();
  const double eps = params_.epsilon;
  double total = 0.0;

  for (const Sample& s : make_samples(m_, h_, stencil_)) {
    const double theta = node_theta(s.node, m_, 0.0, kPi);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double r = rho[s.node];
    const double d = s.derivative(rho);

    // mu |cos|^alpha (rho^2 + rho'^2 + sqrt(eps + F^2))^{1/2}
    const double F = (d * d - r * r) * c - 2.0 * r * d * sn;
    const double root = std::sqrt(eps + F * F);
    const double T = r * r + d * d + root;
    const double sq = std::sqrt(T);
    const double pref = mu * std::pow(std::abs(c), alpha);
    total += s.weight * pref * sq;

    if (want_grad && sq > 0.0) {
      const double sign = smooth_sign(F, root);
      const double dT_dr = 2.0 * r + sign * (-2.0 * r * c - 2.0 * d * sn);
      const double dT_dd = 2.0 * d + sign * (2.0 * d * c - 2.0 * r * sn);
      const double scale = s.weight * pref / (2.0 * sq);
      full_grad[s.node] += scale * dT_dr;
      s.scatter(full_grad, scale * dT_dd);
    }
  }

  if (want_grad) {
    if (grad.size() != m_ - 2) throw std::invalid_argument("RectangleObjective: wrong gradient size");
    std::copy(full_grad.begin() + 1, full_grad.end() - 1, grad.begin());
  }
  return total;
}

// ---------------------------------------------------------------------------
// Functionals

double rectangle_jump_energy(const RectangleConfig& config, const ModelParams& params) {
  params.validate();
  const RadialProfile& p = config.profile();
  const auto w = trapezoid_weights(p.size(), p.spacing());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double theta = p.theta(i);
    const CurveGeometry g = curve_geometry(p, theta);
    const DirectorLimits n = director_limits(config, theta);
    const double density = phi_angular(n.outside.radians(), n.inside.radians(), g.normal_angle,
                                       params.alpha);
    total += w[i] * density * g.arclength_density;
  }
  return params.mu * total;
}

double quarter_elastic(const RadialProfile& profile, const ModelParams& params) {
  require_quarter_span(profile, "quarter_elastic");
  params.validate();
  const auto u = profile.u_values();
  const auto w = trapezoid_weights(u.size(), profile.spacing());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i];
  return 0.5 * params.K1 * s;
}

double quarter_jump_interior(const RadialProfile& profile, const ModelParams& params,
                             DerivativeStencil stencil) {
  return quarter_total(profile, params, BoundaryTermForm{BoundaryForm::Pointwise}, stencil)
      .jump_interior;
}

double quarter_jump_interior_geometric(const RadialProfile& profile, const ModelParams& params) {
  require_quarter_span(profile, "quarter_jump_interior_geometric");
  params.validate();
  const QuarterConfig config(profile.as(ProfileRepr::Rho));
  const RadialProfile& p = config.profile();
  const auto w = trapezoid_weights(p.size(), p.spacing());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double theta = p.theta(i);
    const CurveGeometry g = curve_geometry(p, theta);
    const DirectorLimits n = director_limits(config, theta);
    const double density = phi_angular(n.outside.radians(), n.inside.radians(), g.normal_angle,
                                       params.alpha);
    total += w[i] * density * g.arclength_density;
  }
  return params.mu * total;
}

double quarter_jump_boundary(const RadialProfile& profile, const ModelParams& params,
                             BoundaryTermForm form, DerivativeStencil stencil) {
  return quarter_total(profile, params, form, stencil).jump_boundary;
}

EnergyBreakdown quarter_total(const RadialProfile& profile, const ModelParams& params,
                              BoundaryTermForm form, DerivativeStencil stencil) {
  require_quarter_span(profile, "quarter_total");
  const QuarterObjective objective(profile.size(), params, form, stencil);
  return objective.evaluate(profile.u_values());
}

double partition_energy(const PiecewiseConstantConfig& config, const ModelParams& params,
                        DensityKind kind, double tol) {
  params.validate();
  double total = 0.0;
  for (const Interface& s : config.interfaces) {
    const double density = jump_density(kind, {s.q_plus, s.q_minus, s.nu}, params.alpha, tol);
    if (std::isinf(density)) return kInfinite;
    total += s.length() * density;
  }
  return params.mu * total;
}

}  // namespace smectic
