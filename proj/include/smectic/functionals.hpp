#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "smectic/fields.hpp"
#include "smectic/jump_energy.hpp"

namespace smectic {

struct ModelParams {
  double K1 = 2.0;
  double mu = 1.0;
  Alpha alpha{0.5};
  double epsilon = 1e-12;  // regularization of |f| in the interior jump term

  /// Throws std::invalid_argument unless K1 > 0, mu > 0, epsilon >= 0.
  void validate() const;
};

struct EnergyBreakdown {
  double elastic = 0.0;
  double jump_interior = 0.0;
  double jump_boundary = 0.0;
  double total = 0.0;
};

/// How u' enters the discretized integrals.
///   Nodal:     central differences at the nodes, one-sided second order at
///              the ends, trapezoid weights on the nodes.
///   Staggered: (u[k+1] - u[k]) / h on each cell, trapezoid rule per cell with
///              that derivative at both cell ends.
/// Both are second order. The nodal stencil does not couple even and odd
/// nodes, which lets minimizers develop a sawtooth the energy cannot see.
enum class DerivativeStencil { Nodal, Staggered };

std::string_view to_string(DerivativeStencil s);

enum class BoundaryForm { Pointwise, Integral };
enum class BoundaryWeight { Linear, Cosine };

/// Boundary jump term: sqrt2 mu exp(-u(0)), or its rewriting as
/// sqrt2 mu int exp(-u) (u' g - g') with g(0) = 1, g(pi/2) = 0.
struct BoundaryTermForm {
  BoundaryForm form = BoundaryForm::Integral;
  BoundaryWeight weight = BoundaryWeight::Linear;

  double g(double theta) const;
  double dg(double theta) const;
};

/// (u'^2 - 1) cos(theta) + 2 u' sin(theta).
double jump_f(double theta, double du);

// ---------------------------------------------------------------------------
// Discretized objectives with analytic gradients.

/// Quarter-disk energy as a function of the m nodal values of u on [0, pi/2].
class QuarterObjective {
 public:
  QuarterObjective(std::size_t m, const ModelParams& params, BoundaryTermForm form,
                   DerivativeStencil stencil);

  std::size_t size() const { return m_; }
  double spacing() const { return h_; }

  /// Energy parts; accumulates the gradient of the total into `grad` when it
  /// is non-empty.
  EnergyBreakdown evaluate(std::span<const double> u, std::span<double> grad = {}) const;

  double operator()(std::span<const double> u, std::span<double> grad) const {
    return evaluate(u, grad).total;
  }

 private:
  std::size_t m_;
  double h_;
  ModelParams params_;
  BoundaryTermForm form_;
  DerivativeStencil stencil_;
};

/// Rectangle jump energy in the interior rho values (the end values are
/// pinned to L). The |.| in the anisotropy factor is regularized as
/// sqrt(epsilon + F^2).
class RectangleObjective {
 public:
  RectangleObjective(std::size_t m, double L, const ModelParams& params,
                     DerivativeStencil stencil);

  std::size_t size() const { return m_ - 2; }
  std::size_t mesh_size() const { return m_; }

  double operator()(std::span<const double> interior, std::span<double> grad) const;

  /// Full profile rho_0 .. rho_{m-1} with the pinned end values.
  std::vector<double> full_profile(std::span<const double> interior) const;

 private:
  std::size_t m_;
  double h_;
  double L_;
  ModelParams params_;
  DerivativeStencil stencil_;
};

// ---------------------------------------------------------------------------
// Energy functionals on configurations.

/// mu times the trapezoid integral over [0, pi] of phi(pi/2, theta, gamma) times
/// the arclength density, with gamma and |dC/dtheta| from curve_geometry.
/// No elastic term and no regularization.
double rectangle_jump_energy(const RectangleConfig& config, const ModelParams& params);

/// (K1/2) times the trapezoid integral of u over [0, pi/2].
double quarter_elastic(const RadialProfile& profile, const ModelParams& params);

double quarter_jump_interior(const RadialProfile& profile, const ModelParams& params,
                             DerivativeStencil stencil = DerivativeStencil::Nodal);

/// Interior jump energy via eval_director-side limits, curve_geometry and the
/// angular density, with rho' from the nodal stencil on rho. Unregularized.
double quarter_jump_interior_geometric(const RadialProfile& profile, const ModelParams& params);

double quarter_jump_boundary(const RadialProfile& profile, const ModelParams& params,
                             BoundaryTermForm form,
                             DerivativeStencil stencil = DerivativeStencil::Nodal);

EnergyBreakdown quarter_total(const RadialProfile& profile, const ModelParams& params,
                              BoundaryTermForm form,
                              DerivativeStencil stencil = DerivativeStencil::Nodal);

/// mu times the sum over interface segments of length times density; kInfinite
/// for the singular density when any segment is off its bisectors beyond tol.
double partition_energy(const PiecewiseConstantConfig& config, const ModelParams& params,
                        DensityKind kind, double tol = kExactTolerance);

}  // namespace smectic
