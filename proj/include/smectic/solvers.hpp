#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smectic/bfgs.hpp"
#include "smectic/fields.hpp"
#include "smectic/functionals.hpp"

namespace smectic {

/// Constant first-stage guess. Quarter problem: u = u0 (rho = e^{-u0}).
/// Rectangle problem: the half circle rho = L (u0 is not used).
struct ConstantGuess {
  double u0 = std::log(2.0);
};

/// Constant guess plus independent uniform noise in [-amplitude, amplitude]
/// per node (on u for the quarter problem, on log rho for the rectangle).
struct RandomGuess {
  std::uint64_t seed = 0;
  double amplitude = 0.2;
  double u0 = std::log(2.0);
};

struct ExplicitGuess {
  RadialProfile profile;
};

using InitialGuess = std::variant<ConstantGuess, RandomGuess, ExplicitGuess>;

enum class GradientMode { Analytic, FiniteDifference };

struct SolverConfig {
  std::vector<std::size_t> mesh_schedule = linear_schedule(50, 100, 10);
  double grad_tol = 1e-8;
  int max_iters = 5000;  // per mesh stage
  double c1 = 1e-4;
  double c2 = 0.9;
  InitialGuess initial_guess = ConstantGuess{};
  GradientMode gradient = GradientMode::Analytic;
  /// Unset: nodal-central for the rectangle, staggered-central for the
  /// quarter disk. The nodal stencil leaves an odd/even mode nearly free in
  /// the quarter problem.
  std::optional<DerivativeStencil> stencil;

  /// start, start + step, ..., up to and including end.
  static std::vector<std::size_t> linear_schedule(std::size_t start, std::size_t end,
                                                  std::size_t step);

  /// Throws std::invalid_argument on an empty or non-increasing schedule,
  /// meshes below 3 points, or invalid line-search parameters.
  void validate() const;
  BfgsOptions bfgs_options() const;
};

struct StageReport {
  std::size_t m = 0;
  int iterations = 0;
  int evaluations = 0;
  int steepest_descent_restarts = 0;
  BfgsStatus status = BfgsStatus::MaxIterations;
  double grad_inf_norm = 0.0;
  double objective = 0.0;
  /// Largest increase between consecutive accepted objective values.
  double max_objective_increase = 0.0;
};

struct SolveReport {
  RadialProfile final_profile;
  EnergyBreakdown breakdown;
  std::vector<StageReport> stages;
  double grad_inf_norm = 0.0;
  /// Every stage reached the gradient tolerance.
  bool converged = false;
  /// Quarter problem: rho < 1 everywhere. Always true for the rectangle.
  bool admissible = true;
  /// Quarter problem only.
  std::optional<ArcFit> fit;
  /// Rectangle problem only: distances to L / (1 + sin theta).
  std::optional<double> linf_error;
  std::optional<double> l1_error;
  /// Rectangle problem only: unregularized energy on the final profile.
  std::optional<double> geometric_energy;
  /// Optimization variable ("rho" or "u").
  std::string representation;
  DerivativeStencil stencil = DerivativeStencil::Nodal;
};

/// Minimizes the rectangle jump energy over profiles pinned to rho(0) =
/// rho(pi) = L, optimizing the interior rho values. Each mesh stage starts from
/// the previous result interpolated linearly.
SolveReport solve_rectangle(double L, double H, const ModelParams& params,
                            const SolverConfig& config);

/// Minimizes the discretized quarter-disk energy over u with mesh
/// continuation, then records admissibility and the parabolic-arc fit.
SolveReport solve_quarter(const ModelParams& params, const SolverConfig& config,
                          BoundaryTermForm form);

/// L / (1 + sin theta).
double parabola_rho(double L, double theta);

}  // namespace smectic
