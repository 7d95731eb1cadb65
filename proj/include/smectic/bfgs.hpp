#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace smectic {

/// Returns f(x) and writes the gradient into `grad` when it is non-empty.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

enum class LineSearchKind {
  /// Strong Wolfe conditions, bracketing plus safeguarded cubic zoom.
  StrongWolfe,
  /// Minimizes along the search direction by bisection on the directional
  /// derivative. Meant for tests on quadratics.
  Exact,
};

struct BfgsOptions {
  double grad_tol = 1e-8;  // on the infinity norm of the gradient
  int max_iters = 5000;
  double c1 = 1e-4;
  double c2 = 0.9;
  LineSearchKind line_search = LineSearchKind::StrongWolfe;

  /// Throws std::invalid_argument unless 0 < c1 < c2 < 1 and the limits are positive.
  void validate() const;
};

enum class BfgsStatus { Converged, MaxIterations, LineSearchFailed };

std::string_view to_string(BfgsStatus s);

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// Times the inverse Hessian was reset to a steepest-descent step after a
  /// failed line search.
  int steepest_descent_restarts = 0;
  BfgsStatus status = BfgsStatus::MaxIterations;
  /// Objective at x0 and after every accepted step.
  std::vector<double> f_history;
};

/// Dense BFGS on the inverse Hessian. The initial inverse Hessian is the
/// identity, rescaled by s'y / y'y before the first update.
///
/// When objective differences fall to rounding level, sufficient decrease is
/// checked in its derivative form phi'(a) <= (2 c1 - 1) phi'(0) with
/// phi(a) <= phi(0) + 1e-14 |phi(0)|, so accepted steps never raise the
/// objective by more than that noise floor. A failed line search resets the
/// inverse Hessian and retries along steepest descent; when that retry also
/// fails the run stops with LineSearchFailed. A collapsed zoom bracket falls
/// back to its best Armijo point.
BfgsResult minimize_bfgs(const Objective& objective, std::vector<double> x0,
                         const BfgsOptions& options = {});

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t worst_index = 0;
};

/// Compares the analytic gradient with central differences of step `step`.
/// The relative error of component i is
///   |g_i - fd_i| / max(|g_i|, |fd_i|, floor).
GradCheckResult grad_check(const Objective& objective, std::span<const double> x,
                           double step = 1e-6, double floor = 1e-8);

/// Wraps an objective so that its gradient comes from central differences of
/// the objective value instead of the analytic expression.
Objective finite_difference_gradient(Objective objective, double step = 1e-6);

}  // namespace smectic
