#include "smectic/bfgs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace smectic {
namespace {

constexpr double kNoiseFloor = 1e-14;
constexpr int kMaxBracket = 60;
constexpr int kMaxZoom = 80;
constexpr int kMaxExact = 200;

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Trial {
  double step = 0.0;
  double f = 0.0;
  double slope = 0.0;
  VectorXd grad;
};

class LineSearch {
 public:
  LineSearch(const Objective& objective, const VectorXd& x, double f0, const VectorXd& g0,
             const VectorXd& p, const BfgsOptions& options, int& evaluations)
      : objective_(objective), x_(x), p_(p), f0_(f0), d0_(g0.dot(p)), options_(options),
        evaluations_(evaluations), noise_(kNoiseFloor * std::abs(f0)) {}

  std::optional<Trial> strong_wolfe(double initial_step) {
    Trial prev{0.0, f0_, d0_, {}};
    double a = initial_step;
    for (int it = 0; it < kMaxBracket; ++it) {
      Trial cur = eval(a);
      if (!std::isfinite(cur.f)) {
        // Step left the finite region; shrink toward the last good point.
        a = prev.step + 0.5 * (a - prev.step);
        continue;
      }
      if (!sufficient_decrease(cur) || (it > 0 && cur.f >= prev.f && cur.f > f0_ + noise_)) {
        return zoom(prev, cur);
      }
      if (std::abs(cur.slope) <= -options_.c2 * d0_) return cur;
      if (cur.slope >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      a *= 2.0;
    }
    return std::nullopt;
  }

  std::optional<Trial> exact() {
    // Bracket a sign change of phi', then bisect on it.
    double lo = 0.0;
    double hi = 1.0;
    Trial t = eval(hi);
    int expand = 0;
    while (t.slope < 0.0 && expand++ < kMaxBracket) {
      lo = hi;
      hi *= 2.0;
      t = eval(hi);
    }
    if (t.slope < 0.0) return std::nullopt;
    Trial best = t;
    for (int it = 0; it < kMaxExact; ++it) {
      const double mid = 0.5 * (lo + hi);
      Trial m = eval(mid);
      best = m;
      if (std::abs(m.slope) <= 1e-14 * std::abs(d0_)) break;
      if (m.slope < 0.0) lo = mid; else hi = mid;
      if (hi - lo <= 1e-16 * hi) break;
    }
    if (!(best.f <= f0_ + noise_)) return std::nullopt;
    return best;
  }

 private:
  Trial eval(double a) {
    VectorXd xt = x_ + a * p_;
    VectorXd g(xt.size());
    const double f = objective_(std::span<const double>(xt.data(), xt.size()),
                                std::span<double>(g.data(), g.size()));
    ++evaluations_;
    return {a, f, g.dot(p_), std::move(g)};
  }

  // Inside the noise band the value comparison carries no information, so
  // only the derivative form decides.
  bool sufficient_decrease(const Trial& t) const {
    if (std::abs(t.f - f0_) <= noise_) return t.slope <= (2.0 * options_.c1 - 1.0) * d0_;
    return t.f <= f0_ + options_.c1 * t.step * d0_;
  }

  // lo satisfies sufficient decrease with the lower value; the minimizer of
  // phi along p lies between lo and hi.
  std::optional<Trial> zoom(Trial lo, Trial hi) {
    for (int it = 0; it < kMaxZoom; ++it) {
      const double left = std::min(lo.step, hi.step);
      const double right = std::max(lo.step, hi.step);
      const double width = right - left;
      if (width <= 1e-16 * std::max(1.0, right)) return fallback(lo);

      double a = 0.5 * (lo.step + hi.step);
      if (std::isfinite(hi.f)) {
        // Safeguarded cubic through (lo, hi) values and slopes.
        const double d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (lo.step - hi.step);
        const double disc = d1 * d1 - lo.slope * hi.slope;
        if (disc > 0.0) {
          const double d2 = std::copysign(std::sqrt(disc), hi.step - lo.step);
          const double cubic =
              hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) / (hi.slope - lo.slope + 2.0 * d2);
          if (cubic > left + 0.1 * width && cubic < right - 0.1 * width) a = cubic;
        }
      }

      Trial cur = eval(a);
      if (!std::isfinite(cur.f) || !sufficient_decrease(cur) ||
          cur.f > lo.f + kNoiseFloor * std::abs(lo.f)) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -options_.c2 * d0_) return cur;
      if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    return fallback(lo);
  }

  // Collapsed bracket: keep a strictly decreasing Armijo point if there is one.
  std::optional<Trial> fallback(Trial lo) const {
    if (lo.step > 0.0 && lo.f < f0_ && lo.f <= f0_ + options_.c1 * lo.step * d0_) return lo;
    return std::nullopt;
  }

  const Objective& objective_;
  const VectorXd& x_;
  const VectorXd& p_;
  double f0_;
  double d0_;
  const BfgsOptions& options_;
  int& evaluations_;
  double noise_;
};

}  // namespace

void BfgsOptions::validate() const {
  if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0)) {
    throw std::invalid_argument("line search parameters must satisfy 0 < c1 < c2 < 1");
  }
  if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
}

std::string_view to_string(BfgsStatus s) {
  switch (s) {
    case BfgsStatus::Converged: return "converged";
    case BfgsStatus::MaxIterations: return "max_iterations";
    case BfgsStatus::LineSearchFailed: return "line_search_failed";
  }
  return "unknown";
}

BfgsResult minimize_bfgs(const Objective& objective, std::vector<double> x0,
                         const BfgsOptions& options) {
  options.validate();
  const auto n = static_cast<Eigen::Index>(x0.size());
  if (n == 0) throw std::invalid_argument("minimize_bfgs: empty starting point");

  BfgsResult result;
  VectorXd x = Eigen::Map<const VectorXd>(x0.data(), n);
  VectorXd g(n);
  double f = objective(std::span<const double>(x.data(), x.size()),
                       std::span<double>(g.data(), g.size()));
  result.evaluations = 1;
  if (!std::isfinite(f) || !g.allFinite()) {
    throw std::domain_error("minimize_bfgs: objective is not finite at the starting point");
  }
  result.f_history.push_back(f);

  MatrixXd H = MatrixXd::Identity(n, n);
  bool scaled = false;

  for (int k = 0;; ++k) {
    result.iterations = k;
    if (g.lpNorm<Eigen::Infinity>() <= options.grad_tol) {
      result.status = BfgsStatus::Converged;
      break;
    }
    if (k >= options.max_iters) {
      result.status = BfgsStatus::MaxIterations;
      break;
    }

    VectorXd p = -H * g;
    bool used_steepest = false;
    if (!(g.dot(p) < 0.0)) {
      H.setIdentity();
      scaled = false;
      p = -g;
      used_steepest = true;
    }

    auto search = [&](const VectorXd& dir) {
      LineSearch ls(objective, x, f, g, dir, options, result.evaluations);
      return options.line_search == LineSearchKind::Exact ? ls.exact() : ls.strong_wolfe(1.0);
    };

    std::optional<Trial> step = search(p);
    if (!step) {
      if (used_steepest) {
        result.status = BfgsStatus::LineSearchFailed;
        break;
      }
      ++result.steepest_descent_restarts;
      H.setIdentity();
      scaled = false;
      p = -g;
      step = search(p);
      if (!step) {
        result.status = BfgsStatus::LineSearchFailed;
        break;
      }
    }

    const VectorXd s = step->step * p;
    const VectorXd y = step->grad - g;
    const double sy = s.dot(y);
    if (sy > std::numeric_limits<double>::epsilon() * s.norm() * y.norm()) {
      if (!scaled) {
        H *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const VectorXd Hy = H * y;
      H.noalias() -= rho * (s * Hy.transpose() + Hy * s.transpose());
      H.noalias() += (rho * rho * y.dot(Hy) + rho) * (s * s.transpose());
    }

    x += s;
    f = step->f;
    g = step->grad;
    result.f_history.push_back(f);
  }

  result.x.assign(x.data(), x.data() + n);
  result.f = f;
  result.grad_inf_norm = g.lpNorm<Eigen::Infinity>();
  return result;
}

GradCheckResult grad_check(const Objective& objective, std::span<const double> x, double step,
                           double floor) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> analytic(x.size());
  objective(point, analytic);

  GradCheckResult out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + step;
    const double fp = objective(point, {});
    point[i] = saved - step;
    const double fm = objective(point, {});
    point[i] = saved;
    const double fd = (fp - fm) / (2.0 * step);
    const double abs_err = std::abs(analytic[i] - fd);
    const double rel_err = abs_err / std::max({std::abs(analytic[i]), std::abs(fd), floor});
    out.max_absolute_error = std::max(out.max_absolute_error, abs_err);
    if (rel_err > out.max_relative_error) {
      out.max_relative_error = rel_err;
      out.worst_index = i;
    }
  }
  return out;
}

Objective finite_difference_gradient(Objective objective, double step) {
  return [objective = std::move(objective), step](std::span<const double> x,
                                                  std::span<double> grad) {
    const double f = objective(x, {});
    if (!grad.empty()) {
      std::vector<double> point(x.begin(), x.end());
      for (std::size_t i = 0; i < point.size(); ++i) {
        const double saved = point[i];
        point[i] = saved + step;
        const double fp = objective(point, {});
        point[i] = saved - step;
        const double fm = objective(point, {});
        point[i] = saved;
        grad[i] = (fp - fm) / (2.0 * step);
      }
    }
    return f;
  };
}

}  // namespace smectic
