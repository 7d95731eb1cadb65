#include "smectic/solvers.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace smectic {
namespace {

std::vector<double> uniform_noise(std::uint64_t seed, std::size_t n, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

StageReport run_stage(const Objective& objective, std::vector<double>& x, std::size_t m,
                      const SolverConfig& config) {
  BfgsResult r = minimize_bfgs(objective, x, config.bfgs_options());
  StageReport stage;
  stage.m = m;
  stage.iterations = r.iterations;
  stage.evaluations = r.evaluations;
  stage.steepest_descent_restarts = r.steepest_descent_restarts;
  stage.status = r.status;
  stage.grad_inf_norm = r.grad_inf_norm;
  stage.objective = r.f;
  for (std::size_t k = 1; k < r.f_history.size(); ++k) {
    stage.max_objective_increase =
        std::max(stage.max_objective_increase, r.f_history[k] - r.f_history[k - 1]);
  }
  x = std::move(r.x);
  return stage;
}

Objective with_gradient_mode(Objective objective, GradientMode mode) {
  if (mode == GradientMode::FiniteDifference) return finite_difference_gradient(std::move(objective));
  return objective;
}

void finish(SolveReport& report) {
  report.grad_inf_norm = report.stages.back().grad_inf_norm;
  report.converged = std::all_of(report.stages.begin(), report.stages.end(), [](const StageReport& s) {
    return s.status == BfgsStatus::Converged;
  });
}

}  // namespace

std::vector<std::size_t> SolverConfig::linear_schedule(std::size_t start, std::size_t end,
                                                       std::size_t step) {
  if (step == 0) throw std::invalid_argument("mesh schedule step must be positive");
  if (end < start) throw std::invalid_argument("mesh schedule end must be >= start");
  std::vector<std::size_t> out;
  for (std::size_t m = start; m <= end; m += step) out.push_back(m);
  if (out.back() != end) out.push_back(end);
  return out;
}

void SolverConfig::validate() const {
  if (mesh_schedule.empty()) throw std::invalid_argument("mesh schedule is empty");
  for (std::size_t k = 0; k < mesh_schedule.size(); ++k) {
    if (mesh_schedule[k] < 3) throw std::invalid_argument("mesh sizes must be at least 3");
    if (k > 0 && mesh_schedule[k] <= mesh_schedule[k - 1]) {
      throw std::invalid_argument("mesh schedule must be strictly increasing");
    }
  }
  bfgs_options().validate();
  if (const auto* r = std::get_if<RandomGuess>(&initial_guess); r && !(r->amplitude >= 0.0)) {
    throw std::invalid_argument("random initial guess amplitude must be non-negative");
  }
}

BfgsOptions SolverConfig::bfgs_options() const {
  BfgsOptions o;
  o.grad_tol = grad_tol;
  o.max_iters = max_iters;
  o.c1 = c1;
  o.c2 = c2;
  return o;
}

double parabola_rho(double L, double theta) { return L / (1.0 + std::sin(theta)); }

SolveReport solve_rectangle(double L, double H, const ModelParams& params,
                            const SolverConfig& config) {
  params.validate();
  config.validate();
  if (!(L > 0.0)) throw std::invalid_argument("solve_rectangle: L must be positive");
  if (!(H > 0.5 * L)) throw std::invalid_argument("solve_rectangle: need H > L/2");

  const std::size_t m0 = config.mesh_schedule.front();
  std::vector<double> rho;
  std::visit(
      [&](const auto& guess) {
        using T = std::decay_t<decltype(guess)>;
        if constexpr (std::is_same_v<T, ConstantGuess>) {
          rho.assign(m0, L);
        } else if constexpr (std::is_same_v<T, RandomGuess>) {
          const auto noise = uniform_noise(guess.seed, m0, guess.amplitude);
          rho.resize(m0);
          for (std::size_t i = 0; i < m0; ++i) rho[i] = L * std::exp(noise[i]);
        } else {
          rho = guess.profile.as(ProfileRepr::Rho).resampled(m0).values();
        }
      },
      config.initial_guess);
  rho.front() = L;
  rho.back() = L;

  const DerivativeStencil stencil = config.stencil.value_or(DerivativeStencil::Nodal);
  std::vector<StageReport> stages;
  for (std::size_t stage = 0; stage < config.mesh_schedule.size(); ++stage) {
    const std::size_t m = config.mesh_schedule[stage];
    if (rho.size() != m) {
      rho = RadialProfile(0.0, kPi, rho, ProfileRepr::Rho).resampled(m).values();
      rho.front() = L;
      rho.back() = L;
    }
    const RectangleObjective objective(m, L, params, stencil);
    std::vector<double> interior(rho.begin() + 1, rho.end() - 1);
    stages.push_back(run_stage(
        with_gradient_mode(
            [&objective](std::span<const double> x, std::span<double> g) { return objective(x, g); },
            config.gradient),
        interior, m, config));
    rho = objective.full_profile(interior);
    for (double& r : rho) {
      if (!(r > 0.0)) throw std::domain_error("solve_rectangle: iterate reached rho <= 0");
    }
  }

  const RadialProfile profile(0.0, kPi, rho, ProfileRepr::Rho);
  SolveReport report{.final_profile = profile};
  report.stages = std::move(stages);
  report.representation = "rho";
  report.stencil = stencil;
  report.breakdown.jump_interior = report.stages.back().objective;
  report.breakdown.total = report.breakdown.jump_interior;
  report.geometric_energy = rectangle_jump_energy(RectangleConfig(L, H, profile), params);

  const auto w = trapezoid_weights(profile.size(), profile.spacing());
  double linf = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double err = std::abs(rho[i] - parabola_rho(L, profile.theta(i)));
    linf = std::max(linf, err);
    l1 += w[i] * err;
  }
  report.linf_error = linf;
  report.l1_error = l1;
  finish(report);
  return report;
}

SolveReport solve_quarter(const ModelParams& params, const SolverConfig& config,
                          BoundaryTermForm form) {
  params.validate();
  config.validate();

  const std::size_t m0 = config.mesh_schedule.front();
  std::vector<double> u;
  std::visit(
      [&](const auto& guess) {
        using T = std::decay_t<decltype(guess)>;
        if constexpr (std::is_same_v<T, ConstantGuess>) {
          u.assign(m0, guess.u0);
        } else if constexpr (std::is_same_v<T, RandomGuess>) {
          u = uniform_noise(guess.seed, m0, guess.amplitude);
          for (double& v : u) v += guess.u0;
        } else {
          const RadialProfile& p = guess.profile;
          if (std::abs(p.lo()) > 1e-12 || std::abs(p.hi() - 0.5 * kPi) > 1e-12) {
            throw std::invalid_argument("solve_quarter: initial profile must span [0, pi/2]");
          }
          u = p.as(ProfileRepr::U).resampled(m0).values();
        }
      },
      config.initial_guess);

  const DerivativeStencil stencil = config.stencil.value_or(DerivativeStencil::Staggered);
  std::vector<StageReport> stages;
  for (std::size_t m : config.mesh_schedule) {
    if (u.size() != m) u = RadialProfile(0.0, 0.5 * kPi, u, ProfileRepr::U).resampled(m).values();
    const QuarterObjective objective(m, params, form, stencil);
    stages.push_back(run_stage(
        with_gradient_mode(
            [&objective](std::span<const double> x, std::span<double> g) { return objective(x, g); },
            config.gradient),
        u, m, config));
  }

  const RadialProfile profile(0.0, 0.5 * kPi, u, ProfileRepr::U);
  SolveReport report{.final_profile = profile};
  report.stages = std::move(stages);
  report.representation = "u";
  report.stencil = stencil;
  report.breakdown = QuarterObjective(u.size(), params, form, stencil).evaluate(u);
  report.admissible = QuarterConfig(profile).admissible();
  report.fit = fit_parabolic_arcs(profile);
  finish(report);
  return report;
}

}  // namespace smectic
