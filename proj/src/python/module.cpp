#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "smectic/bv_probe.hpp"
#include "smectic/cli.hpp"
#include "smectic/solvers.hpp"

namespace py = pybind11;
using namespace smectic;

namespace {

ModelParams make_params(double K1, double mu, double alpha, double epsilon) {
  ModelParams p;
  p.K1 = K1;
  p.mu = mu;
  p.alpha = Alpha(alpha);
  p.epsilon = epsilon;
  p.validate();
  return p;
}

DensityKind density_kind(const std::string& s) {
  if (s == "singular") return DensityKind::Singular;
  if (s == "envelope") return DensityKind::Envelope;
  throw std::invalid_argument("kind must be 'singular' or 'envelope'");
}

BoundaryTermForm boundary_form(const std::string& form, const std::string& g) {
  BoundaryTermForm out;
  if (form == "pointwise") out.form = BoundaryForm::Pointwise;
  else if (form != "integral") throw std::invalid_argument("boundary_form must be 'pointwise' or 'integral'");
  if (g == "cosine") out.weight = BoundaryWeight::Cosine;
  else if (g != "linear") throw std::invalid_argument("g must be 'linear' or 'cosine'");
  return out;
}

py::dict breakdown(const EnergyBreakdown& e) {
  py::dict d;
  d["elastic"] = e.elastic;
  d["jump_interior"] = e.jump_interior;
  d["jump_boundary"] = e.jump_boundary;
  d["total"] = e.total;
  return d;
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  std::vector<double> theta;
  std::vector<double> rho;
  for (std::size_t i = 0; i < r.final_profile.size(); ++i) {
    theta.push_back(r.final_profile.theta(i));
    rho.push_back(r.final_profile.rho(i));
  }
  d["theta"] = theta;
  d["rho"] = rho;
  d["energy"] = breakdown(r.breakdown);
  d["converged"] = r.converged;
  d["grad_inf_norm"] = r.grad_inf_norm;
  d["admissible"] = r.admissible;
  d["representation"] = r.representation;
  d["stencil"] = std::string(to_string(r.stencil));
  if (r.fit) d["fit"] = py::dict(py::arg("a") = r.fit->a, py::arg("b") = r.fit->b,
                                 py::arg("max_deviation") = r.fit->max_deviation);
  if (r.linf_error) d["linf_error"] = *r.linf_error;
  if (r.l1_error) d["l1_error"] = *r.l1_error;
  if (r.geometric_energy) d["geometric_energy"] = *r.geometric_energy;
  py::list stages;
  for (const auto& s : r.stages) {
    stages.append(py::dict(py::arg("m") = s.m, py::arg("iterations") = s.iterations,
                           py::arg("status") = std::string(to_string(s.status)),
                           py::arg("grad_inf_norm") = s.grad_inf_norm));
  }
  d["stages"] = stages;
  return d;
}

SolverConfig solver_config(std::vector<std::size_t> mesh, double grad_tol, int max_iters,
                           std::optional<std::uint64_t> seed, double amplitude) {
  SolverConfig c;
  c.mesh_schedule = std::move(mesh);
  c.grad_tol = grad_tol;
  c.max_iters = max_iters;
  if (seed) c.initial_guess = RandomGuess{*seed, amplitude, std::log(2.0)};
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_smectic, m) {
  m.doc() = "Jump-set energies for smectic Q-tensor models";

  m.def("q_from_angle", [](double beta) {
    const QTensor q = q_from_angle(beta);
    return py::make_tuple(q.q11(), q.q12());
  }, py::arg("beta"), "Components (q11, q12) of the Q-tensor with director angle beta.");

  m.def("q_distance", [](double beta_plus, double beta_minus) {
    return q_distance(q_from_angle(beta_plus), q_from_angle(beta_minus));
  }, py::arg("beta_plus"), py::arg("beta_minus"));

  m.def("zeta", [](double bp, double bm, double gamma, double alpha, double tol) {
    return zeta({q_from_angle(bp), q_from_angle(bm), UnitVector(gamma)}, Alpha(alpha), tol);
  }, py::arg("beta_plus"), py::arg("beta_minus"), py::arg("gamma"), py::arg("alpha"),
        py::arg("tol") = kExactTolerance, "Singular density; inf off the bisectors.");

  m.def("phi", [](double bp, double bm, double gamma, double alpha) {
    return phi({q_from_angle(bp), q_from_angle(bm), UnitVector(gamma)}, Alpha(alpha));
  }, py::arg("beta_plus"), py::arg("beta_minus"), py::arg("gamma"), py::arg("alpha"));

  m.def("quarter_energy", [](std::vector<double> u, double K1, double mu, double alpha, double epsilon,
                             const std::string& form, const std::string& g) {
    const RadialProfile p(0.0, kPi / 2, std::move(u), ProfileRepr::U);
    return breakdown(quarter_total(p, make_params(K1, mu, alpha, epsilon), boundary_form(form, g),
                                   DerivativeStencil::Staggered));
  }, py::arg("u"), py::arg("K1") = 2.0, py::arg("mu") = 1.0, py::arg("alpha") = 0.5,
        py::arg("epsilon") = 1e-12, py::arg("boundary_form") = "integral", py::arg("g") = "linear",
        "Discretized quarter-disk energy of nodal u values on [0, pi/2].");

  m.def("solve_rectangle", [](double L, double H, double mu, double alpha, double epsilon,
                              std::vector<std::size_t> mesh, double grad_tol, int max_iters) {
    std::optional<SolveReport> r;
    {
      py::gil_scoped_release release;
      r = solve_rectangle(L, H, make_params(2.0, mu, alpha, epsilon),
                          solver_config(std::move(mesh), grad_tol, max_iters, std::nullopt, 0.0));
    }
    return report_dict(*r);
  }, py::arg("L") = 1.0, py::arg("H") = 1.0, py::arg("mu") = 1.0, py::arg("alpha") = 0.5,
        py::arg("epsilon") = 1e-12, py::arg("mesh") = std::vector<std::size_t>{200},
        py::arg("grad_tol") = 1e-8, py::arg("max_iters") = 5000);

  m.def("solve_quarter", [](double K1, double mu, double alpha, double epsilon, std::vector<std::size_t> mesh,
                            const std::string& form, const std::string& g, std::optional<std::uint64_t> seed,
                            double amplitude, double grad_tol, int max_iters) {
    std::optional<SolveReport> r;
    {
      py::gil_scoped_release release;
      r = solve_quarter(make_params(K1, mu, alpha, epsilon),
                        solver_config(std::move(mesh), grad_tol, max_iters, seed, amplitude),
                        boundary_form(form, g));
    }
    return report_dict(*r);
  }, py::arg("K1") = 2.0, py::arg("mu") = 1.0, py::arg("alpha") = 0.5, py::arg("epsilon") = 1e-12,
        py::arg("mesh") = SolverConfig::linear_schedule(50, 100, 10), py::arg("boundary_form") = "integral",
        py::arg("g") = "linear", py::arg("seed") = py::none(), py::arg("amplitude") = 0.2,
        py::arg("grad_tol") = 1e-8, py::arg("max_iters") = 5000);

  m.def("zigzag_energy", [](double b, int n_teeth, double mu, double alpha, const std::string& kind,
                            double beta_plus, double beta_minus) {
    const auto config = make_zigzag(b, n_teeth, q_from_angle(beta_plus), q_from_angle(beta_minus));
    return partition_energy(config, make_params(2.0, mu, alpha, 0.0), density_kind(kind));
  }, py::arg("b") = 1.0, py::arg("n_teeth") = 1, py::arg("mu") = 1.0, py::arg("alpha") = 0.5,
        py::arg("kind") = "singular", py::arg("beta_plus") = kPi / 2, py::arg("beta_minus") = 0.0,
        "Energy of the 45 degree zig-zag (n_teeth = 0: flat interface) across a square of side b.");

  m.def("probe", [](double beta_plus, double beta_minus, double gamma, double mu, double alpha,
                    const std::string& kind) {
    const ProbeSetup s{q_from_angle(beta_plus), q_from_angle(beta_minus), UnitVector(gamma)};
    const ProbeReport r = probe(s, default_families(s), make_params(2.0, mu, alpha, 0.0), density_kind(kind));
    py::dict d;
    d["flat_energy"] = r.flat_energy;
    d["verdict"] = r.verdict_string();
    if (r.best) d["best"] = py::make_tuple(r.best->name, r.best->energy);
    d["competitors"] = r.competitors.size();
    d["skipped"] = r.skipped.size();
    return d;
  }, py::arg("beta_plus"), py::arg("beta_minus"), py::arg("gamma"), py::arg("mu") = 1.0,
        py::arg("alpha") = 0.5, py::arg("kind") = "envelope");

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = cli::kVersion;
}
