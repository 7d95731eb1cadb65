#include "smectic/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "smectic/bv_probe.hpp"
#include "smectic/fields.hpp"
#include "smectic/functionals.hpp"
#include "smectic/jump_energy.hpp"
#include "smectic/solvers.hpp"

namespace smectic::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

double deg2rad(double d) { return d * kPi / 180.0; }

// Raised for invalid parameter combinations that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  // Model.
  double K1 = 2.0;
  double mu = 1.0;
  double alpha = 0.5;
  double epsilon = 1e-12;
  // Solver.
  int m_start = 50;
  int m_end = 100;
  int m_step = 10;
  int m = 0;
  double grad_tol = 1e-8;
  int max_iters = 5000;
  std::string gradient = "analytic";
  std::string stencil = "auto";
  std::string init = "constant";
  std::string init_file;
  double init_amplitude = 0.2;
  std::uint64_t seed = 0;
  // Quarter disk.
  std::string boundary_form = "integral";
  std::string g = "linear";
  // Rectangle.
  double L = 1.0;
  double H = 1.0;
  // Densities, zig-zags and probes (degrees).
  double beta_plus = 90.0;
  double beta_minus = 0.0;
  double gamma = 90.0;
  int gamma_points = 9;
  double b = 1.0;
  std::vector<int> n_teeth{1, 4, 16, 64};
  std::string kind = "both";
  bool grid = false;
  // Output.
  std::string out;
};

// ---------------------------------------------------------------------------
// Output helpers.

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path) : file_(path) {
    if (!file_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  CsvWriter& header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      file_ << (first ? "" : ",") << c;
      first = false;
    }
    file_ << '\n';
    return *this;
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((file_ << (first ? "" : ",") << cell(cells), first = false), ...);
    file_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  static std::string cell(bool v) { return v ? "true" : "false"; }

  std::ofstream file_;
};

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
}

// JSON has no infinity; infinite energies are written as the string "inf".
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

// ---------------------------------------------------------------------------
// Option resolution.

ModelParams model_params(const Options& o) {
  ModelParams p;
  p.K1 = o.K1;
  p.mu = o.mu;
  p.alpha = Alpha(o.alpha);
  p.epsilon = o.epsilon;
  p.validate();
  return p;
}

BoundaryTermForm boundary_form(const Options& o) {
  BoundaryTermForm f;
  f.form = o.boundary_form == "pointwise" ? BoundaryForm::Pointwise : BoundaryForm::Integral;
  f.weight = o.g == "cosine" ? BoundaryWeight::Cosine : BoundaryWeight::Linear;
  return f;
}

RadialProfile read_profile_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read initial profile " + path);
  std::string line;
  std::getline(f, line);
  std::vector<double> thetas;
  std::vector<double> rhos;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a;
    std::string b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
      throw UsageError("initial profile " + path + ": expected theta,rho columns");
    }
    try {
      thetas.push_back(std::stod(a));
      rhos.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw UsageError("initial profile " + path + ": bad number in line '" + line + "'");
    }
  }
  return RadialProfile::from_samples(thetas, rhos, ProfileRepr::Rho);
}

SolverConfig solver_config(const Options& o) {
  SolverConfig c;
  if (o.m > 0) {
    c.mesh_schedule = {static_cast<std::size_t>(o.m)};
  } else {
    if (o.m_start < 3 || o.m_end < o.m_start || o.m_step < 1) {
      throw UsageError("mesh schedule needs 3 <= m-start <= m-end and m-step >= 1");
    }
    c.mesh_schedule = SolverConfig::linear_schedule(o.m_start, o.m_end, o.m_step);
  }
  c.grad_tol = o.grad_tol;
  c.max_iters = o.max_iters;
  c.gradient = o.gradient == "fd" ? GradientMode::FiniteDifference : GradientMode::Analytic;
  if (o.stencil == "nodal") c.stencil = DerivativeStencil::Nodal;
  if (o.stencil == "staggered") c.stencil = DerivativeStencil::Staggered;
  if (o.init == "random") {
    c.initial_guess = RandomGuess{o.seed, o.init_amplitude, std::log(2.0)};
  } else if (o.init == "file") {
    if (o.init_file.empty()) throw UsageError("--init file requires --init-file PATH");
    c.initial_guess = ExplicitGuess{read_profile_csv(o.init_file)};
  }
  c.validate();
  return c;
}

void warn_nonsmooth(const Options& o, std::ostream& err) {
  if (o.epsilon == 0.0) {
    err << "warning: epsilon = 0 leaves the interior jump integrand non-differentiable where "
           "f = 0; "
        << (o.gradient == "fd" ? "finite-difference" : "analytic")
        << " gradients may be unreliable there\n";
  }
}

ordered_json metadata(const std::string& subcommand, const Options& o,
                      std::optional<DerivativeStencil> stencil,
                      const std::string& representation = {}) {
  ordered_json cfg;
  cfg["K1"] = o.K1;
  cfg["mu"] = o.mu;
  cfg["alpha"] = o.alpha;
  cfg["epsilon"] = o.epsilon;
  cfg["m_start"] = o.m_start;
  cfg["m_end"] = o.m_end;
  cfg["m_step"] = o.m_step;
  cfg["m"] = o.m;
  cfg["grad_tol"] = o.grad_tol;
  cfg["max_iters"] = o.max_iters;
  cfg["gradient"] = o.gradient;
  cfg["stencil"] = o.stencil;
  cfg["init"] = o.init;
  cfg["init_file"] = o.init_file;
  cfg["init_amplitude"] = o.init_amplitude;
  cfg["boundary_form"] = o.boundary_form;
  cfg["g"] = o.g;
  cfg["L"] = o.L;
  cfg["H"] = o.H;
  cfg["beta_plus_deg"] = o.beta_plus;
  cfg["beta_minus_deg"] = o.beta_minus;
  cfg["gamma_deg"] = o.gamma;
  cfg["gamma_points"] = o.gamma_points;
  cfg["b"] = o.b;
  cfg["n_teeth"] = o.n_teeth;
  cfg["kind"] = o.kind;
  cfg["grid"] = o.grid;

  ordered_json m;
  m["artifact"] = "smectic";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["seed"] = o.seed;
  m["config"] = cfg;
  if (stencil) m["stencil"] = std::string(to_string(*stencil));
  if (!representation.empty()) m["representation"] = representation;
  m["quadrature"] = "composite trapezoid";
  const SolverConfig defaults;
  m["line_search"] = {{"kind", "strong_wolfe"},
                      {"c1", defaults.c1},
                      {"c2", defaults.c2},
                      {"noise_floor", 1e-14}};
  return m;
}

ordered_json stages_json(const SolveReport& r) {
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"m", s.m},
                      {"iterations", s.iterations},
                      {"evaluations", s.evaluations},
                      {"steepest_descent_restarts", s.steepest_descent_restarts},
                      {"status", std::string(to_string(s.status))},
                      {"grad_inf_norm", s.grad_inf_norm},
                      {"objective", s.objective},
                      {"max_objective_increase", s.max_objective_increase}});
  }
  return stages;
}

ordered_json breakdown_json(const EnergyBreakdown& e) {
  return {{"elastic", e.elastic},
          {"jump_interior", e.jump_interior},
          {"jump_boundary", e.jump_boundary},
          {"total", e.total}};
}

double mean_rho(const RadialProfile& p) {
  const auto w = trapezoid_weights(p.size(), p.spacing());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * p.rho(i);
  return s / (p.hi() - p.lo());
}

fs::path output_dir(const Options& o, const std::string& subcommand) {
  fs::path dir = o.out.empty() ? fs::path("results") / subcommand : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_density(const Options& o, std::ostream& out) {
  const Alpha a(o.alpha);
  if (o.gamma_points < 2) throw UsageError("--gamma-points must be at least 2");
  const double bp = deg2rad(o.beta_plus);
  const double bm = deg2rad(o.beta_minus);
  const QTensor qp = q_from_angle(bp);
  const QTensor qm = q_from_angle(bm);
  const fs::path dir = output_dir(o, "density");

  CsvWriter csv(dir / "density.csv");
  csv.header({"gamma", "zeta", "phi"});
  out << "gamma,zeta,phi\n";
  for (int k = 0; k < o.gamma_points; ++k) {
    const double gamma_deg = 180.0 * k / (o.gamma_points - 1);
    const JumpTriple t{qp, qm, UnitVector(deg2rad(gamma_deg))};
    const double z = zeta(t, a, kExactTolerance);
    const double p = phi(t, a);
    csv.row(gamma_deg, z, p);
    out << format_double(gamma_deg) << ',' << format_double(z) << ',' << format_double(p) << '\n';
  }
  write_json(dir / "metadata.json", metadata("density", o, std::nullopt));
  return kExitSuccess;
}

void write_curve(const fs::path& path, const RadialProfile& p) {
  CsvWriter csv(path);
  csv.header({"x1", "x2"});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double th = p.theta(i);
    csv.row(p.rho(i) * std::cos(th), p.rho(i) * std::sin(th));
  }
}

int cmd_rectangle(const Options& o, std::ostream& out, std::ostream& err) {
  const ModelParams params = model_params(o);
  const SolverConfig config = solver_config(o);
  warn_nonsmooth(o, err);
  const fs::path dir = output_dir(o, "rectangle");

  const SolveReport r = solve_rectangle(o.L, o.H, params, config);
  const RadialProfile& p = r.final_profile;
  {
    CsvWriter csv(dir / "profile.csv");
    csv.header({"theta", "rho_numeric", "rho_exact", "abs_err"});
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double exact = parabola_rho(o.L, p.theta(i));
      csv.row(p.theta(i), p.rho(i), exact, std::abs(p.rho(i) - exact));
    }
  }
  write_curve(dir / "curve.csv", p);

  ordered_json energy;
  energy["jump_interior"] = r.breakdown.jump_interior;
  energy["total"] = r.breakdown.total;
  energy["geometric_energy"] = *r.geometric_energy;
  energy["linf_error"] = *r.linf_error;
  energy["l1_error"] = *r.l1_error;
  write_json(dir / "energy.json", energy);

  ordered_json report;
  report["converged"] = r.converged;
  report["grad_inf_norm"] = r.grad_inf_norm;
  report["representation"] = r.representation;
  report["stencil"] = std::string(to_string(r.stencil));
  report["breakdown"] = breakdown_json(r.breakdown);
  report["linf_error"] = *r.linf_error;
  report["l1_error"] = *r.l1_error;
  report["stages"] = stages_json(r);
  write_json(dir / "report.json", report);
  write_json(dir / "metadata.json", metadata("rectangle", o, r.stencil, r.representation));

  out << "energy " << format_double(r.breakdown.total) << "\nlinf_error "
      << format_double(*r.linf_error) << "\nconverged " << (r.converged ? "true" : "false")
      << '\n';
  if (!r.converged) {
    err << "error: solver did not reach grad_tol (final gradient inf-norm "
        << format_double(r.grad_inf_norm) << ")\n";
    return kExitNotConverged;
  }
  return kExitSuccess;
}

struct QuarterRun {
  SolveReport report;
  double mean_rho = 0.0;
};

QuarterRun run_quarter(const Options& o, const fs::path& dir) {
  const ModelParams params = model_params(o);
  const SolverConfig config = solver_config(o);
  const BoundaryTermForm form = boundary_form(o);
  QuarterRun run{solve_quarter(params, config, form)};
  const SolveReport& r = run.report;
  const RadialProfile& p = r.final_profile;
  run.mean_rho = mean_rho(p);

  fs::create_directories(dir);
  {
    CsvWriter csv(dir / "profile.csv");
    csv.header({"theta", "rho"});
    for (std::size_t i = 0; i < p.size(); ++i) csv.row(p.theta(i), p.rho(i));
  }
  write_curve(dir / "jumpset.csv", p);
  {
    CsvWriter csv(dir / "arcs.csv");
    csv.header({"x1", "x2"});
    const int n = 201;
    const double top = 0.5 * r.fit->b;
    for (int k = 0; k < n; ++k) {
      const double x2 = top * k / (n - 1);
      csv.row(parabolic_arc_x1(r.fit->a, r.fit->b, x2), x2);
    }
  }
  write_json(dir / "energy.json", breakdown_json(r.breakdown));

  ordered_json report;
  report["converged"] = r.converged;
  report["grad_inf_norm"] = r.grad_inf_norm;
  report["admissible"] = r.admissible;
  report["mean_rho"] = run.mean_rho;
  report["representation"] = r.representation;
  report["stencil"] = std::string(to_string(r.stencil));
  report["breakdown"] = breakdown_json(r.breakdown);
  report["fit"] = {{"a", r.fit->a}, {"b", r.fit->b}, {"max_deviation", r.fit->max_deviation}};
  report["stages"] = stages_json(r);
  write_json(dir / "report.json", report);
  write_json(dir / "metadata.json", metadata("quarter", o, r.stencil, r.representation));
  return run;
}

int cmd_quarter(const Options& o, std::ostream& out, std::ostream& err) {
  model_params(o);
  warn_nonsmooth(o, err);
  const QuarterRun run = run_quarter(o, output_dir(o, "quarter"));
  const SolveReport& r = run.report;
  out << "energy " << format_double(r.breakdown.total) << "\nfit_max_deviation "
      << format_double(r.fit->max_deviation) << "\nmean_rho " << format_double(run.mean_rho)
      << "\nadmissible " << (r.admissible ? "true" : "false") << "\nconverged "
      << (r.converged ? "true" : "false") << '\n';
  if (!r.converged) {
    err << "error: solver did not reach grad_tol (final gradient inf-norm "
        << format_double(r.grad_inf_norm) << ")\n";
    return kExitNotConverged;
  }
  return kExitSuccess;
}

std::string panel_name(double mu, double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "mu%g_alpha%g", mu, alpha);
  return buf;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  model_params(o);
  solver_config(o);
  warn_nonsmooth(o, err);
  const fs::path dir = output_dir(o, "sweep");
  const std::vector<std::pair<double, double>> panels{{1.0, 0.2}, {1.0, 0.5}, {2.0, 0.2}, {2.0, 0.5}};

  std::vector<std::future<QuarterRun>> jobs;
  for (const auto& [mu, alpha] : panels) {
    Options panel = o;
    panel.mu = mu;
    panel.alpha = alpha;
    const fs::path sub = dir / panel_name(mu, alpha);
    jobs.push_back(std::async(std::launch::async, [panel, sub] { return run_quarter(panel, sub); }));
  }
  std::vector<QuarterRun> runs;
  for (auto& j : jobs) runs.push_back(j.get());

  CsvWriter csv(dir / "summary.csv");
  csv.header({"mu", "alpha", "mean_rho", "total_energy", "fit_max_deviation", "grad_inf_norm",
              "converged", "admissible"});
  ordered_json summary;
  summary["panels"] = ordered_json::array();
  bool all_converged = true;
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& r = runs[k].report;
    all_converged = all_converged && r.converged;
    csv.row(panels[k].first, panels[k].second, runs[k].mean_rho, r.breakdown.total,
            r.fit->max_deviation, r.grad_inf_norm, r.converged, r.admissible);
    summary["panels"].push_back({{"directory", panel_name(panels[k].first, panels[k].second)},
                                 {"mu", panels[k].first},
                                 {"alpha", panels[k].second},
                                 {"mean_rho", runs[k].mean_rho},
                                 {"total_energy", r.breakdown.total},
                                 {"fit_max_deviation", r.fit->max_deviation},
                                 {"converged", r.converged}});
  }
  // Panels are ordered (1, .2), (1, .5), (2, .2), (2, .5).
  const bool shrinks = runs[2].mean_rho < runs[0].mean_rho && runs[3].mean_rho < runs[1].mean_rho;
  summary["mean_rho_decreases_with_mu"] = shrinks;
  summary["converged"] = all_converged;
  write_json(dir / "summary.json", summary);
  write_json(dir / "metadata.json", metadata("sweep", o, runs[0].report.stencil, "u"));

  out << "mu,alpha,mean_rho,fit_max_deviation,converged\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    out << format_double(panels[k].first) << ',' << format_double(panels[k].second) << ','
        << format_double(runs[k].mean_rho) << ','
        << format_double(runs[k].report.fit->max_deviation) << ','
        << (runs[k].report.converged ? "true" : "false") << '\n';
  }
  if (!all_converged) {
    err << "error: at least one panel did not reach grad_tol\n";
    return kExitNotConverged;
  }
  return kExitSuccess;
}

int cmd_zigzag(const Options& o, std::ostream& out) {
  const ModelParams params = model_params(o);
  if (!(o.b > 0.0)) throw UsageError("--b must be positive");
  for (int n : o.n_teeth) {
    if (n < 1) throw UsageError("--n-teeth values must be positive");
  }
  const QTensor qp = q_from_angle(deg2rad(o.beta_plus));
  const QTensor qm = q_from_angle(deg2rad(o.beta_minus));
  const fs::path dir = output_dir(o, "zigzag");

  CsvWriter csv(dir / "zigzag.csv");
  csv.header({"shape", "n_teeth", "length", "zeta_energy", "phi_energy"});
  out << "shape,n_teeth,length,zeta_energy,phi_energy\n";
  auto emit = [&](const char* shape, int n) {
    const auto config = make_zigzag(o.b, n, qp, qm);
    const double len = config.interface_length();
    const double z = partition_energy(config, params, DensityKind::Singular);
    const double p = partition_energy(config, params, DensityKind::Envelope);
    csv.row(shape, n, len, z, p);
    out << shape << ',' << n << ',' << format_double(len) << ',' << format_double(z) << ','
        << format_double(p) << '\n';
  };
  emit("flat", 0);
  for (int n : o.n_teeth) emit("zigzag", n);
  write_json(dir / "metadata.json", metadata("zigzag", o, std::nullopt));
  return kExitSuccess;
}

ordered_json probe_json(const ProbeSetup& s, const ProbeReport& r) {
  ordered_json j;
  j["beta_plus_deg"] = angle_from_q(s.q_plus).radians() * 180.0 / kPi;
  j["beta_minus_deg"] = angle_from_q(s.q_minus).radians() * 180.0 / kPi;
  j["gamma_deg"] = s.nu.angle() * 180.0 / kPi;
  j["kind"] = r.kind == DensityKind::Singular ? "singular" : "envelope";
  j["flat_energy"] = number(r.flat_energy);
  j["verdict"] = r.verdict_string();
  j["margin"] = r.margin;
  if (r.best) j["best"] = {{"name", r.best->name}, {"energy", number(r.best->energy)}};
  j["competitors"] = ordered_json::array();
  for (const auto& c : r.competitors) {
    j["competitors"].push_back({{"name", c.name}, {"energy", number(c.energy)}});
  }
  j["skipped"] = r.skipped;
  return j;
}

int cmd_probe(const Options& o, std::ostream& out) {
  const ModelParams params = model_params(o);
  std::vector<DensityKind> kinds;
  if (o.kind != "envelope") kinds.push_back(DensityKind::Singular);
  if (o.kind != "singular") kinds.push_back(DensityKind::Envelope);

  std::vector<ProbeSetup> setups;
  if (o.grid) {
    setups = probe_grid();
  } else {
    setups.push_back({q_from_angle(deg2rad(o.beta_plus)), q_from_angle(deg2rad(o.beta_minus)),
                      UnitVector(deg2rad(o.gamma))});
  }
  const fs::path dir = output_dir(o, "probe");
  ordered_json results = ordered_json::array();
  for (const auto& s : setups) {
    const auto families = default_families(s);
    for (DensityKind k : kinds) {
      const ProbeReport r = probe(s, families, params, k);
      results.push_back(probe_json(s, r));
      out << (k == DensityKind::Singular ? "singular" : "envelope") << " beta+="
          << format_double(o.grid ? angle_from_q(s.q_plus).radians() * 180.0 / kPi : o.beta_plus)
          << " gamma=" << format_double(s.nu.angle() * 180.0 / kPi)
          << " flat=" << format_double(r.flat_energy) << ' ' << r.verdict_string() << '\n';
    }
  }
  write_json(dir / "probe.json", {{"results", results}});
  write_json(dir / "metadata.json", metadata("probe", o, std::nullopt));
  return kExitSuccess;
}

// ---------------------------------------------------------------------------
// Parser.

void add_options(CLI::App& app, Options& o) {
  auto* model = app.add_option_group("Model");
  model->add_option("--K1", o.K1, "Splay elastic constant")->capture_default_str();
  model->add_option("--mu", o.mu, "Jump energy weight")->capture_default_str();
  model->add_option("--alpha", o.alpha, "Jump exponent, in the open interval (0, 1)")
      ->capture_default_str();
  model->add_option("--epsilon", o.epsilon, "Regularization of |f| in the interior jump term")
      ->capture_default_str();

  auto* solver = app.add_option_group("Solver");
  solver->add_option("--m-start", o.m_start, "First mesh size")->capture_default_str();
  solver->add_option("--m-end", o.m_end, "Last mesh size")->capture_default_str();
  solver->add_option("--m-step", o.m_step, "Mesh size increment")->capture_default_str();
  solver->add_option("--m", o.m, "Single mesh size (overrides the schedule)");
  solver->add_option("--grad-tol", o.grad_tol, "Gradient inf-norm tolerance")->capture_default_str();
  solver->add_option("--max-iters", o.max_iters, "BFGS iterations per mesh stage")
      ->capture_default_str();
  solver->add_option("--gradient", o.gradient, "Gradient source")
      ->check(CLI::IsMember({"analytic", "fd"}))
      ->capture_default_str();
  solver->add_option("--stencil", o.stencil, "Derivative stencil (auto picks per problem)")
      ->check(CLI::IsMember({"auto", "nodal", "staggered"}))
      ->capture_default_str();
  solver->add_option("--init", o.init, "First-stage initial guess")
      ->check(CLI::IsMember({"constant", "random", "file"}))
      ->capture_default_str();
  solver->add_option("--init-file", o.init_file, "CSV with theta,rho columns for --init file");
  solver->add_option("--init-amplitude", o.init_amplitude, "Noise amplitude for --init random")
      ->capture_default_str();
  solver->add_option("--seed", o.seed, "Seed for --init random")->capture_default_str();

  auto* quarter = app.add_option_group("Quarter disk");
  quarter->add_option("--boundary-form", o.boundary_form, "Boundary jump term")
      ->check(CLI::IsMember({"pointwise", "integral"}))
      ->capture_default_str();
  quarter->add_option("--g", o.g, "Weight g of the integral boundary form")
      ->check(CLI::IsMember({"linear", "cosine"}))
      ->capture_default_str();

  auto* rect = app.add_option_group("Rectangle");
  rect->add_option("--L", o.L, "Half-width of the base")->capture_default_str();
  rect->add_option("--H", o.H, "Height, must exceed L/2")->capture_default_str();

  auto* jumps = app.add_option_group("Densities and probes (angles in degrees)");
  jumps->add_option("--beta-plus", o.beta_plus, "Director angle on the + side")
      ->capture_default_str();
  jumps->add_option("--beta-minus", o.beta_minus, "Director angle on the - side")
      ->capture_default_str();
  jumps->add_option("--gamma", o.gamma, "Interface normal angle (probe)")->capture_default_str();
  jumps->add_option("--gamma-points", o.gamma_points, "Normal angles on [0, 180] (density)")
      ->capture_default_str();
  jumps->add_option("--b", o.b, "Square side (zigzag)")->capture_default_str();
  jumps->add_option("--n-teeth", o.n_teeth, "Tooth counts (zigzag)")->capture_default_str();
  jumps->add_option("--kind", o.kind, "Densities to probe")
      ->check(CLI::IsMember({"singular", "envelope", "both"}))
      ->capture_default_str();
  jumps->add_flag("--grid", o.grid, "Probe the 12-point parameter grid");

  app.add_option("--out", o.out, "Output directory (default results/<subcommand>)");
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Smectic jump-set energies: densities, solvers and probes", "smectic");
  app.set_config("--config", "", "Flat key = value file; keys are long option names");
  app.allow_config_extras(false);
  app.fallthrough();
  app.require_subcommand(1);
  add_options(app, o);

  auto* density = app.add_subcommand("density", "Tabulate zeta and phi over normal angles");
  auto* rectangle = app.add_subcommand("rectangle", "Minimize the rectangle jump energy");
  auto* quarter = app.add_subcommand("quarter", "Minimize the quarter-disk energy");
  auto* zigzag = app.add_subcommand("zigzag", "Zig-zag versus flat interface energies");
  auto* probe_cmd = app.add_subcommand("probe", "Probe ellipticity with competitor families");
  auto* sweep = app.add_subcommand("sweep", "Quarter-disk runs for mu in {1,2}, alpha in {0.2,0.5}");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for options.\n";
    return kExitUsage;
  }

  try {
    if (density->parsed()) return cmd_density(o, out);
    if (rectangle->parsed()) return cmd_rectangle(o, out, err);
    if (quarter->parsed()) return cmd_quarter(o, out, err);
    if (zigzag->parsed()) return cmd_zigzag(o, out);
    if (probe_cmd->parsed()) return cmd_probe(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace smectic::cli
