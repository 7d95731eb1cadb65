#include "smectic/bv_probe.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

namespace smectic {
namespace {

constexpr double kHalf = 0.5;
constexpr double kAngleGuard = 1e-9;

std::string degrees(double radians) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", radians * 180.0 / kPi);
  return buf;
}

// Coordinates (s, t) along nu_perp and nu.
class Frame {
 public:
  explicit Frame(const UnitVector& nu) : rotation_(nu.angle() - 0.5 * kPi) {}

  Point2 to_global(Point2 p) const {
    const double c = std::cos(rotation_);
    const double s = std::sin(rotation_);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
  }

  UnitVector normal(double local_angle) const { return UnitVector(local_angle + rotation_); }
  double rotation() const { return rotation_; }

 private:
  double rotation_;
};

struct Polyline {
  std::vector<Point2> points;  // from s = -1/2 to s = +1/2
};

double tooth_height(double rise, double fall, int n) {
  return std::sin(rise) * std::sin(fall) / (n * std::sin(rise + fall));
}

Polyline sawtooth(double t0, double rise, double fall, int n, int direction) {
  Polyline line;
  const double width = 1.0 / n;
  const double height = tooth_height(rise, fall, n);
  const double run_up = height / std::tan(rise);
  line.points.push_back({-kHalf, t0});
  for (int k = 0; k < n; ++k) {
    const double s0 = -kHalf + k * width;
    line.points.push_back({s0 + run_up, t0 + direction * height});
    line.points.push_back({k + 1 == n ? kHalf : s0 + width, t0});
  }
  return line;
}

Polyline flat_line(double t0) { return {{{-kHalf, t0}, {kHalf, t0}}}; }

class Builder {
 public:
  Builder(const ProbeSetup& setup) : setup_(setup), frame_(setup.nu) {}

  void region(std::vector<Point2> local, const QTensor& q) {
    for (auto& p : local) p = frame_.to_global(p);
    config_.regions.push_back({std::move(local), q});
  }

  // Q+ on the left of the direction of travel (towards +t for a line in +s).
  void interfaces(const Polyline& line, const QTensor& q_plus, const QTensor& q_minus) {
    for (std::size_t k = 0; k + 1 < line.points.size(); ++k) {
      const Point2 a = line.points[k];
      const Point2 b = line.points[k + 1];
      const double dir = std::atan2(b.y - a.y, b.x - a.x);
      segment(a, b, q_plus, q_minus, dir + 0.5 * kPi);
    }
  }

  void segment(Point2 a, Point2 b, const QTensor& q_plus, const QTensor& q_minus,
               double local_normal) {
    config_.interfaces.push_back({frame_.to_global(a), frame_.to_global(b), q_plus, q_minus,
                                  frame_.normal(local_normal)});
  }

  void collar() {
    const double m = kHalf + setup_.collar_margin;
    region({{-m, 0}, {-kHalf, 0}, {-kHalf, kHalf}, {kHalf, kHalf}, {kHalf, 0}, {m, 0}, {m, m}, {-m, m}},
           setup_.q_plus);
    region({{-m, 0}, {-m, -m}, {m, -m}, {m, 0}, {kHalf, 0}, {kHalf, -kHalf}, {-kHalf, -kHalf}, {-kHalf, 0}},
           setup_.q_minus);
  }

  void region_above(const Polyline& line, const QTensor& q) {
    std::vector<Point2> poly = line.points;
    poly.push_back({kHalf, kHalf});
    poly.push_back({-kHalf, kHalf});
    region(std::move(poly), q);
  }

  void region_below(const Polyline& line, const QTensor& q) {
    std::vector<Point2> poly{{-kHalf, -kHalf}, {kHalf, -kHalf}};
    poly.insert(poly.end(), line.points.rbegin(), line.points.rend());
    region(std::move(poly), q);
  }

  void region_between(const Polyline& lower, const Polyline& upper, const QTensor& q) {
    std::vector<Point2> poly = lower.points;
    poly.insert(poly.end(), upper.points.rbegin(), upper.points.rend());
    region(std::move(poly), q);
  }

  PiecewiseConstantConfig finish() {
    config_.bisecting = all_bisecting(config_);
    return std::move(config_);
  }

 private:
  const ProbeSetup& setup_;
  Frame frame_;
  PiecewiseConstantConfig config_;
};

// Rise angle (from nu_perp) whose two sawtooth normals are both bisectors.
std::optional<double> bisector_rise(const QTensor& q_plus, const QTensor& q_minus,
                                    const UnitVector& nu) {
  if (q_distance(q_plus, q_minus) < kCoincidenceTolerance) return std::nullopt;
  const double b = bisectors(q_plus, q_minus)[0].angle();
  double rise = std::fmod(b - nu.angle(), 0.5 * kPi);
  if (rise < 0.0) rise += 0.5 * kPi;
  if (rise < kAngleGuard || rise > 0.5 * kPi - kAngleGuard) return std::nullopt;
  return rise;
}

std::optional<Polyline> interface_line(double t0, double rise, double fall, int n, int direction,
                                       double t_limit) {
  if (n == 0) return flat_line(t0);
  if (!(rise > 0.0 && fall > 0.0 && rise + fall < kPi)) return std::nullopt;
  const double apex = t0 + direction * tooth_height(rise, fall, n);
  if (std::abs(apex) > t_limit + 1e-15) return std::nullopt;
  return sawtooth(t0, rise, fall, n, direction);
}

// Downward teeth mirror the segment directions, so rise and fall swap roles.
std::optional<Polyline> bisector_line(double t0, const QTensor& q_plus, const QTensor& q_minus,
                                      const UnitVector& nu, int n, int direction) {
  const auto rise = bisector_rise(q_plus, q_minus, nu);
  if (!rise) return std::nullopt;
  const double other = 0.5 * kPi - *rise;
  return direction > 0 ? interface_line(t0, *rise, other, n, direction, kHalf)
                       : interface_line(t0, other, *rise, n, direction, kHalf);
}

std::optional<PiecewiseConstantConfig> build_two_phase(const ProbeSetup& setup,
                                                       const std::optional<Polyline>& line) {
  if (!line) return std::nullopt;
  Builder b(setup);
  b.collar();
  b.region_above(*line, setup.q_plus);
  b.region_below(*line, setup.q_minus);
  b.interfaces(*line, setup.q_plus, setup.q_minus);
  return b.finish();
}

std::optional<PiecewiseConstantConfig> build_laminate(const ProbeSetup& setup,
                                                      const LaminateFamily& f) {
  if (!(f.width > 0.0 && f.width < 1.0) || f.sub_teeth < 0) return std::nullopt;
  const double t_up = 0.5 * f.width;
  const double t_down = -0.5 * f.width;

  std::optional<Polyline> upper;
  std::optional<Polyline> lower;
  if (f.sub_teeth == 0) {
    upper = flat_line(t_up);
    lower = flat_line(t_down);
  } else {
    upper = bisector_line(t_up, setup.q_plus, f.intermediate, setup.nu, f.sub_teeth, +1);
    lower = bisector_line(t_down, f.intermediate, setup.q_minus, setup.nu, f.sub_teeth, -1);
    if (!upper || !lower) return std::nullopt;
  }

  Builder b(setup);
  b.collar();
  b.region_above(*upper, setup.q_plus);
  b.region_between(*lower, *upper, f.intermediate);
  b.region_below(*lower, setup.q_minus);
  b.interfaces(*upper, setup.q_plus, f.intermediate);
  b.interfaces(*lower, f.intermediate, setup.q_minus);
  // Ends of the strip on the lateral sides of C, against the collar.
  for (const double s : {-kHalf, kHalf}) {
    const double outward = s > 0.0 ? 0.0 : kPi;
    b.segment({s, 0.0}, {s, t_up}, setup.q_plus, f.intermediate, outward);
    b.segment({s, t_down}, {s, 0.0}, setup.q_minus, f.intermediate, outward);
  }
  return b.finish();
}

}  // namespace

void ProbeSetup::validate() const {
  if (!(collar_margin > 0.0)) throw std::invalid_argument("collar margin must be positive");
}

std::string describe(const CompetitorFamily& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FlatFamily>) {
          return "flat";
        } else if constexpr (std::is_same_v<T, ZigZagFamily>) {
          return "zigzag(rise=" + degrees(f.rise) + "deg,fall=" + degrees(f.fall) +
                 "deg,n=" + std::to_string(f.n_teeth) + (f.teeth_up ? ",up)" : ",down)");
        } else if constexpr (std::is_same_v<T, BisectorZigZagFamily>) {
          return "bisector_zigzag(n=" + std::to_string(f.n_teeth) +
                 (f.teeth_up ? ",up)" : ",down)");
        } else {
          char buf[96];
          std::snprintf(buf, sizeof buf, "laminate(director=%sdeg,width=%.6g,sub_teeth=%d)",
                        degrees(angle_from_q(f.intermediate).radians()).c_str(), f.width,
                        f.sub_teeth);
          return buf;
        }
      },
      family);
}

std::optional<PiecewiseConstantConfig> build_competitor(const ProbeSetup& setup,
                                                         const CompetitorFamily& family) {
  setup.validate();
  return std::visit(
      [&](const auto& f) -> std::optional<PiecewiseConstantConfig> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FlatFamily>) {
          return build_two_phase(setup, flat_line(0.0));
        } else if constexpr (std::is_same_v<T, ZigZagFamily>) {
          if (f.n_teeth < 1) return std::nullopt;
          return build_two_phase(
              setup, interface_line(0.0, f.rise, f.fall, f.n_teeth, f.teeth_up ? 1 : -1, kHalf));
        } else if constexpr (std::is_same_v<T, BisectorZigZagFamily>) {
          if (f.n_teeth < 1) return std::nullopt;
          return build_two_phase(setup, bisector_line(0.0, setup.q_plus, setup.q_minus, setup.nu,
                                                      f.n_teeth, f.teeth_up ? 1 : -1));
        } else {
          return build_laminate(setup, f);
        }
      },
      family);
}

std::string ProbeReport::verdict_string() const {
  if (verdict == ProbeVerdict::FlatOptimalWithinFamily) return "flat_optimal_within_family";
  return "beaten_by(" + beaten_by + ")";
}

ProbeReport probe(const ProbeSetup& setup, const std::vector<CompetitorFamily>& families,
                  const ModelParams& params, DensityKind kind, double margin) {
  setup.validate();
  params.validate();

  ProbeReport report;
  report.kind = kind;
  report.margin = margin;
  report.flat_energy =
      params.mu * jump_density(kind, {setup.q_plus, setup.q_minus, setup.nu}, params.alpha,
                               kExactTolerance);

  std::vector<std::future<std::optional<double>>> jobs;
  jobs.reserve(families.size());
  for (const auto& family : families) {
    jobs.push_back(std::async(std::launch::async, [&setup, &family, &params, kind] {
      const auto config = build_competitor(setup, family);
      return config ? std::optional<double>(partition_energy(*config, params, kind))
                    : std::nullopt;
    }));
  }
  for (std::size_t k = 0; k < families.size(); ++k) {
    const auto energy = jobs[k].get();
    const std::string name = describe(families[k]);
    if (!energy) {
      report.skipped.push_back(name);
      continue;
    }
    report.competitors.push_back({name, *energy});
    if (!report.best || *energy < report.best->energy) report.best = report.competitors.back();
  }

  if (report.best) {
    const double e = report.best->energy;
    const bool beaten = std::isinf(report.flat_energy) ? std::isfinite(e)
                                                       : e < report.flat_energy - margin;
    if (beaten) {
      report.verdict = ProbeVerdict::BeatenBy;
      report.beaten_by = report.best->name;
    }
  }
  return report;
}

std::vector<CompetitorFamily> default_families(const ProbeSetup& setup) {
  std::vector<CompetitorFamily> out{FlatFamily{}};
  for (int deg = 15; deg <= 75; deg += 15) {
    const double a = deg * kPi / 180.0;
    for (int n = 1; n <= 8; ++n) {
      out.push_back(ZigZagFamily{a, a, n, true});
      out.push_back(ZigZagFamily{a, a, n, false});
    }
  }
  for (int n = 1; n <= 8; ++n) {
    out.push_back(BisectorZigZagFamily{n, true});
    out.push_back(BisectorZigZagFamily{n, false});
  }
  const double bp = angle_from_q(setup.q_plus).radians();
  double bm = angle_from_q(setup.q_minus).radians();
  // Shortest rotation from b- to b+.
  const double delta = std::remainder(bp - bm, kPi);
  const std::vector<double> directors{bm + 0.25 * delta, bm + 0.5 * delta, bm + 0.75 * delta,
                                      bm + 0.5 * delta + 0.5 * kPi, bm + 0.5 * kPi};
  for (const double beta : directors) {
    for (const double width : {0.05, 0.25}) {
      for (const int teeth : {0, 1, 4}) {
        out.push_back(LaminateFamily{q_from_angle(beta), width, teeth});
      }
    }
  }
  return out;
}

std::vector<ProbeSetup> probe_grid() {
  std::vector<ProbeSetup> out;
  for (const int jump_deg : {30, 60, 90}) {
    const double bp = jump_deg * kPi / 180.0;
    for (const int offset_deg : {0, 10, 25, 40}) {
      out.push_back({q_from_angle(bp), q_from_angle(0.0),
                     UnitVector(0.5 * bp + offset_deg * kPi / 180.0)});
    }
  }
  return out;
}

}  // namespace smectic
