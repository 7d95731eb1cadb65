#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smectic/fields.hpp"
#include "smectic/functionals.hpp"
#include "smectic/jump_energy.hpp"
#include "smectic/qtensor.hpp"

namespace smectic {

/// Boundary data for the ellipticity probe. C is the closed unit square
/// centred at the origin with sides along nu and nu_perp = (nu_2, -nu_1); the
/// collar square C' has half-side 1/2 + collar_margin.
struct ProbeSetup {
  QTensor q_plus;
  QTensor q_minus;
  UnitVector nu;
  double collar_margin = 0.1;

  void validate() const;
};

/// The straight interface through the centre of C.
struct FlatFamily {};

/// Periodic sawtooth across C with `n_teeth` teeth on the centre line. Each
/// tooth rises at `rise` and falls at `fall` (radians, measured from nu_perp).
/// With teeth_up the apexes sit on the +nu side.
struct ZigZagFamily {
  double rise = 0.0;
  double fall = 0.0;
  int n_teeth = 1;
  bool teeth_up = true;
};

/// Sawtooth whose segment normals are both bisectors of (Q+, Q-). Not
/// representable when nu itself is a bisector.
struct BisectorZigZagFamily {
  int n_teeth = 1;
  bool teeth_up = true;
};

/// Strip of `intermediate` of width `width` centred on the flat interface.
/// Each of its two interfaces is flat when sub_teeth == 0 and otherwise a
/// bisector sawtooth of sub_teeth teeth pointing away from the strip. The
/// strip's ends on the lateral sides of C carry jumps against the collar.
struct LaminateFamily {
  QTensor intermediate;
  double width = 0.1;
  int sub_teeth = 0;
};

using CompetitorFamily =
    std::variant<FlatFamily, ZigZagFamily, BisectorZigZagFamily, LaminateFamily>;

std::string describe(const CompetitorFamily& family);

/// Regions cover C'; interfaces are S_P intersected with C, so the flat jump in
/// the collar is not listed. std::nullopt when the family cannot be drawn inside
/// C for this setup.
std::optional<PiecewiseConstantConfig> build_competitor(const ProbeSetup& setup,
                                                         const CompetitorFamily& family);

struct CompetitorResult {
  std::string name;
  double energy = 0.0;
};

enum class ProbeVerdict { FlatOptimalWithinFamily, BeatenBy };

struct ProbeReport {
  DensityKind kind = DensityKind::Envelope;
  /// mu times the density of the straight interface (C has unit side).
  double flat_energy = 0.0;
  std::vector<CompetitorResult> competitors;
  std::vector<std::string> skipped;
  std::optional<CompetitorResult> best;
  ProbeVerdict verdict = ProbeVerdict::FlatOptimalWithinFamily;
  /// The competitor responsible for BeatenBy.
  std::string beaten_by;
  double margin = 1e-9;

  std::string verdict_string() const;
};

/// Evaluates every representable family and compares it against the flat
/// value. A competitor beats the flat interface when it is cheaper by more
/// than `margin`; an infinite flat value is beaten by any finite competitor.
/// A finite family can refute ellipticity but never certify it.
ProbeReport probe(const ProbeSetup& setup, const std::vector<CompetitorFamily>& families,
                  const ModelParams& params, DensityKind kind, double margin = 1e-9);

/// Flat, symmetric sawtooth at 15..75 degrees with 1..8 teeth (both
/// orientations), bisector sawtooth with 1..8 teeth, and laminates through
/// five intermediate directors at two widths with flat and bisector
/// sub-interfaces.
std::vector<CompetitorFamily> default_families(const ProbeSetup& setup);

/// Director jumps of 30, 60 and 90 degrees (b- = 0) combined with normals
/// rotated by 0, 10, 25 and 40 degrees from the first bisector.
std::vector<ProbeSetup> probe_grid();

}  // namespace smectic
