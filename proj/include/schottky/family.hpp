#pragma once

#include <span>
#include <string>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

/// Parameters of the dihedrally symmetric family: genus g >= 2 and angles
/// 0 < eta < theta < pi/g. The first circle meets the unit circle
/// orthogonally at e^{i eta} and e^{i theta}.
class FamilyParams {
public:
  /// Throws InvalidAngles when the angle constraint fails.
  FamilyParams(int genus, double eta, double theta);

  int genus() const { return genus_; }
  double eta() const { return eta_; }
  double theta() const { return theta_; }

private:
  int genus_;
  double eta_;
  double theta_;
};

/// Two circles of equal radius and the generator pairing them. The map sends
/// the boundary of the source disk onto the boundary of the destination disk
/// and the source interior onto the destination exterior.
struct CirclePair {
  Complex center_src;  // z_j
  Complex center_dst;  // w_j
  double radius;       // r
  MoebiusMap map;      // f_j
};

/// Generator pairing S(z, r) with S(w, r):
///   a = (w/r) e^{i t}, d = -(z/r) e^{i t}, c = (1/r) e^{i t}, b = (ad - 1)/c
/// with t = -arg(w - z), which makes the trace |z - w| / r real and > 2.
/// Throws OverlappingCircles if |z - w| <= 2r.
MoebiusMap circle_to_map(Complex z, Complex w, double radius);

/// Generators f_1..f_g, numbered from 1 with f_1 pairing the upper circle C_1
/// to its conjugate C_1' and f_{j+1} the rotation of f_j by 2 pi / g.
std::vector<CirclePair> family_circles(const FamilyParams& params);

struct SymmetryMaps {
  MoebiusMap rotation;   // z -> e^{2 pi i / g} z
  MoebiusMap inversion;  // z -> 1/z
};

SymmetryMaps symmetry_maps(const FamilyParams& params);

enum class InequalityKind {
  IsometricCircles,  // pairwise condition between generators i < j
  Trace,             // |a_i + d_i| > 2
};

struct Inequality {
  InequalityKind kind;
  int i;  // 1-based generator index
  int j;  // equal to i for trace conditions
  double lhs;
  double rhs;
  double margin() const { return lhs - rhs; }
  bool passed;
};

/// Disjointness conditions for a generating set; data rather than an
/// exception so callers can report every failure at once.
struct ValidationReport {
  std::vector<Inequality> inequalities;
  bool classical = false;
  double min_margin() const;
};

/// Required margin for a condition to count as satisfied.
inline constexpr double kSchottkyMargin = 1e-10;

/// For i < j: min |centre of an isometric circle of f_i^{+-1} - centre of one
/// of f_j^{+-1}| > 1/|c_i| + 1/|c_j|; for each i: |a_i + d_i| > 2.
ValidationReport validate_schottky(std::span<const CirclePair> circles);
ValidationReport validate_generators(std::span<const MoebiusMap> generators);

std::string to_string(InequalityKind kind);

}  // namespace schottky
