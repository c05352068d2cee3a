#include "schottky/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "schottky/error.hpp"

namespace schottky {

using std::numbers::pi;

FamilyParams::FamilyParams(int genus, double eta, double theta)
    : genus_(genus), eta_(eta), theta_(theta) {
  if (genus < 2) {
    throw Error(ErrorCode::InvalidAngles, "genus must be at least 2");
  }
  if (!(std::isfinite(eta) && std::isfinite(theta) && 0.0 < eta && eta < theta &&
        theta < pi / genus)) {
    throw Error(ErrorCode::InvalidAngles,
                "need 0 < eta < theta < pi/g, got eta=" + std::to_string(eta) +
                    " theta=" + std::to_string(theta) + " g=" + std::to_string(genus));
  }
}

MoebiusMap circle_to_map(Complex z, Complex w, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  }
  if (std::abs(z - w) <= 2.0 * radius) {
    throw Error(ErrorCode::OverlappingCircles, "paired disks are not disjoint");
  }
  const Complex rot = std::polar(1.0, -std::arg(w - z));
  const Complex a = w / radius * rot;
  const Complex d = -z / radius * rot;
  const Complex c = rot / radius;
  const Complex b = (a * d - 1.0) / c;
  return MoebiusMap(a, b, c, d);
}

std::vector<CirclePair> family_circles(const FamilyParams& params) {
  const int g = params.genus();
  const double half_sum = 0.5 * (params.theta() + params.eta());
  const double half_diff = 0.5 * (params.theta() - params.eta());
  const Complex z1 = std::polar(1.0 / std::cos(half_diff), half_sum);
  const Complex w1 = std::conj(z1);
  const double r = std::tan(half_diff);

  std::vector<CirclePair> out;
  out.reserve(g);
  for (int j = 0; j < g; ++j) {
    const Complex rot = std::polar(1.0, 2.0 * pi * j / g);
    const Complex z = rot * z1;
    const Complex w = rot * w1;
    out.push_back({z, w, r, circle_to_map(z, w, r)});
  }
  return out;
}

SymmetryMaps symmetry_maps(const FamilyParams& params) {
  const Complex root = std::polar(1.0, 2.0 * pi / params.genus());
  return {MoebiusMap(root, 0.0, 0.0, 1.0), MoebiusMap(0.0, 1.0, 1.0, 0.0)};
}

double ValidationReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& q : inequalities) m = std::min(m, q.margin());
  return m;
}

ValidationReport validate_generators(std::span<const MoebiusMap> gens) {
  ValidationReport report;
  const int n = static_cast<int>(gens.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& fi = gens[i];
      const auto& fj = gens[j];
      // Isometric-circle centres are a/c (of f^{-1}) and -d/c (of f); all
      // four cross pairs must be separated.
      const double lhs = std::min({std::abs(fi.a() / fi.c() - fj.a() / fj.c()),
                                   std::abs(fi.a() / fi.c() + fj.d() / fj.c()),
                                   std::abs(fi.d() / fi.c() + fj.a() / fj.c()),
                                   std::abs(fi.d() / fi.c() - fj.d() / fj.c())});
      const double rhs = 1.0 / std::abs(fi.c()) + 1.0 / std::abs(fj.c());
      report.inequalities.push_back({InequalityKind::IsometricCircles, i + 1, j + 1, lhs, rhs,
                                     lhs - rhs > kSchottkyMargin});
    }
  }
  for (int i = 0; i < n; ++i) {
    const double lhs = std::abs(gens[i].trace());
    report.inequalities.push_back(
        {InequalityKind::Trace, i + 1, i + 1, lhs, 2.0, lhs - 2.0 > kSchottkyMargin});
  }
  report.classical = std::all_of(report.inequalities.begin(), report.inequalities.end(),
                                 [](const Inequality& q) { return q.passed; });
  return report;
}

ValidationReport validate_schottky(std::span<const CirclePair> circles) {
  std::vector<MoebiusMap> gens;
  gens.reserve(circles.size());
  for (const auto& c : circles) gens.push_back(c.map);
  return validate_generators(gens);
}

std::string to_string(InequalityKind kind) {
  return kind == InequalityKind::Trace ? "trace" : "isometric_circles";
}

}  // namespace schottky
