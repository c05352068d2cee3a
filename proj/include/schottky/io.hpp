#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schottky/curve_fit.hpp"
#include "schottky/family.hpp"
#include "schottky/period.hpp"
#include "schottky/theta.hpp"

namespace schottky {

using Json = nlohmann::json;

/// Compact JSON with keys sorted and every double printed with %.17g, so a
/// given value always serializes to the same bytes. Non-finite numbers
/// become null.
std::string canonical_dump(const Json& j);

Json complex_json(Complex z);
Json point_json(const ComplexPoint& p);  // [re, im], or "inf"
Json poly_json(const HomogeneousPoly& p);

Json to_json(const CirclePair& c);
Json to_json(const ValidationReport& r);
Json to_json(const WeierstrassSet& ws);
Json to_json(const FitReport& r);
Json to_json(const RiemannMatrix& r);
Json to_json(const MCurveReport& r);
Json to_json(std::span<const CanonicalPoint> pts);

/// JSON array of {"z": [re, im], "w": [re, im], "r": radius}; generators are
/// built with circle_to_map.
std::vector<CirclePair> parse_circles(const Json& j);
std::vector<CirclePair> read_circles(const std::filesystem::path& path);

/// Samples of a ternary form on the affine chart x0 = 1:
/// "x,y,value" with x = x1, y = x2 on a grid x grid lattice over bbox.
struct BoundingBox {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};
void write_contour_grid(std::ostream& os, const HomogeneousPoly& poly, int grid, const BoundingBox& box);

/// Scatter plot of (x, y) pairs as a minimal standalone SVG.
void write_svg_scatter(std::ostream& os, std::span<const std::pair<double, double>> pts);

/// Formats a double with %.17g.
std::string format_double(double v);

}  // namespace schottky
