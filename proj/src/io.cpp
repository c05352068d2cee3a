#include "schottky/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "schottky/error.hpp"

namespace schottky {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      // nlohmann's default object is a std::map, already key-sorted.
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        dump(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

Json diagnostics_json(const FitDiagnostics& d) {
  return {{"singular_values", d.singular_values},
          {"real_projection", d.real_projection},
          {"null_space_projection", d.null_space_projection}};
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json point_json(const ComplexPoint& p) {
  if (p.is_infinite()) return "inf";
  return complex_json(p.value());
}

Json poly_json(const HomogeneousPoly& p) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < p.monomials().size(); ++i) {
    terms.push_back({{"exponents", p.monomials()[i]}, {"coefficient", complex_json(p.coefficients()[i])}});
  }
  return {{"degree", p.degree()}, {"num_vars", p.num_vars()}, {"terms", std::move(terms)}};
}

Json to_json(const CirclePair& c) {
  const MoebiusMap& f = c.map;
  return {{"z", complex_json(c.center_src)},
          {"w", complex_json(c.center_dst)},
          {"r", c.radius},
          {"matrix", Json::array({complex_json(f.a()), complex_json(f.b()), complex_json(f.c()),
                                  complex_json(f.d())})}};
}

Json to_json(const ValidationReport& r) {
  Json list = Json::array();
  for (const auto& q : r.inequalities) {
    list.push_back({{"kind", to_string(q.kind)},
                    {"i", q.i},
                    {"j", q.j},
                    {"lhs", q.lhs},
                    {"rhs", q.rhs},
                    {"margin", q.margin()},
                    {"passed", q.passed}});
  }
  return {{"classical", r.classical}, {"min_margin", r.min_margin()}, {"inequalities", std::move(list)}};
}

Json to_json(const WeierstrassSet& ws) {
  Json sources = Json::array(), values = Json::array(), products = Json::array();
  for (const auto& s : ws.sources) sources.push_back(point_json(s));
  for (Complex v : ws.values) values.push_back(complex_json(v));
  for (Complex p : ws.reciprocal_products) products.push_back(complex_json(p));
  return {{"sources", std::move(sources)},
          {"values", std::move(values)},
          {"alpha", ws.images},
          {"max_imag", ws.max_imag},
          {"reciprocal_products", std::move(products)},
          {"truncation_estimate", ws.truncation_estimate}};
}

Json to_json(const FitReport& r) {
  Json polys = Json::array();
  for (const auto& p : r.polys) polys.push_back(poly_json(p));
  Json j = {{"polys", std::move(polys)},
            {"residual_max", r.residual_max},
            {"residual_rms", r.residual_rms},
            {"orbit_spread", r.orbit_spread},
            {"sample_meta",
             {{"count", r.sample_meta.count},
              {"truncation", r.sample_meta.truncation},
              {"seed", r.sample_meta.seed},
              {"mode", std::string(to_string(r.sample_meta.mode))}}},
            {"diagnostics", diagnostics_json(r.diagnostics)}};
  if (r.symmetric_fit) {
    j["symmetric_fit"] = poly_json(*r.symmetric_fit);
    j["symmetric_residuals"] = {{"max", r.symmetric_residuals.max}, {"rms", r.symmetric_residuals.rms}};
  }
  if (!r.quadric_ansatz.empty()) {
    j["quadric_ansatz"] = r.quadric_ansatz;
    j["cubic_ansatz"] = r.cubic_ansatz;
    j["degenerate_normalization"] = r.degenerate_normalization;
    j["palindrome_defect"] = r.palindrome_defect;
    j["fixed_point_images"] = to_json(std::span<const CanonicalPoint>(r.fixed_point_images));
  }
  return j;
}

Json to_json(const RiemannMatrix& r) {
  Json partial_deltas = Json::array();
  const auto& partials = r.diagnostics.partials;
  // max entrywise change between truncations k and k-2
  for (std::size_t k = 2; k < partials.size(); ++k) {
    double delta = 0.0;
    for (std::size_t i = 0; i < partials[k].data.size(); ++i)
      delta = std::max(delta, std::abs(partials[k].data[i] - partials[k - 2].data[i]));
    partial_deltas.push_back({{"L", k}, {"delta", delta}});
  }
  return {{"genus", r.genus()},
          {"L", r.truncation},
          {"identity_off_diagonal", r.identity_off_diagonal},
          {"entries", matrix_json(r.entries)},
          {"diagnostics",
           {{"max_asymmetry", r.diagnostics.max_asymmetry},
            {"max_real", r.diagnostics.max_real},
            {"min_imag_eigenvalue", r.diagnostics.min_imag_eigenvalue},
            {"branch_flags", r.diagnostics.branch_flags},
            {"successive_deltas", std::move(partial_deltas)}}}};
}

Json to_json(const MCurveReport& r) {
  return {{"max_real", r.max_real},
          {"tolerance", r.tolerance},
          {"purely_imaginary", r.purely_imaginary},
          {"min_imag_eigenvalue", r.min_imag_eigenvalue},
          {"positive_definite", r.positive_definite},
          {"passed", r.passed}};
}

Json to_json(std::span<const CanonicalPoint> pts) {
  Json list = Json::array();
  for (const auto& p : pts) {
    Json coords = Json::array(), normalized = Json::array();
    for (Complex c : p.coords) coords.push_back(complex_json(c));
    for (Complex c : p.normalized) normalized.push_back(complex_json(c));
    list.push_back({{"source", point_json(p.source)},
                    {"coords", std::move(coords)},
                    {"normalized", std::move(normalized)},
                    {"chart", p.chart}});
  }
  return list;
}

std::vector<CirclePair> parse_circles(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "circle file must be a non-empty array");
  std::vector<CirclePair> out;
  try {
    for (const auto& e : j) {
      const Complex z(e.at("z").at(0).get<double>(), e.at("z").at(1).get<double>());
      const Complex w(e.at("w").at(0).get<double>(), e.at("w").at(1).get<double>());
      const double r = e.at("r").get<double>();
      if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
      out.push_back({z, w, r, circle_to_map(z, w, r)});
    }
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed circle entry: ") + ex.what());
  }
  return out;
}

std::vector<CirclePair> read_circles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, path.string() + ": " + ex.what());
  }
  return parse_circles(j);
}

void write_contour_grid(std::ostream& os, const HomogeneousPoly& poly, int grid, const BoundingBox& box) {
  if (poly.num_vars() != 3) throw Error(ErrorCode::InvalidArgument, "contour grids need a ternary form");
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 samples per side");
  os << "x,y,value\n";
  std::vector<double> p(3, 1.0);
  for (int i = 0; i < grid; ++i) {
    p[2] = box.ymin + (box.ymax - box.ymin) * i / (grid - 1);
    for (int k = 0; k < grid; ++k) {
      p[1] = box.xmin + (box.xmax - box.xmin) * k / (grid - 1);
      os << format_double(p[1]) << ',' << format_double(p[2]) << ',' << format_double(poly(p)) << '\n';
    }
  }
}

void write_svg_scatter(std::ostream& os, std::span<const std::pair<double, double>> pts) {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  constexpr double size = 600.0, pad = 10.0;
  const double scale = (size - 2 * pad) / std::max(xmax - xmin, ymax - ymin);
  char buf[128];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\"/>\n", pad + (x - xmin) * scale,
                  size - pad - (y - ymin) * scale);
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace schottky
