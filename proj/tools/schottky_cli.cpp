// schottky: build Schottky groups and compute curve data from them.
//
// Exit status: 0 on success, 2 for an invalid configuration, 3 when a
// numerical step fails.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "schottky/curve_fit.hpp"
#include "schottky/error.hpp"
#include "schottky/family.hpp"
#include "schottky/io.hpp"
#include "schottky/period.hpp"
#include "schottky/theta.hpp"
#include "schottky/words.hpp"

using namespace schottky;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
  int genus = 3;
  std::string eta = "1/12";
  std::string theta = "1/4";
  bool pi_fraction = false;
  std::string circles;
  int len = 8;
  int points = 50;
  std::uint64_t seed = 1;
  std::string mode = "uniform-circle";
  std::string format = "json";
  std::string out;
  int grid = 0;
  std::vector<double> bbox = {-2.0, 2.0, -2.0, 2.0};
  unsigned threads = 0;
  std::optional<double> mcurve_tol;
  bool include_identity = false;
  std::string save;
};

// "p/q" or a plain decimal.
double parse_angle(const std::string& s, bool pi_fraction) {
  double v = 0.0;
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const double p = std::stod(s.substr(0, slash));
      const double q = std::stod(s.substr(slash + 1));
      if (q == 0.0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
      v = p / q;
    } else {
      std::size_t used = 0;
      v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse angle '" + s + "'");
  }
  // p/q is always a multiple of pi
  return (pi_fraction || slash != std::string::npos) ? v * std::numbers::pi : v;
}

FamilyParams family_params(const RunConfig& c) {
  return FamilyParams(c.genus, parse_angle(c.eta, c.pi_fraction), parse_angle(c.theta, c.pi_fraction));
}

SchottkyGroup make_group(const RunConfig& c) {
  if (!c.circles.empty()) return SchottkyGroup(read_circles(c.circles));
  return SchottkyGroup::from_family(family_params(c));
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

void emit_json(const RunConfig& c, const Json& j) {
  Output out(c.out);
  out.stream() << canonical_dump(j) << '\n';
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  throw Error(ErrorCode::InvalidArgument, "format '" + c.format + "' is not available for this command");
}

Json config_json(const RunConfig& c) {
  Json j = {{"genus", c.genus}};
  if (c.circles.empty()) {
    j["eta"] = parse_angle(c.eta, c.pi_fraction);
    j["theta"] = parse_angle(c.theta, c.pi_fraction);
  } else {
    j["circles"] = c.circles;
  }
  return j;
}

void cmd_family(const RunConfig& c) {
  require_format(c, {"json"});
  const SchottkyGroup group = make_group(c);
  Json circles = Json::array(), fixed = Json::array();
  for (const auto& p : group.circle_pairs()) circles.push_back(to_json(p));
  for (const auto& fp : group.fixed_points()) {
    fixed.push_back({{"A", point_json(fp.attracting)},
                     {"B", point_json(fp.repelling)},
                     {"mu", complex_json(fp.multiplier)}});
  }
  Json j = config_json(c);
  j["genus"] = group.genus();
  j["circles"] = std::move(circles);
  j["fixed_points"] = std::move(fixed);
  j["validation"] = to_json(group.validation());
  emit_json(c, j);
}

void cmd_words(const RunConfig& c) {
  require_format(c, {"json"});
  const SchottkyGroup group = make_group(c);
  const WordSet words = generate_words(group, c.len);
  if (!c.save.empty()) write_wordset(words, c.save);
  Json counts = Json::array();
  for (int k = 0; k <= words.max_length(); ++k) counts.push_back(words.level(k).size());
  emit_json(c, {{"genus", group.genus()},
                {"L", c.len},
                {"counts", std::move(counts)},
                {"total", words.size()},
                {"projected", projected_word_count(group.genus(), c.len)}});
}

void cmd_weierstrass(const RunConfig& c) {
  require_format(c, {"json"});
  const FamilyParams params = family_params(c);
  const SchottkyGroup group = SchottkyGroup::from_family(params);
  const ThetaEvaluator ev(group, c.len);
  const WeierstrassSet ws = weierstrass_points_g2(params, ev);
  Json j = config_json(c);
  j["L"] = c.len;
  j["weierstrass"] = to_json(ws);
  j["sextic"] = hyperelliptic_model(ws);
  emit_json(c, j);
}

void cmd_fit(const RunConfig& c) {
  require_format(c, {"json", "csv"});
  const FamilyParams params = family_params(c);
  const SchottkyGroup group = SchottkyGroup::from_family(params);
  const ThetaEvaluator ev(group, c.len);
  FitReport report;
  if (params.genus() == 3) {
    report = genus3_quartic(ev, c.points, c.seed, parse_sampling_mode(c.mode), c.threads);
  } else if (params.genus() == 4) {
    report = genus4_pair(params, ev);
  } else {
    throw Error(ErrorCode::InvalidArgument, "fit supports genus 3 and 4");
  }
  if (c.format == "csv") {
    if (params.genus() != 3) throw Error(ErrorCode::InvalidArgument, "contour grids are for plane quartics");
    if (c.bbox.size() != 4) throw Error(ErrorCode::InvalidArgument, "--bbox takes xmin xmax ymin ymax");
    Output out(c.out);
    write_contour_grid(out.stream(), report.polys.front(), c.grid > 0 ? c.grid : 400,
                       {c.bbox[0], c.bbox[1], c.bbox[2], c.bbox[3]});
    return;
  }
  Json j = config_json(c);
  j["L"] = c.len;
  j["fit"] = to_json(report);
  emit_json(c, j);
}

void cmd_riemann(const RunConfig& c) {
  require_format(c, {"json", "text"});
  const SchottkyGroup group = make_group(c);
  const WordSet words = generate_words(group, c.len);
  const RiemannMatrix r = riemann_matrix(group, words, {c.include_identity, c.threads});
  if (c.format == "text") {
    Output out(c.out);
    print_matrix(out.stream(), r.entries);
    if (c.mcurve_tol) {
      const MCurveReport m = m_curve_check(r, *c.mcurve_tol);
      out.stream() << "m-curve: " << (m.passed ? "pass" : "fail") << " (max |Re| = " << format_double(m.max_real)
                   << ", min eig Im = " << format_double(m.min_imag_eigenvalue) << ")\n";
    }
    return;
  }
  Json j = to_json(r);
  if (c.mcurve_tol) j["m_curve"] = to_json(m_curve_check(r, *c.mcurve_tol));
  emit_json(c, j);
}

void cmd_limitset(const RunConfig& c) {
  require_format(c, {"json", "csv", "svg"});
  const SchottkyGroup group = make_group(c);
  const auto pts = limit_set_points(group, c.len);
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << "re,im\n";
    for (const auto& p : pts) out.stream() << format_double(p.re()) << ',' << format_double(p.im()) << '\n';
  } else if (c.format == "svg") {
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : pts) xy.emplace_back(p.re(), p.im());
    write_svg_scatter(out.stream(), xy);
  } else {
    Json list = Json::array();
    for (const auto& p : pts) list.push_back(point_json(p));
    out.stream() << canonical_dump({{"genus", group.genus()}, {"depth", c.len}, {"points", std::move(list)}})
                 << '\n';
  }
}

void cmd_sample(const RunConfig& c) {
  require_format(c, {"json", "csv"});
  const SchottkyGroup group = make_group(c);
  const ThetaEvaluator ev(group, c.len);
  const auto pts = sample_curve(ev, c.points, c.seed, parse_sampling_mode(c.mode), c.threads);
  Output out(c.out);
  if (c.format == "csv") {
    auto& os = out.stream();
    os << "source_re,source_im,chart";
    for (int k = 0; k < ev.genus(); ++k) os << ",x" << k << "_re,x" << k << "_im";
    os << '\n';
    for (const auto& p : pts) {
      os << format_double(p.source.re()) << ',' << format_double(p.source.im()) << ',' << p.chart;
      for (Complex x : p.normalized) os << ',' << format_double(x.real()) << ',' << format_double(x.imag());
      os << '\n';
    }
    return;
  }
  out.stream() << canonical_dump({{"genus", ev.genus()},
                                  {"L", c.len},
                                  {"seed", c.seed},
                                  {"mode", std::string(to_string(parse_sampling_mode(c.mode)))},
                                  {"points", to_json(pts)}})
               << '\n';
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAngles:
    case ErrorCode::OverlappingCircles:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DepthLimit:
    case ErrorCode::Io:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schottky groups: circles, theta series, canonical curves and period matrices"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--genus", c.genus, "genus g >= 2")->capture_default_str();
    sub->add_option("--eta", c.eta, "angle eta: p/q means p*pi/q, plain numbers are radians")->capture_default_str();
    sub->add_option("--theta", c.theta, "angle theta: p/q means p*pi/q, plain numbers are radians")->capture_default_str();
    sub->add_flag("--pi-fraction", c.pi_fraction, "read plain --eta and --theta numbers as multiples of pi");
    sub->add_option("--circles", c.circles, "JSON circle file instead of the family");
    sub->add_option("--len", c.len, "word length L")->capture_default_str();
    sub->add_option("--format", c.format, "output format")->capture_default_str();
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--threads", c.threads, "worker cap, 0 for all cores")->capture_default_str();
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--points", c.points, "number of samples N")->capture_default_str();
    sub->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
    sub->add_option("--mode", c.mode, "uniform-circle or exterior-arcs")->capture_default_str();
  };

  auto* family = app.add_subcommand("family", "circle pairs, generators and Schottky conditions");
  auto* words = app.add_subcommand("words", "count reduced words up to length L");
  auto* weier = app.add_subcommand("weierstrass", "genus-2 Weierstrass values and sextic");
  auto* fit = app.add_subcommand("fit", "canonical ideal by homogeneous least squares");
  auto* riemann = app.add_subcommand("riemann", "Riemann matrix");
  auto* limitset = app.add_subcommand("limitset", "orbit points of the generator fixed points");
  auto* sample = app.add_subcommand("sample", "canonical-map samples");
  for (auto* sub : {family, words, weier, fit, riemann, limitset, sample}) add_common(sub);
  add_sampling(fit);
  add_sampling(sample);
  words->add_option("--save", c.save, "write the word set in binary form");
  fit->add_option("--grid", c.grid, "contour grid size for --format csv (default 400)");
  fit->add_option("--bbox", c.bbox, "xmin xmax ymin ymax of the contour grid")->expected(4);
  riemann->add_option("--mcurve-tol", c.mcurve_tol, "append an M-curve check at this tolerance");
  riemann->add_flag("--include-identity", c.include_identity, "add the identity term off the diagonal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*family) cmd_family(c);
    else if (*words) cmd_words(c);
    else if (*weier) cmd_weierstrass(c);
    else if (*fit) cmd_fit(c);
    else if (*riemann) cmd_riemann(c);
    else if (*limitset) cmd_limitset(c);
    else if (*sample) cmd_sample(c);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error: out of memory; lower --len or SCHOTTKY_WORD_CAP\n");
    return kExitNumerical;
  }
  return 0;
}
