#include "schottky/curve_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "schottky/error.hpp"

namespace schottky {

using std::numbers::pi;

WeierstrassSet weierstrass_points_g2(const FamilyParams& params, const ThetaEvaluator& ev) {
  if (params.genus() != 2 || ev.genus() != 2) {
    throw Error(ErrorCode::InvalidArgument, "Weierstrass points are computed for genus 2");
  }
  const double t = params.theta();
  const double e = params.eta();
  WeierstrassSet ws;
  ws.sources = {ComplexPoint(1.0),          ComplexPoint(-1.0),
                std::polar(1.0, t),         std::polar(1.0, e),
                std::polar(1.0, pi - t),    std::polar(1.0, pi - e)};
  for (std::size_t j = 0; j < 6; ++j) {
    const Complex w1 = ev.eval_omega(1, ws.sources[j]);
    const Complex w2 = ev.eval_omega(2, ws.sources[j]);
    ws.values[j] = w1 / w2;
    ws.images[j] = ws.values[j].real();
    ws.max_imag = std::max(ws.max_imag, std::abs(ws.values[j].imag()));
    ws.truncation_estimate = std::max(ws.truncation_estimate, ev.truncation_estimate(ws.sources[j]));
  }
  ws.reciprocal_products = {ws.values[0] * ws.values[1], ws.values[2] * ws.values[4],
                            ws.values[3] * ws.values[5]};
  return ws;
}

std::vector<double> hyperelliptic_model(const WeierstrassSet& ws) {
  const auto coeffs = expand_roots(ws.values);
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (Complex c : coeffs) {
    if (std::abs(c.imag()) > 1e-8) {
      throw Error(ErrorCode::ImaginaryResidue,
                  "sextic coefficient has imaginary part " + std::to_string(c.imag()));
    }
    out.push_back(c.real());
  }
  return out;
}

namespace {

constexpr double kRealProjection = 1e-6;
constexpr double kNullSingular = 1e-10;

bool nearly_real(std::span<const CanonicalPoint> points) {
  for (const auto& p : points)
    for (Complex c : p.normalized)
      if (std::abs(c.imag()) >= kRealProjection) return false;
  return true;
}

// Rows of monomial evaluations; stacked [Re; Im] unless the data is real.
Eigen::MatrixXd design_matrix(std::span<const CanonicalPoint> points,
                              const std::vector<Exponents>& monomials, bool real) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto m = static_cast<Eigen::Index>(monomials.size());
  Eigen::MatrixXd a(real ? n : 2 * n, m);
  std::vector<double> re;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& x = points[i].normalized;
    if (real) {
      re.resize(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) re[k] = x[k].real();
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = eval_monomial(monomials[j], re);
    } else {
      for (Eigen::Index j = 0; j < m; ++j) {
        const Complex v = eval_monomial(monomials[j], x);
        a(i, j) = v.real();
        a(n + i, j) = v.imag();
      }
    }
  }
  return a;
}

struct NullVector {
  Eigen::VectorXd v;
  std::vector<double> singular_values;
  bool projected = false;
};

// Unit vector minimizing |A v|.
NullVector least_singular_vector(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index m = a.cols();
  NullVector out;
  out.singular_values.assign(s.data(), s.data() + s.size());
  // Fewer rows than columns leaves extra exact null directions.
  Eigen::Index null_dim = m - s.size();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < kNullSingular) ++null_dim;
  if (null_dim > 1) {
    throw Error(ErrorCode::RankDeficient,
                "numerical null space has dimension " + std::to_string(null_dim));
  }
  out.v = svd.matrixV().col(m - 1);
  if (null_dim == 1) {
    // Projection of the all-ones vector onto the null space, (I - A^+ A) 1.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    const Eigen::VectorXd proj = out.v * out.v.dot(ones);
    if (proj.norm() > 1e-8) {
      out.v = proj.normalized();
      out.projected = true;
    }
  }
  return out;
}

HomogeneousPoly to_poly(int degree, int num_vars, const Eigen::VectorXd& v) {
  std::vector<Complex> c(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) c[i] = v(i);
  return HomogeneousPoly(degree, num_vars, std::move(c)).canonicalized();
}

}  // namespace

HomogeneousPoly fit_homogeneous(std::span<const CanonicalPoint> points, int degree,
                                FitDiagnostics* diagnostics) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no points to fit");
  const int num_vars = static_cast<int>(points.front().normalized.size());
  const auto monomials = monomial_basis(degree, num_vars);
  if (points.size() < monomials.size()) {
    throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(monomials.size()) +
                                                " points for a degree-" + std::to_string(degree) +
                                                " fit");
  }
  for (const auto& p : points) {
    if (static_cast<int>(p.normalized.size()) != num_vars) {
      throw Error(ErrorCode::InvalidArgument, "points live in different projective spaces");
    }
  }
  const bool real = nearly_real(points);
  const auto null = least_singular_vector(design_matrix(points, monomials, real));
  if (diagnostics) {
    diagnostics->singular_values = null.singular_values;
    diagnostics->real_projection = real;
    diagnostics->null_space_projection = null.projected;
  }
  return to_poly(degree, num_vars, null.v);
}

Residuals residuals(const HomogeneousPoly& poly, std::span<const CanonicalPoint> points) {
  const HomogeneousPoly unit = poly.canonicalized();
  Residuals r;
  double sum2 = 0.0;
  for (const auto& p : points) {
    const double v = std::abs(unit(p.normalized));
    r.max = std::max(r.max, v);
    sum2 += v * v;
  }
  if (!points.empty()) r.rms = std::sqrt(sum2 / static_cast<double>(points.size()));
  return r;
}

std::vector<std::vector<Exponents>> quartic_orbits_g3() {
  return {
      {{4, 0, 0}, {0, 4, 0}, {0, 0, 4}},
      {{3, 1, 0}, {3, 0, 1}, {1, 3, 0}, {1, 0, 3}, {0, 3, 1}, {0, 1, 3}},
      {{2, 2, 0}, {2, 0, 2}, {0, 2, 2}},
      {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}},
  };
}

FitReport genus3_quartic(const ThetaEvaluator& ev, int count, std::uint64_t seed,
                         SamplingMode mode, unsigned threads) {
  if (ev.genus() != 3) throw Error(ErrorCode::InvalidArgument, "quartic fit needs genus 3");
  const auto samples = sample_curve(ev, count, seed, mode, threads);

  FitReport report;
  report.sample_meta = {count, ev.truncation(), seed, mode};
  const HomogeneousPoly quartic = fit_homogeneous(samples, 4, &report.diagnostics);
  const Residuals res = residuals(quartic, samples);
  report.residual_max = res.max;
  report.residual_rms = res.rms;

  const auto orbits = quartic_orbits_g3();
  for (const auto& orbit : orbits) {
    double mean = 0.0;
    for (const auto& e : orbit) mean += quartic.coefficient(e).real();
    mean /= static_cast<double>(orbit.size());
    double spread = 0.0;
    for (const auto& e : orbit) spread = std::max(spread, std::abs(quartic.coefficient(e).real() - mean));
    report.orbit_spread.push_back(spread);
  }

  // Orbit-symmetric refit: one column per orbit sum.
  const bool real = report.diagnostics.real_projection;
  const auto monomials = monomial_basis(4, 3);
  const Eigen::MatrixXd full = design_matrix(samples, monomials, real);
  Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(full.rows(), static_cast<Eigen::Index>(orbits.size()));
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (const auto& e : orbits[o]) reduced.col(o) += full.col(monomial_index(e));
  const auto null = least_singular_vector(reduced);
  Eigen::VectorXd expanded = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (const auto& e : orbits[o]) expanded(monomial_index(e)) = null.v(o);
  report.symmetric_fit = to_poly(4, 3, expanded);
  report.symmetric_residuals = residuals(*report.symmetric_fit, samples);

  report.polys.push_back(quartic);
  return report;
}

namespace {

constexpr std::array<double, 4> kAlternating = {1.0, -1.0, 1.0, -1.0};

// Orbit sums of the quadric ansatz at y.
std::array<Complex, 3> quadric_terms(const std::array<Complex, 4>& y) {
  Complex sq = 0.0, adj = 0.0;
  for (int j = 0; j < 4; ++j) {
    sq += y[j] * y[j];
    adj += y[j] * y[(j + 1) % 4];
  }
  return {sq, adj, y[0] * y[2] + y[1] * y[3]};
}

std::array<Complex, 4> cubic_terms(const std::array<Complex, 4>& y) {
  std::array<Complex, 4> t{};
  for (int j = 0; j < 4; ++j) {
    const Complex a = y[j], b = y[(j + 1) % 4], c = y[(j + 2) % 4];
    t[0] += a * a * a;
    t[1] += a * b * b + a * a * b;
    t[2] += a * a * c;
    t[3] += a * b * c;
  }
  return t;
}

// Ansatz in y expanded over the x-monomial basis: the coefficient of a
// monomial is picked by its orbit, times prod_j (-1)^{j e_j}.
HomogeneousPoly expand_ansatz(int degree, std::span<const double> coeffs) {
  const auto monomials = monomial_basis(degree, 4);
  std::vector<Complex> out(monomials.size(), 0.0);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const auto& e = monomials[i];
    double c = 0.0;
    if (degree == 2) {
      const bool square = std::count(e.begin(), e.end(), 2) == 1;
      const bool opposite = (e[0] == 1 && e[2] == 1) || (e[1] == 1 && e[3] == 1);
      c = square ? coeffs[0] : opposite ? coeffs[2] : coeffs[1];
    } else {
      const bool cube = std::count(e.begin(), e.end(), 3) == 1;
      const bool distinct = std::count(e.begin(), e.end(), 1) == 3;
      bool opposite = false;
      for (int j = 0; j < 4; ++j)
        if (e[j] == 2 && e[(j + 2) % 4] == 1) opposite = true;
      c = cube ? coeffs[0] : distinct ? coeffs[3] : opposite ? coeffs[2] : coeffs[1];
    }
    double sign = 1.0;
    for (int j = 0; j < 4; ++j)
      if (e[j] % 2 == 1) sign *= kAlternating[j];
    out[i] = c * sign;
  }
  return HomogeneousPoly(degree, 4, std::move(out));
}

}  // namespace

FitReport genus4_pair(const FamilyParams& params, const ThetaEvaluator& ev) {
  if (params.genus() != 4 || ev.genus() != 4) {
    throw Error(ErrorCode::InvalidArgument, "quadric/cubic fit needs genus 4");
  }
  const double t = params.theta();
  const double e = params.eta();
  const std::array<ComplexPoint, 6> sources = {ComplexPoint(1.0),    ComplexPoint(-1.0),
                                               std::polar(1.0, t),   std::polar(1.0, pi - t),
                                               std::polar(1.0, e),   std::polar(1.0, pi - e)};
  FitReport report;
  report.sample_meta = {6, ev.truncation(), 0, SamplingMode::UniformCircle};
  std::vector<CanonicalPoint> images;
  for (const auto& z : sources) {
    CanonicalPoint p = ev.canonical_map(z);
    images.push_back(p);
    if (std::abs(p.coords[0]) < 1e-14) {
      throw Error(ErrorCode::AllCoordinatesVanish, "first coordinate vanishes at a fixed point");
    }
    for (std::size_t k = 0; k < 4; ++k) p.normalized[k] = p.coords[k] / p.coords[0];
    p.chart = 0;
    report.palindrome_defect = std::max(report.palindrome_defect, std::abs(p.normalized[1] - p.normalized[3]));
    report.fixed_point_images.push_back(std::move(p));
  }
  const bool real = nearly_real(images);
  report.diagnostics.real_projection = real;

  // One row per point in y-coordinates, real and imaginary parts stacked
  // unless the images are real.
  const Eigen::Index rows = real ? 6 : 12;
  Eigen::MatrixXd aq(rows, 3), at(rows, 4);
  for (Eigen::Index i = 0; i < 6; ++i) {
    std::array<Complex, 4> y;
    for (int j = 0; j < 4; ++j) y[j] = images[i].normalized[j] * kAlternating[j];
    const auto qt = quadric_terms(y);
    const auto ct = cubic_terms(y);
    for (int k = 0; k < 3; ++k) {
      aq(i, k) = qt[k].real();
      if (!real) aq(6 + i, k) = qt[k].imag();
    }
    for (int k = 0; k < 4; ++k) {
      at(i, k) = ct[k].real();
      if (!real) at(6 + i, k) = ct[k].imag();
    }
  }

  // Quadric: c3 = 1, least squares in (c1, c2).
  const auto q_null = least_singular_vector(aq);
  Eigen::Vector3d c;
  if (std::abs(q_null.v(2)) < 1e-8) {
    report.degenerate_normalization = true;
    c = q_null.v;
  } else {
    const Eigen::Vector2d c12 = aq.leftCols(2).colPivHouseholderQr().solve(-aq.col(2));
    c << c12(0), c12(1), 1.0;
  }
  report.quadric_ansatz = {c(0), c(1), c(2)};

  // Q (y0 + y1 + y2 + y3) in cubic-ansatz coordinates; T is sought in its
  // orthogonal complement.
  Eigen::Vector4d qs(c(0), c(0) + c(1), c(0) + c(2), 2.0 * c(1) + c(2));
  Eigen::JacobiSVD<Eigen::MatrixXd> complement(Eigen::MatrixXd(qs.normalized()), Eigen::ComputeFullU);
  const Eigen::MatrixXd basis = complement.matrixU().rightCols(3);
  const auto t_null = least_singular_vector(at * basis);
  Eigen::Vector4d d = basis * t_null.v;
  if (std::abs(d(3)) < 1e-8) {
    report.degenerate_normalization = true;
    d.normalize();
  } else {
    d /= d(3);
  }
  report.cubic_ansatz = {d(0), d(1), d(2), d(3)};
  report.diagnostics.singular_values = t_null.singular_values;

  const std::array<double, 3> cq{c(0), c(1), c(2)};
  const std::array<double, 4> dt{d(0), d(1), d(2), d(3)};
  report.polys.push_back(expand_ansatz(2, cq).canonicalized());
  report.polys.push_back(expand_ansatz(3, dt).canonicalized());

  double sum2 = 0.0;
  for (const auto& poly : report.polys) {
    const Residuals r = residuals(poly, images);
    report.residual_max = std::max(report.residual_max, r.max);
    sum2 += r.rms * r.rms;
  }
  report.residual_rms = std::sqrt(sum2 / 2.0);
  return report;
}

}  // namespace schottky
