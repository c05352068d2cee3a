#include "schottky/period.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "schottky/error.hpp"
#include "schottky/parallel.hpp"

namespace schottky {
namespace {

Complex finite(const ComplexPoint& p, const char* what) {
  if (p.is_infinite()) throw Error(ErrorCode::DegenerateConfiguration, std::string(what) + " is at infinity");
  return p.value();
}

Complex apply_finite(const MoebiusMap& f, Complex z) { return (f.a() * z + f.b()) / (f.c() * z + f.d()); }

// Log of one cross-ratio term, or nothing if it sits on the branch cut.
bool log_term(Complex am, Complex bm, Complex fa, Complex fb, Complex& out) {
  const Complex cr = (am - fa) * (bm - fb) / ((am - fb) * (bm - fa));
  if (cr.real() < 0.0 && std::abs(cr.imag()) < kBranchCut) return false;
  out = std::log(cr);
  return true;
}

}  // namespace

RiemannMatrix riemann_matrix(const SchottkyGroup& group, const WordSet& words, const RiemannOptions& options) {
  const int g = group.genus();
  if (words.genus() != g) throw Error(ErrorCode::InvalidArgument, "word set and group differ in genus");
  const auto& fps = group.fixed_points();
  std::vector<Complex> a(g), b(g), mu(g);
  for (int n = 0; n < g; ++n) {
    a[n] = finite(fps[n].attracting, "attracting fixed point");
    b[n] = finite(fps[n].repelling, "repelling fixed point");
    mu[n] = fps[n].multiplier;
    if (std::abs(mu[n]) > kMaxMultiplier) {
      throw Error(ErrorCode::NearUnitMultiplier, "|mu_" + std::to_string(n + 1) + "| = " +
                                                     std::to_string(std::abs(mu[n])));
    }
  }

  const int levels = words.max_length() + 1;
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  // Per entry (row m, column n) the cumulative sum after each word length.
  std::vector<std::vector<Complex>> cumulative(static_cast<std::size_t>(g) * g);
  std::vector<int> flags(static_cast<std::size_t>(g) * g, 0);

  parallel_for(cumulative.size(), options.threads, [&](std::size_t idx) {
    const int m = static_cast<int>(idx) / g;
    const int n = static_cast<int>(idx) % g;
    std::vector<Complex> sums(levels);
    Complex s = 0.0;
    Complex term;
    for (int k = 0; k < levels; ++k) {
      if (k == 0) {
        if (m == n) {
          s += std::log(mu[n]);
        } else if (options.include_identity_off_diagonal) {
          if (log_term(a[m], b[m], a[n], b[n], term)) s += term;
          else ++flags[idx];
        }
      } else {
        for (const GroupWord& w : words.level(k)) {
          if (!is_double_coset_rep(w, m + 1, n + 1)) continue;
          if (log_term(a[m], b[m], apply_finite(w.matrix, a[n]), apply_finite(w.matrix, b[n]), term)) s += term;
          else ++flags[idx];
        }
      }
      sums[k] = s / two_pi_i;
    }
    cumulative[idx] = std::move(sums);
  });

  RiemannMatrix r;
  r.truncation = words.max_length();
  r.identity_off_diagonal = options.include_identity_off_diagonal;
  r.entries = ComplexMatrix(g);
  r.diagnostics.partials.assign(levels, ComplexMatrix(g));
  for (std::size_t idx = 0; idx < cumulative.size(); ++idx) {
    const int m = static_cast<int>(idx) / g;
    const int n = static_cast<int>(idx) % g;
    for (int k = 0; k < levels; ++k) r.diagnostics.partials[k](m, n) = cumulative[idx][k];
    r.entries(m, n) = cumulative[idx].back();
    r.diagnostics.branch_flags += flags[idx];
  }
  update_diagnostics(r.entries, r.diagnostics);
  return r;
}

namespace {

double min_eigenvalue_of_imag(const ComplexMatrix& m) {
  Eigen::MatrixXd im(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) im(i, j) = 0.5 * (m(i, j).imag() + m(j, i).imag());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

void update_diagnostics(const ComplexMatrix& entries, PeriodDiagnostics& d) {
  d.max_asymmetry = 0.0;
  d.max_real = 0.0;
  for (int i = 0; i < entries.n; ++i) {
    for (int j = 0; j < entries.n; ++j) {
      d.max_asymmetry = std::max(d.max_asymmetry, std::abs(entries(i, j) - entries(j, i)));
      d.max_real = std::max(d.max_real, std::abs(entries(i, j).real()));
    }
  }
  d.min_imag_eigenvalue = entries.n > 0 ? min_eigenvalue_of_imag(entries) : 0.0;
}

MCurveReport m_curve_check(const ComplexMatrix& entries, double tol) {
  PeriodDiagnostics d;
  update_diagnostics(entries, d);
  MCurveReport r;
  r.max_real = d.max_real;
  r.tolerance = tol;
  r.purely_imaginary = d.max_real <= tol;
  r.min_imag_eigenvalue = d.min_imag_eigenvalue;
  r.positive_definite = d.min_imag_eigenvalue > 0.0;
  r.passed = r.purely_imaginary && r.positive_definite;
  return r;
}

void print_matrix(std::ostream& os, const ComplexMatrix& m) {
  char buf[96];
  os << '[';
  for (int i = 0; i < m.n; ++i) {
    os << (i == 0 ? "[" : " [");
    for (int j = 0; j < m.n; ++j) {
      const Complex z = m(i, j);
      std::snprintf(buf, sizeof buf, "%.16g%+.16gi", z.real(), z.imag());
      os << buf << (j + 1 < m.n ? ", " : "");
    }
    os << ']' << (i + 1 < m.n ? ",\n" : "");
  }
  os << "]\n";
}

}  // namespace schottky
