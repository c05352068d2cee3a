#pragma once

#include <iosfwd>
#include <vector>

#include "schottky/moebius.hpp"
#include "schottky/words.hpp"

namespace schottky {

/// Row-major g x g complex matrix.
struct ComplexMatrix {
  int n = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  explicit ComplexMatrix(int size) : n(size), data(static_cast<std::size_t>(size) * size) {}
  Complex& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
  Complex operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

struct PeriodDiagnostics {
  double max_asymmetry = 0.0;      // max |R_nm - R_mn|
  double max_real = 0.0;           // max |Re R_nm|
  double min_imag_eigenvalue = 0.0;
  int branch_flags = 0;            // terms skipped near the negative real axis
  /// partials[k] is the matrix summed over words of length <= k.
  std::vector<ComplexMatrix> partials;
};

struct RiemannMatrix {
  ComplexMatrix entries;
  int truncation = 0;
  bool identity_off_diagonal = false;
  PeriodDiagnostics diagnostics;

  int genus() const { return entries.n; }
};

struct RiemannOptions {
  /// Add the identity's cross-ratio {A_m, B_m, A_n, B_n} to the off-diagonal
  /// sums. Off by default: the reference matrix for the family leaves it out.
  bool include_identity_off_diagonal = false;
  unsigned threads = 1;
};

/// |mu| above this raises NearUnitMultiplier.
inline constexpr double kMaxMultiplier = 1.0 - 1e-9;
/// Cross-ratios this close to the negative real axis are skipped and counted.
inline constexpr double kBranchCut = 1e-12;

/// R_nm = (1/2 pi i) sum_{f in <f_m> \ G / <f_n>} log {A_m, B_m, f A_n, f B_n},
/// with log mu_n in place of the identity term on the diagonal. Principal
/// branch per term; terms are summed in word order.
RiemannMatrix riemann_matrix(const SchottkyGroup& group, const WordSet& words,
                             const RiemannOptions& options = {});

/// Recomputes the diagnostics of `entries` (everything but branch flags and
/// partial sums).
void update_diagnostics(const ComplexMatrix& entries, PeriodDiagnostics& diagnostics);

struct MCurveReport {
  double max_real = 0.0;
  double tolerance = 0.0;
  bool purely_imaginary = false;
  double min_imag_eigenvalue = 0.0;
  bool positive_definite = false;
  bool passed = false;
};

MCurveReport m_curve_check(const ComplexMatrix& entries, double tol);
inline MCurveReport m_curve_check(const RiemannMatrix& r, double tol) { return m_curve_check(r.entries, tol); }

/// Bracketed rows, one per line, entries as "a+bi" with 16 significant digits.
void print_matrix(std::ostream& os, const ComplexMatrix& m);

}  // namespace schottky
