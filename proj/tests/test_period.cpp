#include <doctest.h>

#include <numbers>
#include <sstream>

#include "schottky/error.hpp"
#include "schottky/period.hpp"

using namespace schottky;
using std::numbers::pi;

namespace {

SchottkyGroup family(int g) { return SchottkyGroup::from_family(FamilyParams(g, pi / 12, pi / 4 * 3 / g)); }

// Independent evaluation over tag sequences built by recursion, with the
// double-coset filter applied to the sequence itself.
Complex brute_entry(const SchottkyGroup& group, int m, int n, int max_len, bool identity) {
  const auto& fm = group.fixed_points()[m - 1];
  const auto& fn = group.fixed_points()[n - 1];
  Complex sum = 0.0;
  std::vector<int> tags;
  auto visit = [&](auto&& self, const MoebiusMap& w) -> void {
    if (!tags.empty() && std::abs(tags.front()) != m && std::abs(tags.back()) != n) {
      sum += std::log(cross_ratio(fm.attracting, fm.repelling, w(fn.attracting), w(fn.repelling)));
    }
    if (static_cast<int>(tags.size()) == max_len) return;
    for (int j = 1; j <= group.genus(); ++j) {
      for (int t : {j, -j}) {
        if (!tags.empty() && tags.back() == -t) continue;
        tags.push_back(t);
        self(self, w * group.letter(t));
        tags.pop_back();
      }
    }
  };
  visit(visit, MoebiusMap::identity());
  if (m == n) sum += std::log(fn.multiplier);
  else if (identity) sum += std::log(cross_ratio(fm.attracting, fm.repelling, fn.attracting, fn.repelling));
  return sum / Complex(0.0, 2.0 * pi);
}

}  // namespace

TEST_CASE("length-zero truncation is log mu / 2 pi i on the diagonal") {
  const SchottkyGroup group = family(3);
  const auto r = riemann_matrix(group, generate_words(group, 0));
  for (int n = 0; n < 3; ++n) {
    const Complex expect = std::log(group.fixed_points()[n].multiplier) / Complex(0.0, 2.0 * pi);
    CHECK(std::abs(r.entries(n, n) - expect) < 1e-15);
    CHECK(r.entries(n, n).imag() > 0.0);
    CHECK(std::abs(r.entries(n, n).real()) < 1e-15);
    for (int m = 0; m < 3; ++m)
      if (m != n) CHECK(r.entries(n, m) == Complex(0.0));
  }
}

TEST_CASE("entries agree with a recursive re-evaluation") {
  const SchottkyGroup group = family(3);
  const WordSet words = generate_words(group, 4);
  for (bool identity : {false, true}) {
    const auto r = riemann_matrix(group, words, {identity, 1});
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(r.entries(m - 1, n - 1) - brute_entry(group, m, n, 4, identity)) < 1e-12);
  }
}

TEST_CASE("identity term shifts only the off-diagonal") {
  const SchottkyGroup group = family(3);
  const WordSet words = generate_words(group, 3);
  const auto without = riemann_matrix(group, words);
  const auto with = riemann_matrix(group, words, {true, 2});
  const auto& f = group.fixed_points();
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      const Complex delta = with.entries(m, n) - without.entries(m, n);
      if (m == n) {
        CHECK(delta == Complex(0.0));
      } else {
        const Complex term =
            std::log(cross_ratio(f[m].attracting, f[m].repelling, f[n].attracting, f[n].repelling)) /
            Complex(0.0, 2.0 * pi);
        CHECK(std::abs(delta - term) < 1e-13);
      }
    }
  }
}

TEST_CASE("symmetric, purely imaginary, positive definite, D_g invariant") {
  for (int g : {2, 3}) {
    const SchottkyGroup group = family(g);
    const auto r = riemann_matrix(group, generate_words(group, g == 2 ? 10 : 8), {false, 0});
    CHECK(r.diagnostics.max_asymmetry < 1e-8);
    CHECK(r.diagnostics.max_real < 1e-10);
    CHECK(r.diagnostics.min_imag_eigenvalue > 0.0);
    CHECK(r.diagnostics.branch_flags == 0);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        CHECK(std::abs(r.entries((i + 1) % g, (j + 1) % g) - r.entries(i, j)) < 1e-7);
    CHECK(m_curve_check(r, 1e-8).passed);
  }
}

TEST_CASE("successive truncation deltas decrease") {
  const SchottkyGroup group = family(2);
  const auto r = riemann_matrix(group, generate_words(group, 10));
  const auto& p = r.diagnostics.partials;
  REQUIRE(p.size() == 11);
  auto delta = [&](int k) {
    double d = 0.0;
    for (std::size_t i = 0; i < p[k].data.size(); ++i) d = std::max(d, std::abs(p[k + 2].data[i] - p[k].data[i]));
    return d;
  };
  CHECK(delta(6) < delta(4));
  CHECK(delta(8) < delta(6));
  // w -> w^{-1} pairs the terms of R_mn and R_nm word by word and keeps the
  // length, so every truncation is symmetric up to rounding.
  for (int k = 2; k <= 10; ++k) {
    PeriodDiagnostics dk;
    update_diagnostics(p[k], dk);
    CHECK(dk.max_asymmetry < 1e-13);
    CHECK(dk.min_imag_eigenvalue > 0.0);
  }
}

TEST_CASE("m-curve check") {
  ComplexMatrix m(2);
  m(0, 0) = Complex(0.0, 0.5);
  m(1, 1) = Complex(0.0, 0.5);
  m(0, 1) = m(1, 0) = Complex(0.0, -0.1);
  CHECK(m_curve_check(m, 1e-10).passed);
  m(0, 1) = m(1, 0) = Complex(0.1, -0.1);
  const auto report = m_curve_check(m, 1e-10);
  CHECK_FALSE(report.passed);
  CHECK(report.positive_definite);
  CHECK(report.max_real == doctest::Approx(0.1));
  m(0, 1) = m(1, 0) = Complex(0.0, -0.9);
  CHECK_FALSE(m_curve_check(m, 1e-10).positive_definite);
}

TEST_CASE("bracket layout") {
  ComplexMatrix m(2);
  m(0, 0) = Complex(0.0, 0.25);
  m(0, 1) = Complex(0.0, -0.5);
  m(1, 0) = Complex(0.0, -0.5);
  m(1, 1) = Complex(0.0, 0.25);
  std::ostringstream os;
  print_matrix(os, m);
  CHECK(os.str() == "[[0+0.25i, 0-0.5i],\n [0-0.5i, 0+0.25i]]\n");
}
