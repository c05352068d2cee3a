#include <doctest.h>

#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/rational.hpp>
#include <random>

#include "schottky/error.hpp"
#include "schottky/moebius.hpp"

using namespace schottky;

namespace {

using Wide = boost::multiprecision::cpp_complex_50;

Wide widen(Complex z) { return Wide(z.real(), z.imag()); }

MoebiusMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
    if (std::abs(a * d - b * c) > 0.1) return MoebiusMap(a, b, c, d);
  }
}

// (a z + b) / (c z + d) in 50 digits from the double entries.
Wide wide_apply(const MoebiusMap& f, const Wide& z) {
  return (widen(f.a()) * z + widen(f.b())) / (widen(f.c()) * z + widen(f.d()));
}

// Gaussian rationals for an exact cross-ratio.
struct Gauss {
  boost::rational<long long> re, im;
};
Gauss operator-(Gauss x, Gauss y) { return {x.re - y.re, x.im - y.im}; }
Gauss operator*(Gauss x, Gauss y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
Gauss operator/(Gauss x, Gauss y) {
  const auto n = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

}  // namespace

TEST_CASE("representatives have determinant one and a non-negative trace") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const MoebiusMap f = random_map(rng);
    CHECK(std::abs(f.determinant() - 1.0) < 1e-12);
    const Complex tr = f.trace();
    CHECK((tr.real() > 0.0 || (std::abs(tr.real()) < 1e-12 && tr.imag() >= 0.0)));
  }
}

TEST_CASE("scalar multiples normalize to the same representative") {
  const MoebiusMap f(2.0, 1.0, 1.0, 1.0);
  const MoebiusMap g(Complex(-6.0, 2.0), Complex(-3.0, 1.0), Complex(-3.0, 1.0), Complex(-3.0, 1.0));
  CHECK(f.distance(g) < 1e-15);
}

TEST_CASE("singular matrices are rejected") {
  CHECK_THROWS_AS(MoebiusMap(1.0, 2.0, 2.0, 4.0), Error);
}

TEST_CASE("composition agrees with 50-digit evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const MoebiusMap f = random_map(rng), g = random_map(rng);
    const MoebiusMap fg = compose(f, g);
    const Wide z(u(rng), u(rng));
    const Wide expect = wide_apply(f, wide_apply(g, z));
    const Wide got = wide_apply(fg, z);
    const double err = static_cast<double>(abs(expect - got) / (1 + abs(expect)));
    CHECK(err < 1e-11);
  }
}

TEST_CASE("inverse composes to the identity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const MoebiusMap f = random_map(rng);
    CHECK(compose(f, f.inverse()).distance(MoebiusMap::identity()) < 1e-12);
    CHECK(compose(f.inverse(), f).distance(MoebiusMap::identity()) < 1e-12);
  }
}

TEST_CASE("action at infinity and at the pole") {
  const MoebiusMap f(2.0, 1.0, 1.0, 1.0);
  const ComplexPoint at_inf = f(ComplexPoint::infinity());
  REQUIRE(at_inf.is_finite());
  CHECK(std::abs(at_inf.value() - 2.0) < 1e-15);
  CHECK(f(ComplexPoint(-1.0)).is_infinite());
  const MoebiusMap affine(2.0, 1.0, 0.0, 0.5);
  CHECK(affine(ComplexPoint::infinity()).is_infinite());
}

TEST_CASE("fixed points and the multiplier identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int tested = 0;
  while (tested < 40) {
    const MoebiusMap f = random_map(rng);
    FixedPointPair fp;
    try {
      fp = fixed_points(f);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    const Complex a = fp.attracting.value(), b = fp.repelling.value();
    CHECK(std::abs(f(a).value() - a) < 1e-9 * (1 + std::abs(a)));
    CHECK(std::abs(f(b).value() - b) < 1e-9 * (1 + std::abs(b)));
    CHECK(std::abs(fp.multiplier) < 1.0);
    const Complex z(u(rng), u(rng));
    const Complex fz = f(z).value();
    const Complex lhs = (fz - a) / (fz - b);
    const Complex rhs = fp.multiplier * (z - a) / (z - b);
    CHECK(std::abs(lhs - rhs) < 1e-8 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("fixed points reject c = 0, parabolic and elliptic maps") {
  auto code = [](const MoebiusMap& f) {
    try {
      fixed_points(f);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code(MoebiusMap(2.0, 1.0, 0.0, 0.5)) == ErrorCode::CIsZero);
  CHECK(code(MoebiusMap(1.0, 0.0, 1.0, 1.0)) == ErrorCode::ParabolicOrElliptic);
  const double t = 0.3;
  CHECK(code(MoebiusMap(std::cos(t), -std::sin(t), std::sin(t), std::cos(t))) == ErrorCode::ParabolicOrElliptic);
}

TEST_CASE("cross-ratio of 1, -1, i, -i matches exact arithmetic") {
  using R = boost::rational<long long>;
  const Gauss z1{R(1), R(0)}, z2{R(-1), R(0)}, z3{R(0), R(1)}, z4{R(0), R(-1)};
  const Gauss exact = (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3));
  const Complex got = cross_ratio(1.0, -1.0, Complex(0, 1), Complex(0, -1));
  CHECK(got.real() == doctest::Approx(boost::rational_cast<double>(exact.re)).epsilon(1e-15));
  CHECK(std::abs(got.imag() - boost::rational_cast<double>(exact.im)) < 1e-15);
  CHECK(exact.re == R(-1));
}

TEST_CASE("cross-ratio with a point at infinity drops its factors") {
  const Complex z(0.3, -0.7);
  CHECK(std::abs(cross_ratio(ComplexPoint::infinity(), 0.0, 1.0, z) - z) < 1e-15);
  CHECK_THROWS_AS(cross_ratio(ComplexPoint::infinity(), ComplexPoint::infinity(), 1.0, z), Error);
  CHECK_THROWS_AS(cross_ratio(1.0, 2.0, 3.0, 1.0), Error);
}

TEST_CASE("cross-ratio is Moebius invariant") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const MoebiusMap f = random_map(rng);
    const Complex z[4] = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const Complex before = cross_ratio(z[0], z[1], z[2], z[3]);
    const Complex after = cross_ratio(f(z[0]), f(z[1]), f(z[2]), f(z[3]));
    CHECK(std::abs(before - after) < 1e-10 * (1 + std::abs(before)));
  }
}
