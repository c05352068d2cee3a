#include "schottky/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "schottky/error.hpp"

namespace schottky {
namespace {

// Sign of a complex number for the representative tie-break: positive real
// part wins, a numerically zero real part defers to the imaginary part.
bool is_negative(Complex v) {
  const double scale = std::abs(v);
  if (std::abs(v.real()) > 1e-14 * scale) return v.real() < 0.0;
  return v.imag() < 0.0;
}

constexpr double kPoleTolerance = 1e-15;

}  // namespace

std::ostream& operator<<(std::ostream& os, const ComplexPoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << p.value();
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) < 1e-300) {
    throw Error(ErrorCode::DegenerateConfiguration, "singular Moebius matrix");
  }
  const Complex s = std::sqrt(det);
  *this = MoebiusMap(Unscaled{}, a / s, b / s, c / s, d / s);
}

MoebiusMap::MoebiusMap(Unscaled, Complex a, Complex b, Complex c, Complex d) {
  const double scale =
      std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  const Complex tr = a + d;
  bool flip = false;
  if (std::abs(tr) > 1e-14 * scale) {
    flip = is_negative(tr);
  } else {
    for (Complex e : {a, b, c, d}) {
      if (std::abs(e) > 1e-14 * scale) {
        flip = is_negative(e);
        break;
      }
    }
  }
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
  a_ = a;
  b_ = b;
  c_ = c;
  d_ = d;
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

ComplexPoint MoebiusMap::apply(const ComplexPoint& z) const {
  if (z.is_infinite()) {
    if (c_ == Complex(0.0, 0.0)) return ComplexPoint::infinity();
    return a_ / c_;
  }
  const Complex w = z.value();
  const Complex cz = c_ * w;
  const Complex den = cz + d_;
  // Rounding in c * (-d/c) + d leaves a residue of a few ulps at the pole.
  if (std::abs(den) <= kPoleTolerance * (std::abs(cz) + std::abs(d_))) {
    return ComplexPoint::infinity();
  }
  return (a_ * w + b_) / den;
}

double MoebiusMap::distance(const MoebiusMap& other) const {
  return std::max({std::abs(a_ - other.a_), std::abs(b_ - other.b_), std::abs(c_ - other.c_),
                   std::abs(d_ - other.d_)});
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  return MoebiusMap::from_unimodular(f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
                                     f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d());
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& f) {
  return os << "[[" << f.a() << ", " << f.b() << "], [" << f.c() << ", " << f.d() << "]]";
}

FixedPointPair fixed_points(const MoebiusMap& f) {
  const Complex a = f.a(), b = f.b(), c = f.c(), d = f.d();
  if (std::abs(c) < 1e-300) {
    throw Error(ErrorCode::CIsZero, "fixed-point formula needs c != 0");
  }
  const Complex disc = (a - d) * (a - d) + 4.0 * b * c;
  if (std::abs(disc) < 1e-14) {
    throw Error(ErrorCode::ParabolicOrElliptic, "coincident fixed points");
  }
  const Complex s = std::sqrt(disc);
  Complex attracting = (a - d + s) / (2.0 * c);
  Complex repelling = (a - d - s) / (2.0 * c);
  Complex mu = (a - attracting * c) / (a - repelling * c);
  if (std::abs(std::abs(mu) - 1.0) < 1e-12) {
    throw Error(ErrorCode::ParabolicOrElliptic, "multiplier on the unit circle");
  }
  if (std::abs(mu) > 1.0) {
    std::swap(attracting, repelling);
    mu = 1.0 / mu;
  }
  return {attracting, repelling, mu};
}

Complex cross_ratio(const ComplexPoint& z1, const ComplexPoint& z2, const ComplexPoint& z3,
                    const ComplexPoint& z4) {
  const int infinite = z1.is_infinite() + z2.is_infinite() + z3.is_infinite() + z4.is_infinite();
  if (infinite > 1) {
    throw Error(ErrorCode::DegenerateConfiguration, "more than one point at infinity");
  }
  // Factors (z1-z3), (z2-z4) over (z1-z4), (z2-z3); the infinite point drops
  // out of exactly one numerator and one denominator factor.
  auto diff = [](const ComplexPoint& p, const ComplexPoint& q) -> Complex {
    if (p.is_infinite() || q.is_infinite()) return 1.0;
    return p.value() - q.value();
  };
  const Complex n1 = diff(z1, z3);
  const Complex n2 = diff(z2, z4);
  const Complex d1 = diff(z1, z4);
  const Complex d2 = diff(z2, z3);
  if (std::abs(d1) < 1e-300 || std::abs(d2) < 1e-300) {
    throw Error(ErrorCode::DegenerateConfiguration, "cross-ratio denominator vanishes");
  }
  return n1 * n2 / (d1 * d2);
}

}  // namespace schottky
