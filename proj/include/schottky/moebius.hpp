#pragma once

#include <complex>
#include <iosfwd>

namespace schottky {

using Complex = std::complex<double>;

/// A point of the Riemann sphere. Infinity is its own variant rather than a
/// large float, so every formula below carries an explicit branch for it.
class ComplexPoint {
public:
  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(double re, double im = 0.0) : value_(re, im) {}
  constexpr ComplexPoint(Complex z) : value_(z) {}

  static constexpr ComplexPoint infinity() {
    ComplexPoint p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; undefined for the point at infinity.
  constexpr Complex value() const { return value_; }
  constexpr double re() const { return value_.real(); }
  constexpr double im() const { return value_.imag(); }

  friend constexpr bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

private:
  Complex value_{0.0, 0.0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ComplexPoint& p);

/// Determinant-one 2x2 complex matrix acting by z -> (az+b)/(cz+d).
///
/// Every instance is normalized on construction: the entries are divided by
/// a square root of the determinant and the overall sign is chosen so the
/// trace has non-negative real part (ties broken by the imaginary part, and
/// for trace zero by the first nonzero entry). Two matrices representing the
/// same transformation therefore compare entrywise.
class MoebiusMap {
public:
  /// Identity.
  MoebiusMap() = default;

  /// Normalizes (a, b, c, d); throws DegenerateConfiguration if ad - bc = 0.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity() { return {}; }

  /// Entries that already have determinant one (stored representatives,
  /// products of normalized maps). Only the sign convention is applied, since
  /// recomputing ad - bc for long words cancels catastrophically.
  static MoebiusMap from_unimodular(Complex a, Complex b, Complex c, Complex d) {
    return MoebiusMap(Unscaled{}, a, b, c, d);
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex trace() const { return a_ + d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  MoebiusMap inverse() const;

  ComplexPoint operator()(const ComplexPoint& z) const { return apply(z); }
  ComplexPoint apply(const ComplexPoint& z) const;

  /// Largest entrywise distance between two normalized representatives.
  double distance(const MoebiusMap& other) const;

private:
  struct Unscaled {};
  MoebiusMap(Unscaled, Complex a, Complex b, Complex c, Complex d);

  Complex a_{1.0, 0.0};
  Complex b_{0.0, 0.0};
  Complex c_{0.0, 0.0};
  Complex d_{1.0, 0.0};
};

/// f . g, i.e. z -> f(g(z)).
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);

inline MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g) { return compose(f, g); }

inline ComplexPoint apply(const MoebiusMap& f, const ComplexPoint& z) { return f.apply(z); }

std::ostream& operator<<(std::ostream& os, const MoebiusMap& f);

struct FixedPointPair {
  ComplexPoint attracting;  // A
  ComplexPoint repelling;   // B
  Complex multiplier;       // mu, |mu| < 1
};

/// Fixed points of a loxodromic map with c != 0.
///
/// A = (a - d + s) / 2c and B = (a - d - s) / 2c with s^2 = (a-d)^2 + 4bc,
/// and mu = (a - Ac) / (a - Bc) so that
///   (f(z) - A) / (f(z) - B) = mu (z - A) / (z - B).
/// The labels are swapped (and mu inverted) whenever the plus branch comes
/// out repelling.
FixedPointPair fixed_points(const MoebiusMap& f);

/// {z1, z2, z3, z4} = (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3)).
/// An infinite argument cancels the two factors it appears in.
Complex cross_ratio(const ComplexPoint& z1, const ComplexPoint& z2, const ComplexPoint& z3,
                    const ComplexPoint& z4);

}  // namespace schottky
