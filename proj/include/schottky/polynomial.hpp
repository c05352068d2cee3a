#pragma once

#include <span>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

using Exponents = std::vector<int>;

/// Monomials of the given degree in num_vars variables, graded
/// lexicographic with x0 > x1 > ...: for degree 2 in three variables
/// x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
std::vector<Exponents> monomial_basis(int degree, int num_vars);

/// Position of a monomial in monomial_basis(sum(e), e.size()).
std::size_t monomial_index(const Exponents& e);

double eval_monomial(const Exponents& e, std::span<const double> x);
Complex eval_monomial(const Exponents& e, std::span<const Complex> x);

/// Homogeneous polynomial with dense coefficients over monomial_basis.
class HomogeneousPoly {
public:
  HomogeneousPoly(int degree, int num_vars, std::vector<Complex> coefficients);

  int degree() const { return degree_; }
  int num_vars() const { return num_vars_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  const std::vector<Exponents>& monomials() const { return monomials_; }

  Complex coefficient(const Exponents& e) const { return coefficients_.at(monomial_index(e)); }

  Complex operator()(std::span<const Complex> x) const;
  double operator()(std::span<const double> x) const;

  /// Unit Euclidean norm, then a global sign so the first coefficient with
  /// modulus above 1e-12 has positive real part.
  HomogeneousPoly canonicalized() const;

private:
  int degree_;
  int num_vars_;
  std::vector<Exponents> monomials_;
  std::vector<Complex> coefficients_;
};

/// Monic polynomial prod (x - root) as coefficients from the constant term
/// upward.
std::vector<Complex> expand_roots(std::span<const Complex> roots);

}  // namespace schottky
