#include "schottky/polynomial.hpp"

#include <cmath>
#include <numeric>

#include "schottky/error.hpp"

namespace schottky {
namespace {

void enumerate(int remaining, int var, int num_vars, Exponents& cur,
               std::vector<Exponents>& out) {
  if (var == num_vars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = e;
    enumerate(remaining - e, var + 1, num_vars, cur, out);
  }
}

// Number of monomials of degree d in n variables.
std::size_t count_monomials(int d, int n) {
  if (n == 0) return d == 0 ? 1 : 0;
  std::size_t c = 1;
  for (int i = 1; i <= n - 1; ++i) c = c * (d + i) / i;
  return c;
}

}  // namespace

std::vector<Exponents> monomial_basis(int degree, int num_vars) {
  if (degree < 0 || num_vars < 1) throw Error(ErrorCode::InvalidArgument, "bad monomial basis");
  std::vector<Exponents> out;
  Exponents cur(num_vars, 0);
  enumerate(degree, 0, num_vars, cur, out);
  return out;
}

std::size_t monomial_index(const Exponents& e) {
  // Count monomials that precede e: at each variable, those with a larger
  // exponent there and the same prefix.
  const int n = static_cast<int>(e.size());
  int remaining = std::accumulate(e.begin(), e.end(), 0);
  std::size_t idx = 0;
  for (int v = 0; v < n - 1; ++v) {
    for (int larger = remaining; larger > e[v]; --larger) {
      idx += count_monomials(remaining - larger, n - v - 1);
    }
    remaining -= e[v];
  }
  return idx;
}

double eval_monomial(const Exponents& e, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

Complex eval_monomial(const Exponents& e, std::span<const Complex> x) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  return v;
}

HomogeneousPoly::HomogeneousPoly(int degree, int num_vars, std::vector<Complex> coefficients)
    : degree_(degree),
      num_vars_(num_vars),
      monomials_(monomial_basis(degree, num_vars)),
      coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != monomials_.size()) {
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match the monomial basis");
  }
}

Complex HomogeneousPoly::operator()(std::span<const Complex> x) const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < monomials_.size(); ++i) s += coefficients_[i] * eval_monomial(monomials_[i], x);
  return s;
}

double HomogeneousPoly::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    s += coefficients_[i].real() * eval_monomial(monomials_[i], x);
  return s;
}

HomogeneousPoly HomogeneousPoly::canonicalized() const {
  double norm2 = 0.0;
  for (Complex c : coefficients_) norm2 += std::norm(c);
  if (norm2 == 0.0) throw Error(ErrorCode::InvalidArgument, "zero polynomial");
  const double norm = std::sqrt(norm2);
  std::vector<Complex> c(coefficients_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coefficients_[i] / norm;
  for (Complex v : c) {
    if (std::abs(v) > 1e-12) {
      if (v.real() < 0.0) {
        for (Complex& w : c) w = -w;
      }
      break;
    }
  }
  return HomogeneousPoly(degree_, num_vars_, std::move(c));
}

std::vector<Complex> expand_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace schottky
