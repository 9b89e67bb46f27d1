#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rpgeom {

using Rational = mpq_class;

/// Largest chart dimension the engine supports.
inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector ordered graded-lexicographically, x0 > x1 > ... .
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned operator[](std::size_t index) const { return exp_[index]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// `other / *this`; requires divides(other).
  Monomial cofactor(const Monomial& other) const;
  Monomial with_exponent(std::size_t index, unsigned power) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted by
/// decreasing monomial with no zero coefficients, so equality is structural.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(std::size_t index);
  static Polynomial term(const Monomial& m, const Rational& c);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;
  /// Largest term under the monomial order; undefined on zero.
  const Term& leading() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned min_total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  /// Highest-index variable that occurs, or -1 for constants.
  int max_variable() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// Substitutes a constant for one variable.
  Polynomial substitute(std::size_t var, const Rational& value) const;
  double evaluate(std::span<const double> point) const;

  /// Positive rational c such that *this / c has coprime integer coefficients.
  Rational content() const;

  /// Coefficients of var^0, var^1, ... as polynomials free of var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  static Polynomial from_coefficients(std::size_t var, const std::vector<Polynomial>& coeffs);

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws InternalInconsistency when b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);
/// Greatest common divisor, monic under the monomial order (gcd(0,0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Every monomial in nvars variables of total degree <= degree, ascending.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree);

/// Renders terms in increasing monomial order, e.g. "1+z^2", "3/4*x*y-x^2".
std::string to_string(const Polynomial& p, std::span<const std::string> names);
std::string to_string(const Rational& q);

}  // namespace rpgeom
