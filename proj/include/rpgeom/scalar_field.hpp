#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpgeom/polynomial.hpp"

namespace rpgeom {

/// Ordered coordinate names of a single chart.
class Chart {
 public:
  explicit Chart(std::vector<std::string> names);

  std::size_t dimension() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);
bool same_chart(const ChartPtr& a, const ChartPtr& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

/// Exact coordinates of a sample point.
using RationalPoint = std::vector<Rational>;

/// A rational function numerator/denominator over a chart, kept in canonical
/// form: coprime parts, denominator monic under the monomial order, and zero
/// stored as 0/1. Two fields are equal iff their representations are equal.
class ScalarField {
 public:
  explicit ScalarField(ChartPtr chart);
  ScalarField(ChartPtr chart, const Rational& value);
  ScalarField(ChartPtr chart, Polynomial numerator, Polynomial denominator = Polynomial::constant(1));

  static ScalarField coordinate(const ChartPtr& chart, std::size_t index);

  const ChartPtr& chart() const { return chart_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;

  ScalarField operator-() const;
  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const ScalarField& other);
  ScalarField& operator/=(const ScalarField& other);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
  friend ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }
  friend ScalarField operator*(ScalarField a, const Rational& c);
  friend ScalarField operator*(const Rational& c, ScalarField a) { return std::move(a) * c; }
  friend bool operator==(const ScalarField& a, const ScalarField& b);

  /// Integer power; negative exponents invert.
  ScalarField pow(int exponent) const;
  ScalarField partial(std::size_t index) const;

  Rational eval(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;

  std::string str() const;

 private:
  void canonicalize();

  ChartPtr chart_;
  Polynomial num_;
  Polynomial den_;
};

ScalarField partial(const ScalarField& f, std::size_t index);

}  // namespace rpgeom
