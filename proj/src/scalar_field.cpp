#include "rpgeom/scalar_field.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty() || names_.size() > kMaxVars) {
    throw Error(ErrorKind::InvalidChart,
                "chart dimension must be 1.." + std::to_string(kMaxVars));
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw Error(ErrorKind::InvalidChart, "bad coordinate name '" + n + "'");
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidChart, "duplicate coordinate '" + n + "'");
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

ChartPtr make_chart(std::vector<std::string> names) {
  return std::make_shared<const Chart>(std::move(names));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw Error(ErrorKind::ChartMismatch, "operands live on different charts");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(ChartPtr chart)
    : chart_(std::move(chart)), den_(Polynomial::constant(1)) {}

ScalarField::ScalarField(ChartPtr chart, const Rational& value)
    : chart_(std::move(chart)), num_(Polynomial::constant(value)), den_(Polynomial::constant(1)) {}

ScalarField::ScalarField(ChartPtr chart, Polynomial numerator, Polynomial denominator)
    : chart_(std::move(chart)), num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZeroField, "zero denominator");
  canonicalize();
}

ScalarField ScalarField::coordinate(const ChartPtr& chart, std::size_t index) {
  if (index >= chart->dimension()) {
    throw Error(ErrorKind::IndexOutOfRange, "coordinate index " + std::to_string(index));
  }
  return ScalarField(chart, Polynomial::variable(index));
}

void ScalarField::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  Rational scale = 1 / den_.leading().coeff;
  if (scale != 1) {
    num_ *= scale;
    den_ *= scale;
  }
}

Rational ScalarField::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

ScalarField ScalarField::operator-() const {
  ScalarField r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_chart(chart_, other.chart_);
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
    if (!den_.is_constant()) canonicalize();
    else if (num_.is_zero()) den_ = Polynomial::constant(1);
    return *this;
  }
  // a/b + c/d with g = gcd(b, d): (a*(d/g) + c*(b/g)) / (b*(d/g))
  Polynomial g = gcd(den_, other.den_);
  Polynomial bg = divide_exact(den_, g);
  Polynomial dg = divide_exact(other.den_, g);
  num_ = num_ * dg + other.num_ * bg;
  den_ = den_ * dg;
  canonicalize();
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) { return *this += -other; }

ScalarField& ScalarField::operator*=(const ScalarField& other) {
  require_same_chart(chart_, other.chart_);
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = other;
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ = num_ * other.num_;
    return *this;
  }
  // Cross-cancel before multiplying to keep the operands small.
  Polynomial g1 = gcd(num_, other.den_);
  Polynomial g2 = gcd(other.num_, den_);
  num_ = divide_exact(num_, g1) * divide_exact(other.num_, g2);
  den_ = divide_exact(den_, g2) * divide_exact(other.den_, g1);
  canonicalize();
  return *this;
}

ScalarField& ScalarField::operator/=(const ScalarField& other) {
  require_same_chart(chart_, other.chart_);
  if (other.is_zero()) throw Error(ErrorKind::DivisionByZeroField, "division by the zero field");
  ScalarField inv(other.chart_);
  inv.num_ = other.den_;
  inv.den_ = other.num_;
  Rational scale = 1 / inv.den_.leading().coeff;
  inv.num_ *= scale;
  inv.den_ *= scale;
  return *this *= inv;
}

ScalarField operator*(ScalarField a, const Rational& c) {
  a.num_ *= c;
  if (a.num_.is_zero()) a.den_ = Polynomial::constant(1);
  return a;
}

bool operator==(const ScalarField& a, const ScalarField& b) {
  return same_chart(a.chart_, b.chart_) && a.num_ == b.num_ && a.den_ == b.den_;
}

ScalarField ScalarField::pow(int exponent) const {
  if (exponent < 0) {
    return ScalarField(chart_, Rational(1)) / pow(-exponent);
  }
  ScalarField r(chart_);
  r.num_ = num_.pow(static_cast<unsigned>(exponent));
  r.den_ = den_.pow(static_cast<unsigned>(exponent));
  if (exponent == 0) {
    r.num_ = Polynomial::constant(1);
    r.den_ = Polynomial::constant(1);
  }
  return r;
}

ScalarField ScalarField::partial(std::size_t index) const {
  if (index >= chart_->dimension()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "partial index " + std::to_string(index) + " on chart of dimension " +
                    std::to_string(chart_->dimension()));
  }
  if (den_.is_constant()) {
    ScalarField r(chart_);
    r.num_ = num_.derivative(index);
    if (!r.num_.is_zero()) r.num_ *= Rational(1 / den_.leading().coeff);
    return r;
  }
  // (n/d)' = (n' d - n d') / d^2
  Polynomial top = num_.derivative(index) * den_ - num_ * den_.derivative(index);
  return ScalarField(chart_, std::move(top), den_ * den_);
}

Rational ScalarField::eval(std::span<const Rational> point) const {
  if (point.size() != chart_->dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  }
  Rational d = den_.evaluate(point);
  if (d == 0) throw Error(ErrorKind::PoleAtPoint, "denominator " + to_string(den_, chart_->names()) + " vanishes");
  return num_.evaluate(point) / d;
}

double ScalarField::eval(std::span<const double> point) const {
  if (point.size() != chart_->dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  }
  return num_.evaluate(point) / den_.evaluate(point);
}

std::string ScalarField::str() const {
  const auto& names = chart_->names();
  std::string n = to_string(num_, names);
  if (den_.is_constant()) return n;
  std::string d = to_string(den_, names);
  bool num_compound = n.find_first_of("+-", 1) != std::string::npos;
  bool den_compound = d.find_first_of("+-*/") != std::string::npos;
  return (num_compound ? "(" + n + ")" : n) + "/" + (den_compound ? "(" + d + ")" : d);
}

ScalarField partial(const ScalarField& f, std::size_t index) { return f.partial(index); }

}  // namespace rpgeom
