#include "rpgeom/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

const std::vector<std::string> kOperandStart = {"number", "identifier", "'('", "'-'"};

class Parser {
 public:
  Parser(std::string_view text, const ChartPtr& chart) : text_(text), chart_(chart) {}

  ScalarField parse() {
    ScalarField value = expression();
    skip_space();
    if (pos_ != text_.size()) {
      throw SyntaxError(pos_, {"operator", "end of input"},
                        "unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarField expression() {
    ScalarField acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  ScalarField term() {
    ScalarField acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ScalarField rhs = unary();
        if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZeroField, "division by zero at offset " + std::to_string(at));
        acc /= rhs;
      } else {
        return acc;
      }
    }
  }

  ScalarField unary() {
    if (accept('-')) return -unary();
    return power();
  }

  ScalarField power() {
    ScalarField base = primary();
    if (accept('^')) return base.pow(static_cast<int>(exponent()));
    return base;
  }

  unsigned long exponent() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw SyntaxError(pos_, {"nonnegative integer exponent"}, "bad exponent");
    }
    mpz_class base(digits());
    if (accept('^')) {
      unsigned long e = exponent();
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
      base = r;
    }
    if (base > 4096) throw SyntaxError(pos_, {"exponent <= 4096"}, "exponent too large");
    return base.get_ui();
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ScalarField primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, kOperandStart, "unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return ScalarField(chart_, Rational(mpz_class(digits())));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto index = chart_->index_of(name);
      if (!index) {
        throw Error(ErrorKind::UnknownIdentifier,
                    "'" + name + "' at offset " + std::to_string(start) + " is not a chart coordinate");
      }
      return ScalarField::coordinate(chart_, *index);
    }
    if (c == '(') {
      ++pos_;
      ScalarField inner = expression();
      if (!accept(')')) throw SyntaxError(pos_, {"')'"}, "unbalanced parenthesis");
      return inner;
    }
    throw SyntaxError(pos_, kOperandStart, "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ChartPtr& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_scalar(std::string_view text, const ChartPtr& chart) {
  return Parser(text, chart).parse();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  bool ok = i > digits_start;
  if (ok && i < s.size() && s[i] == '/') {
    std::size_t den_start = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    ok = i > den_start;
  }
  if (!ok || i != s.size()) throw SyntaxError(i, {"rational literal"}, "bad rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s);
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZeroField, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace rpgeom
