#include "rpgeom/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "rpgeom/error.hpp"

namespace rpgeom {

Monomial Monomial::variable(std::size_t index, unsigned power) {
  if (index >= kMaxVars) {
    throw Error(ErrorKind::IndexOutOfRange, "variable index " + std::to_string(index));
  }
  Monomial m;
  m.exp_[index] = static_cast<std::uint16_t>(power);
  m.degree_ = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    m.exp_[i] = static_cast<std::uint16_t>(exp_[i] + other.exp_[i]);
  }
  m.degree_ = degree_ + other.degree_;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

Monomial Monomial::cofactor(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    m.exp_[i] = static_cast<std::uint16_t>(other.exp_[i] - exp_[i]);
  }
  m.degree_ = other.degree_ - degree_;
  return m;
}

Monomial Monomial::with_exponent(std::size_t index, unsigned power) const {
  Monomial m = *this;
  m.degree_ = m.degree_ - m.exp_[index] + power;
  m.exp_[index] = static_cast<std::uint16_t>(power);
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.exp_[i] != b.exp_[i]) return a.exp_[i] <=> b.exp_[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(std::size_t index) {
  return term(Monomial::variable(index), 1);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.back().mono.is_one() ? terms_.back().coeff : Rational(0);
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

unsigned Polynomial::min_total_degree() const {
  return terms_.empty() ? 0 : terms_.back().mono.degree();
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

int Polynomial::max_variable() const {
  int v = -1;
  for (const auto& t : terms_) {
    for (int i = static_cast<int>(kMaxVars) - 1; i > v; --i) {
      if (t.mono[static_cast<std::size_t>(i)] > 0) {
        v = i;
        break;
      }
    }
  }
  return v;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

// Merge two descending term lists, scaling the second by `sign`.
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a,
                                          const std::vector<Polynomial::Term>& b, int sign) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  terms_ = merge_terms(terms_, other.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  if (a.is_zero() || b.is_zero()) return p;
  if (a.is_constant()) return b * a.terms_[0].coeff;
  if (b.is_constant()) return a * b.terms_[0].coeff;
  p.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) p.terms_.push_back({s.mono * t.mono, s.coeff * t.coeff});
  }
  p.canonicalize();
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial p;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    p.terms_.push_back({t.mono.with_exponent(var, e - 1), t.coeff * e});
  }
  p.canonicalize();
  return p;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size() && i < kMaxVars; ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
  Polynomial p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    for (unsigned k = 0; k < t.mono[var]; ++k) c *= value;
    p.terms_.push_back({t.mono.with_exponent(var, 0), std::move(c)});
  }
  p.canonicalize();
  return p;
}

double Polynomial::evaluate(std::span<const double> point) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < point.size() && i < kMaxVars; ++i) {
      if (t.mono[i] > 0) v *= std::pow(point[i], static_cast<int>(t.mono[i]));
    }
    sum += v;
  }
  return sum;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 1;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<Polynomial> coeffs(degree_in(var) + 1);
  for (const auto& t : terms_) {
    coeffs[t.mono[var]].terms_.push_back({t.mono.with_exponent(var, 0), t.coeff});
  }
  for (auto& c : coeffs) c.canonicalize();
  return coeffs;
}

Polynomial Polynomial::from_coefficients(std::size_t var, const std::vector<Polynomial>& coeffs) {
  Polynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms_) {
      p.terms_.push_back({t.mono * Monomial::variable(var, static_cast<unsigned>(k)), t.coeff});
    }
  }
  p.canonicalize();
  return p;
}

// ---------------------------------------------------------------------------

namespace {

Polynomial times_term(const Polynomial& p, const Monomial& m, const Rational& c) {
  Polynomial out;
  for (const auto& t : p.terms()) out += Polynomial::term(t.mono * m, t.coeff * c);
  return out;
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading().coeff;
  return p * inv;
}

Polynomial scalar_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Polynomial q = p * Rational(1 / p.content());
  return q;
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Pseudo-remainder of a by b viewed as univariate polynomials in var.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lcb = b.coefficients_in(var).back();
  while (!a.is_zero()) {
    const unsigned da = a.degree_in(var);
    if (da < db) break;
    const Polynomial lca = a.coefficients_in(var).back();
    Polynomial shift = lca * Polynomial::term(Monomial::variable(var, da - db), 1);
    a = lcb * a - shift * b;
    a = scalar_primitive(a);
  }
  return a;
}

mpz_class max_norm(const Polynomial& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.coeff.get_num());
    if (a > m) m = a;
  }
  return m;
}

mpz_class symmetric_mod(const mpz_class& c, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

// Heuristic gcd of integer-coefficient polynomials: evaluate the top variable
// at a large integer, recurse, then rebuild by symmetric xi-adic expansion and
// accept the candidate only if it divides both inputs.
std::optional<Polynomial> heuristic_gcd(const Polynomial& a, const Polynomial& b, int depth = 0) {
  if (a.is_constant() && b.is_constant()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.constant_value().get_num_mpz_t(), b.constant_value().get_num_mpz_t());
    return Polynomial::constant(Rational(g));
  }
  if (a.is_zero() || b.is_zero() || depth > 8) return std::nullopt;
  const Rational ca = a.content();
  const Rational cb = b.content();
  if (ca != 1 || cb != 1) {
    mpz_class ic;
    mpz_gcd(ic.get_mpz_t(), ca.get_num_mpz_t(), cb.get_num_mpz_t());
    auto g = heuristic_gcd(a * Rational(1 / ca), b * Rational(1 / cb), depth);
    if (!g) return std::nullopt;
    return *g * Rational(ic);
  }
  const auto var = static_cast<std::size_t>(std::max(a.max_variable(), b.max_variable()));
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 400000) return std::nullopt;
    Polynomial ea = a.substitute(var, Rational(xi));
    Polynomial eb = b.substitute(var, Rational(xi));
    if (!ea.is_zero() && !eb.is_zero()) {
      auto g = heuristic_gcd(ea, eb, depth + 1);
      if (g) {
        Polynomial candidate;
        Polynomial rest = *g;
        unsigned power = 0;
        while (!rest.is_zero()) {
          Polynomial digit;
          for (const auto& t : rest.terms()) {
            mpz_class d = symmetric_mod(t.coeff.get_num(), xi);
            if (d != 0) digit += Polynomial::term(t.mono, Rational(d));
          }
          candidate += digit * Polynomial::term(Monomial::variable(var, power), 1);
          rest = (rest - digit) * Rational(1, xi);
          ++power;
        }
        if (!candidate.is_zero()) {
          candidate = candidate * Rational(1 / candidate.content());
          auto qa = try_divide(a, candidate);
          if (qa) {
            auto qb = try_divide(b, candidate);
            if (qb) return candidate;
          }
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroField, "polynomial division by zero");
  if (b.is_constant()) return a * Rational(1 / b.leading().coeff);
  Polynomial quotient;
  Polynomial rest = a;
  const auto& lead = b.leading();
  while (!rest.is_zero()) {
    const auto& lt = rest.leading();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    Monomial m = lead.mono.cofactor(lt.mono);
    Rational c = lt.coeff / lead.coeff;
    quotient += Polynomial::term(m, c);
    rest -= times_term(b, m, c);
  }
  return quotient;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error(ErrorKind::InternalInconsistency, "inexact polynomial division");
  return std::move(*q);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(1);
  if (a.terms().size() >= b.terms().size()) {
    if (try_divide(a, b)) return monic(b);
  } else if (try_divide(b, a)) {
    return monic(a);
  }

  if (auto h = heuristic_gcd(scalar_primitive(a), scalar_primitive(b))) return monic(*h);

  const auto var = static_cast<std::size_t>(std::max(a.max_variable(), b.max_variable()));
  if (!a.depends_on(var)) return gcd(a, content_in(b, var));
  if (!b.depends_on(var)) return gcd(content_in(a, var), b);

  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  Polynomial p = scalar_primitive(divide_exact(a, ca));
  Polynomial q = scalar_primitive(divide_exact(b, cb));
  const Polynomial c = gcd(ca, cb);
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);

  while (true) {
    Polynomial r = pseudo_remainder(p, q, var);
    if (r.is_zero()) break;
    if (!r.depends_on(var)) {
      q = Polynomial::constant(1);
      break;
    }
    p = std::move(q);
    q = scalar_primitive(divide_exact(r, content_in(r, var)));
  }
  return monic(c * q);
}

// ---------------------------------------------------------------------------

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::string coeff = to_string(it->coeff);
    std::ostringstream factors;
    bool any = false;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = it->mono[i];
      if (e == 0) continue;
      if (any) factors << '*';
      factors << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e > 1) factors << '^' << e;
      any = true;
    }
    std::string piece;
    if (!any) {
      piece = coeff;
    } else if (it->coeff == 1) {
      piece = factors.str();
    } else if (it->coeff == -1) {
      piece = "-" + factors.str();
    } else {
      piece = coeff + "*" + factors.str();
    }
    if (!first && piece[0] != '-') os << '+';
    os << piece;
    first = false;
  }
  return os.str();
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out{Monomial{}};
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<Monomial> next;
    for (const auto& m : out) {
      for (unsigned e = 0; m.degree() + e <= degree; ++e) next.push_back(m.with_exponent(v, e));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rpgeom
