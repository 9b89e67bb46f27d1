#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "rpgeom/error.hpp"
#include "rpgeom/tensor.hpp"
#include "test_support.hpp"

using namespace rpgeom;
using namespace rpgeom::testing;

namespace {

ChartPtr xyz() { return make_chart({"x", "y", "z"}); }

PForm form2(const ChartPtr& c, std::size_t i, std::size_t j, const ScalarField& f) {
  PForm w(c, 2);
  w.add({i, j}, f);
  return w;
}

// Naive oracle: expand an alternating tensor into all n^p ordered tuples.
template <class T>
std::map<MultiIndex, ScalarField> dense(const T& t) {
  std::map<MultiIndex, ScalarField> out;
  const std::size_t n = t.dimension();
  MultiIndex idx(t.degree(), 0);
  while (true) {
    out.emplace(idx, t.get(idx));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

ScalarField naive_contract_first(const std::map<MultiIndex, ScalarField>& q, const std::vector<ScalarField>& a,
                                 const MultiIndex& rest, const ChartPtr& c) {
  ScalarField acc(c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    MultiIndex full{i};
    full.insert(full.end(), rest.begin(), rest.end());
    acc += a[i] * q.at(full);
  }
  return acc;
}

}  // namespace

TEST_CASE("multi-index tables") {
  CHECK(increasing_indices(3, 2) == std::vector<MultiIndex>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(increasing_indices(4, 0).size() == 1);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t p = 0; p <= n; ++p) CHECK(increasing_indices(n, p).size() == binomial(n, p));
  }
  MultiIndex m{2, 0, 1};
  CHECK(sort_with_sign(m) == 1);
  CHECK(m == MultiIndex{0, 1, 2});
  MultiIndex m2{1, 0};
  CHECK(sort_with_sign(m2) == -1);
  MultiIndex m3{1, 2, 1};
  CHECK(sort_with_sign(m3) == 0);
}

TEST_CASE("wedge examples") {
  auto c = xyz();
  auto dx = to_pform(OneForm::coordinate(c, 0));
  auto dy = to_pform(OneForm::coordinate(c, 1));
  auto dz = to_pform(OneForm::coordinate(c, 2));
  auto w = wedge(dx, dy);
  CHECK(w.get({0, 1}) == sf("1", c));
  CHECK(w.get({1, 0}) == sf("-1", c));
  CHECK(w.get({0, 2}).is_zero());
  CHECK(w.get({1, 2}).is_zero());
  CHECK(wedge(dx, dx).is_zero());

  auto lhs = wedge(sf("x", c) * dx, sf("y", c) * dy + dz);
  auto rhs = form2(c, 0, 1, sf("x*y", c)) + form2(c, 0, 2, sf("x", c));
  CHECK(lhs == rhs);
  CHECK(wedge(dy, dx) == -wedge(dx, dy));
  CHECK_THROWS_AS(wedge(w, w), Error);
}

TEST_CASE("interior product examples") {
  auto c = xyz();
  auto dxdz = form2(c, 0, 2, sf("1", c));
  CHECK(interior(VectorField::coordinate(c, 1), dxdz).is_zero());
  CHECK(to_one_form(interior(VectorField::coordinate(c, 0), dxdz)) == OneForm::coordinate(c, 2));

  PVector q(c, 2);
  q.set({0, 1}, sf("1", c));
  q.set({1, 2}, sf("z", c));
  auto r = to_vector_field(interior(OneForm::coordinate(c, 2), q));
  CHECK(r == sf("-z", c) * VectorField::coordinate(c, 1));

  CHECK_THROWS_AS(interior(VectorField::coordinate(c, 0), to_pform(sf("x", c))), Error);
  try {
    interior(OneForm::coordinate(c, 0), to_pvector(sf("x", c)));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeUnderflow);
  }
}

TEST_CASE("interior product agrees with naive dense contraction") {
  std::mt19937_64 rng(11);
  auto c = xyz();
  for (int trial = 0; trial < 10; ++trial) {
    for (std::size_t p = 1; p <= 3; ++p) {
      auto q = random_alternating<PVector>(rng, c, p, 1);
      auto a = random_one_form(rng, c, 1);
      auto fast = interior(a, q);
      auto d = dense(q);
      for (const auto& rest : increasing_indices(3, p - 1)) {
        CHECK(fast.get(rest) == naive_contract_first(d, a.components(), rest, c));
      }
    }
  }
}

TEST_CASE("exterior derivative examples") {
  auto c = xyz();
  auto w = to_pform(sf("x", c) * OneForm::coordinate(c, 1));
  CHECK(exterior_d(w) == form2(c, 0, 1, sf("1", c)));
  CHECK(exterior_d(to_pform(sf("z", c) * OneForm::coordinate(c, 2))).is_zero());
  CHECK(to_one_form(exterior_d(to_pform(sf("1+z^2", c)))) == sf("2*z", c) * OneForm::coordinate(c, 2));
  PForm top(c, 3);
  CHECK_THROWS_AS(exterior_d(top), Error);
}

TEST_CASE("lie bracket examples and commutator oracle") {
  auto c = xyz();
  auto dx = VectorField::coordinate(c, 0);
  auto dy = VectorField::coordinate(c, 1);
  auto dz = VectorField::coordinate(c, 2);
  CHECK(lie_bracket(dx, dy).is_zero());
  CHECK(lie_bracket(sf("x", c) * dy, sf("y", c) * dx) == sf("x", c) * dx - sf("y", c) * dy);
  CHECK(lie_bracket(dz, sf("1+z^2", c) * dy) == sf("2*z", c) * dy);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_vector_field(rng, c);
    auto y = random_vector_field(rng, c);
    auto f = random_field(rng, c);
    CHECK(lie_bracket(x, y).apply(f) == x.apply(y.apply(f)) - y.apply(x.apply(f)));
  }
}

TEST_CASE("lie derivative examples") {
  auto c = xyz();
  auto dy = OneForm::coordinate(c, 1);
  CHECK(lie_derivative(VectorField::coordinate(c, 1), dy).is_zero());
  CHECK(lie_derivative(sf("1+z^2", c) * VectorField::coordinate(c, 1), dy) == sf("2*z", c) * OneForm::coordinate(c, 2));

  PVector pi(c, 2);
  pi.set({0, 1}, sf("1+z^2", c));
  PVector expected(c, 2);
  expected.set({0, 1}, sf("2*z", c));
  CHECK(lie_derivative(VectorField::coordinate(c, 2), pi) == expected);
}

TEST_CASE("bivector lie derivative matches the Leibniz definition on coordinate forms") {
  std::mt19937_64 rng(23);
  auto c = xyz();
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_vector_field(rng, c);
    auto q = random_alternating<PVector>(rng, c, 2);
    auto lq = lie_derivative(x, q);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        auto a = OneForm::coordinate(c, i);
        auto b = OneForm::coordinate(c, j);
        ScalarField expect = x.apply(evaluate(q, {a, b})) - evaluate(q, {lie_derivative(x, a), b}) -
                             evaluate(q, {a, lie_derivative(x, b)});
        CHECK(evaluate(lq, {a, b}) == expect);
      }
    }
  }
}

TEST_CASE("d squared vanishes") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 3u, 4u}) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
    auto c = make_chart(names);
    for (std::size_t p = 0; p + 2 <= n; ++p) {
      for (int trial = 0; trial < 3; ++trial) {
        auto w = random_alternating<PForm>(rng, c, p, 3);
        CHECK(exterior_d(exterior_d(w)).is_zero());
      }
    }
  }
}

TEST_CASE("jacobi identity for vector fields") {
  std::mt19937_64 rng(8);
  auto c = xyz();
  for (int trial = 0; trial < 8; ++trial) {
    auto x = random_vector_field(rng, c);
    auto y = random_vector_field(rng, c);
    auto z = random_vector_field(rng, c);
    auto sum = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y));
    CHECK(sum.is_zero());
  }
}

TEST_CASE("interior product is an antiderivation") {
  std::mt19937_64 rng(19);
  auto c = make_chart({"a", "b", "c", "d"});
  for (int trial = 0; trial < 6; ++trial) {
    for (std::size_t p = 1; p <= 2; ++p) {
      auto x = random_vector_field(rng, c, 1);
      auto w = random_alternating<PForm>(rng, c, p, 1);
      auto eta = random_alternating<PForm>(rng, c, 2, 1);
      auto lhs = interior(x, wedge(w, eta));
      auto rhs = wedge(interior(x, w), eta);
      auto second = wedge(w, interior(x, eta));
      if (p % 2 == 0) {
        rhs += second;
      } else {
        rhs -= second;
      }
      CHECK(lhs == rhs);
    }
  }
}

namespace {

// Float oracle for the Lie derivative: integrate the flow of X together with
// its variational equation, pull the form back, and difference in time.
struct FlowOracle {
  VectorField x;
  std::vector<std::vector<ScalarField>> jac;  // jac[i][j] = d X^i / d x^j

  explicit FlowOracle(VectorField v) : x(std::move(v)) {
    const std::size_t n = x.dimension();
    jac.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) jac[i].push_back(x[i].partial(j));
    }
  }

  using State = std::vector<double>;  // point then row-major Jacobian of the flow

  State rhs(const State& s) const {
    const std::size_t n = x.dimension();
    std::vector<double> pt(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    State out(s.size(), 0.0);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = x[i].eval(std::span<const double>(pt));
      for (std::size_t j = 0; j < n; ++j) a[i][j] = jac[i][j].eval(std::span<const double>(pt));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * s[n + k * n + j];
        out[n + i * n + j] = acc;
      }
    }
    return out;
  }

  State flow(const std::vector<double>& p, double t) const {
    const std::size_t n = x.dimension();
    State s(n + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = p[i];
      s[n + i * n + i] = 1.0;
    }
    const int steps = 8;
    const double h = t / steps;
    auto axpy = [](const State& a, const State& b, double k) {
      State r = a;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += k * b[i];
      return r;
    };
    for (int k = 0; k < steps; ++k) {
      State k1 = rhs(s);
      State k2 = rhs(axpy(s, k1, h / 2));
      State k3 = rhs(axpy(s, k2, h / 2));
      State k4 = rhs(axpy(s, k3, h));
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return s;
  }

  // Components of the pulled-back form at p, indexed like w.indices().
  std::vector<double> pullback(const PForm& w, const std::vector<double>& p, double t) const {
    const std::size_t n = x.dimension();
    State s = flow(p, t);
    std::vector<double> q(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    auto m = [&](std::size_t i, std::size_t j) { return s[n + i * n + j]; };
    const auto& idx = w.indices();
    std::vector<double> out(idx.size(), 0.0);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      double acc = 0;
      for (std::size_t b = 0; b < idx.size(); ++b) {
        double wb = w.at(b).eval(std::span<const double>(q));
        double minor = 1.0;
        if (w.degree() == 1) {
          minor = m(idx[b][0], idx[a][0]);
        } else if (w.degree() == 2) {
          minor = m(idx[b][0], idx[a][0]) * m(idx[b][1], idx[a][1]) - m(idx[b][1], idx[a][0]) * m(idx[b][0], idx[a][1]);
        }
        acc += wb * minor;
      }
      out[a] = acc;
    }
    return out;
  }
};

}  // namespace

TEST_CASE("Cartan formula agrees with flow transport") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t n : {2u, 3u}) {
    auto c = n == 2 ? make_chart({"x", "y"}) : xyz();
    for (std::size_t p = 0; p <= 2; ++p) {
      auto x = random_vector_field(rng, c, 2);
      auto w = random_alternating<PForm>(rng, c, p, 2);
      auto lw = lie_derivative(x, w);
      FlowOracle oracle(x);
      for (int k = 0; k < 10; ++k) {
        std::vector<double> pt;
        for (std::size_t i = 0; i < n; ++i) pt.push_back(unit(rng));
        const double h = 1e-4;
        auto plus = oracle.pullback(w, pt, h);
        auto minus = oracle.pullback(w, pt, -h);
        for (std::size_t a = 0; a < lw.size(); ++a) {
          double numeric = (plus[a] - minus[a]) / (2 * h);
          double exact = lw.at(a).eval(std::span<const double>(pt));
          CHECK(std::abs(numeric - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
      }
    }
  }
}

TEST_CASE("printing") {
  auto c = xyz();
  CHECK(OneForm::differential(sf("x*y", c)).str() == "y*dx+x*dy");
  CHECK((sf("1+z^2", c) * VectorField::coordinate(c, 1)).str() == "(1+z^2)*d/dy");
  CHECK(form2(c, 0, 1, sf("1", c)).str() == "dx^dy");
  CHECK(to_pform(sf("x", c)).str() == "x");
}
