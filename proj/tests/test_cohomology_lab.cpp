#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "rpgeom/cohomology.hpp"
#include "rpgeom/error.hpp"
#include "naive_oracle.hpp"
#include "test_support.hpp"

using namespace rpgeom;
using namespace rpgeom::testing;

namespace {

OneForm dx(const ChartPtr& c, std::size_t i) { return OneForm::coordinate(c, i); }
VectorField dd(const ChartPtr& c, std::size_t i) { return VectorField::coordinate(c, i); }

RationalPoint pt(std::initializer_list<int> v) {
  RationalPoint p;
  for (int x : v) p.emplace_back(x);
  return p;
}

CoMetric warped(const ChartPtr& c) { return CoMetric(diagonal(c, {"1", "1", "1/(1+z^2)"})); }

struct Example {
  std::string name;
  Bivector pi;
  CoMetric g;
};

std::vector<Example> rp_examples() {
  auto c3 = space();
  return {{"flat plane", flat_plane(), CoMetric::identity(plane())},
          {"flat space", flat_space(), CoMetric::identity(c3)},
          {"flat space warped", flat_space(), warped(c3)}};
}

FoliationSplit split_of(const Bivector& pi, const CoMetric& g) { return split_cotangent(pi, g, 2, {}); }

PVector pv(const ChartPtr& c, std::size_t p, std::vector<std::pair<MultiIndex, std::string>> entries) {
  PVector q(c, p);
  for (auto& [idx, e] : entries) q.set(idx, sf(e, c));
  return q;
}

}  // namespace

TEST_CASE("graded basis layout") {
  GradedBasis b(3, 3, 1, 2);
  CHECK(b.size() == 3 * 10);
  CHECK(b.monomial_at(0).is_one());
  CHECK(b.tuple_at(1) == MultiIndex{1});
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b.monomial_at(i - 1).degree() <= b.monomial_at(i).degree());
  CHECK(*b.index_of(b.monomial_at(17), 2) == 17 / 3 * 3 + 2);
  CHECK_FALSE(b.index_of(Monomial::variable(0, 3), 0).has_value());
  CHECK(GradedBasis(2, 2, 2, 4).size() == 15);
}

TEST_CASE("split multivector examples") {
  auto c = space();
  auto s = split_of(flat_space(), CoMetric::identity(c));
  auto q = pv(c, 2, {{{0, 1}, "1"}, {{1, 2}, "z"}});
  auto [q0, q1] = split_multivector(q, s);
  CHECK(q0 == pv(c, 2, {{{0, 1}, "1"}}));
  CHECK(q1 == pv(c, 2, {{{1, 2}, "z"}}));
  auto f = split_multivector(to_pvector(sf("x*y+1", c) * dd(c, 2)), s);
  CHECK(f.first.is_zero());
  CHECK(f.second == to_pvector(sf("x*y+1", c) * dd(c, 2)));
  auto e = split_multivector(to_pvector(dd(c, 0)), s);
  CHECK(e.first == to_pvector(dd(c, 0)));
  CHECK(e.second.is_zero());
}

TEST_CASE("split projectors are complementary and idempotent") {
  std::mt19937_64 rng(61);
  std::vector<std::pair<Bivector, CoMetric>> cases{{flat_space(), CoMetric::identity(space())},
                                                  {flat_space(), warped(space())},
                                                  {scaled_space(), CoMetric::identity(space())}};
  for (const auto& [pi, g] : cases) {
    auto s = split_of(pi, g);
    for (std::size_t p = 1; p <= 3; ++p) {
      auto q = random_alternating<PVector>(rng, pi.chart(), p);
      auto [q0, q1] = split_multivector(q, s);
      CHECK(q0 + q1 == q);
      for (const auto& k : s.kernel_frame) CHECK(interior(k, q0).is_zero());
      if (p <= s.rank) {
        std::vector<OneForm> args(p, s.perp_frame[0]);
        if (p == 2) args[1] = s.perp_frame[1];
        CHECK(evaluate(q1, args).is_zero());
      }
      auto again = split_multivector(q0, s);
      CHECK(again.first == q0);
      CHECK(again.second.is_zero());
      CHECK(split_multivector(q1, s).first.is_zero());
    }
  }
}

TEST_CASE("d_pi preserves the splitting on riemann poisson examples") {
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto s = split_of(ex.pi, ex.g);
    for (std::size_t p = 0; p <= 2; ++p) {
      for (unsigned d = 0; d <= 2; ++d) {
        auto r = dpi_preserves_split(ex.pi, s, p, d);
        CHECK(r.preserved0);
        CHECK(r.preserved1);
        CHECK(r.witness.empty());
      }
    }
  }
  auto c = space();
  auto s = split_of(scaled_space(), CoMetric::identity(c));
  auto r = dpi_preserves_split(scaled_space(), s, 1, 1);
  CHECK_FALSE(r.preserved1);
  CHECK_FALSE(r.witness.empty());
  // d_pi(d/dz) = -L_{d/dz} pi = -2z d/dx^d/dy lies in X^2_0.
  auto img = d_pi(scaled_space(), to_pvector(dd(c, 2)));
  CHECK(img == pv(c, 2, {{{0, 1}, "-2*z"}}));
}

TEST_CASE("splitting commutes with d_pi") {
  std::mt19937_64 rng(67);
  for (const auto& ex : rp_examples()) {
    auto s = split_of(ex.pi, ex.g);
    for (std::size_t p = 0; p + 1 <= ex.pi.dimension(); ++p) {
      auto q = random_alternating<PVector>(rng, ex.pi.chart(), p);
      auto [q0, q1] = split_multivector(q, s);
      auto [d0, d1] = split_multivector(d_pi(ex.pi, q), s);
      CHECK(d0 == d_pi(ex.pi, q0));
      CHECK(d1 == d_pi(ex.pi, q1));
    }
  }
}

TEST_CASE("pushforward of leafwise forms") {
  auto c = space();
  auto pi = flat_space();
  auto s = split_of(pi, CoMetric::identity(c));
  // Leafwise 1-form with w(d/dx) = 1, w(d/dy) = 0; ts_frame = (d/dy, -d/dx).
  LeafwiseForm w(c, 2, 1);
  w.at(1) = sf("-1", c);
  CHECK(evaluate(s, w, {dd(c, 0)}) == sf("1", c));
  auto v = to_vector_field(pi_pushforward(pi, s, w));
  CHECK(v[2].is_zero());
  CHECK_FALSE(v.is_zero());
  CHECK(pi_pushforward(pi, s, LeafwiseForm(c, 2, 1)).is_zero());
  // The leafwise symplectic form pushes forward to pi.
  CHECK(pi_pushforward(pi, s, leafwise_symplectic(pi, s)) == pi.as_pvector());
  auto ps = scaled_space();
  auto ss = split_of(ps, CoMetric::identity(c));
  CHECK(pi_pushforward(ps, ss, leafwise_symplectic(ps, ss)) == ps.as_pvector());
}

TEST_CASE("naturality of the pushforward") {
  std::mt19937_64 rng(71);
  std::vector<std::pair<Bivector, CoMetric>> cases{{flat_space(), CoMetric::identity(space())},
                                                  {scaled_space(), CoMetric::identity(space())},
                                                  {flat_plane(), CoMetric::identity(plane())}};
  for (const auto& [pi, g] : cases) {
    auto s = split_of(pi, g);
    for (int t = 0; t < 10; ++t) {
      const std::size_t p = t % 2;
      LeafwiseForm w(pi.chart(), s.rank, p);
      for (std::size_t k = 0; k < w.size(); ++k) w.at(k) = random_polynomial_field(rng, pi.chart(), 2);
      auto q = pi_pushforward(pi, s, w);
      CHECK(naturality_residual(pi, s, w).is_zero());
      for (const auto& k : s.kernel_frame) {
        if (p > 0) CHECK(interior(k, q).is_zero());
      }
    }
  }
  // so(3)* away from the origin, with rational frames.
  auto so = so3();
  auto s = split_cotangent(so, CoMetric::identity(space()), 2, {pt({1, 0, 0})});
  LeafwiseForm f(space(), 2, 0);
  f.at(0) = sf("x*y", space());
  CHECK(naturality_residual(so, s, f).is_zero());
}

TEST_CASE("pushforward is injective on the window") {
  auto c = space();
  auto pi = flat_space();
  auto s = split_of(pi, CoMetric::identity(c));
  for (std::size_t p = 0; p <= 2; ++p) {
    GradedBasis in(3, 2, p, 2);
    GradedBasis out(3, 3, p, 2);
    RationalMatrix m(out.size(), in.size());
    for (std::size_t col = 0; col < in.size(); ++col) {
      LeafwiseForm w(c, 2, p);
      const auto& table = w.indices();
      auto pos = std::lower_bound(table.begin(), table.end(), in.tuple_at(col)) - table.begin();
      w.at(pos) = ScalarField(c, Polynomial::term(in.monomial_at(col), 1));
      auto q = pi_pushforward(pi, s, w);
      for (std::size_t k = 0; k < q.size(); ++k) {
        for (const auto& t : q.at(k).numerator().terms()) m(*out.index_of(t.mono, k), col) = t.coeff;
      }
    }
    CHECK(rank(m) == in.size());
  }
}

TEST_CASE("sharp of basic forms") {
  auto c = space();
  auto pi = flat_space();
  auto g = CoMetric::identity(c);
  auto s = split_of(pi, g);
  auto zdz = to_pform(sf("z", c) * dx(c, 2));
  CHECK(sharp_basic(g, s, zdz) == to_pvector(sf("z", c) * dd(c, 2)));
  CHECK(sharp_basic_residual(pi, g, s, zdz).is_zero());
  CHECK(d_pi(pi, to_pvector(sf("z^2", c) * dd(c, 2))).is_zero());

  auto gw = warped(c);
  auto sw = split_of(pi, gw);
  CHECK(sharp_basic(gw, sw, to_pform(dx(c, 2))) == to_pvector(sf("1/(1+z^2)", c) * dd(c, 2)));
  CHECK(sharp_basic_residual(pi, gw, sw, to_pform(dx(c, 2))).is_zero());

  try {
    sharp_basic(g, s, to_pform(sf("x", c) * dx(c, 2)));
    FAIL("expected NotBasic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotBasic);
  }
  CHECK_THROWS_AS(sharp_basic(g, s, to_pform(dx(c, 0))), Error);
}

TEST_CASE("sharp of basic forms is d_pi closed") {
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto s = split_of(ex.pi, ex.g);
    for (std::size_t p = 0; p <= 1; ++p) {
      auto fam = basic_form_family(ex.pi, s, p, 3);
      if (p == 1) CHECK(fam.size() == s.kernel_frame.size() * 4);
      for (const auto& w : fam) CHECK(sharp_basic_residual(ex.pi, ex.g, s, w).is_zero());
    }
  }
}

TEST_CASE("truncated betti numbers") {
  auto p2 = flat_plane();
  CHECK(truncated_betti(p2, 0, 4).betti == 1);
  CHECK(truncated_betti(p2, 1, 4).betti == 0);
  CHECK(truncated_betti(p2, 2, 4).betti == 0);

  auto p3 = flat_space();
  auto b1 = truncated_betti(p3, 1, 3);
  CHECK(b1.betti == 4);
  CHECK(b1.d_prev == 4);
  CHECK(b1.graded);
  CHECK(b1.describe().find("b1(window d=3) = 4") == 0);

  // z^k d/dz are closed and independent modulo exact ones.
  auto c = p3.chart();
  GradedBasis w1(3, 3, 1, 3);
  RationalMatrix ex = assemble_dpi_matrix(p3, 0, 4, 3);
  RationalMatrix reps(w1.size(), 4);
  for (unsigned k = 0; k <= 3; ++k) {
    auto v = sf("z^" + std::to_string(k), c) * dd(c, 2);
    CHECK(d_pi(p3, to_pvector(v)).is_zero());
    reps(*w1.index_of(Monomial::variable(2, k), 2), k) = 1;
  }
  CHECK(rank(ex.hconcat(reps)) == rank(ex) + 4);
}

TEST_CASE("betti numbers match a naive dense solver") {
  auto c = plane();
  std::vector<Bivector> corpus{flat_plane(), make_bivector(c, {{0, 1, "x"}}), make_bivector(c, {{0, 1, "x^2+y^2"}}),
                               make_bivector(c, {{0, 1, "1+x"}})};
  for (const auto& pi : corpus) {
    auto cx = lichnerowicz_complex(pi);
    for (std::size_t p = 0; p <= 2; ++p) {
      for (unsigned d = 0; d <= 2; ++d) {
        auto b = truncated_betti(cx, p, d);
        INFO(pi.as_pvector().str(), " p=", p, " d=", d);
        CHECK(b.betti == naive_betti(pi, p, d, b.d_prev));
      }
    }
  }
}

TEST_CASE("naive coordinate differential agrees with d_pi") {
  std::mt19937_64 rng(71);
  for (const auto& pi : {flat_plane(), flat_space(), scaled_space(), so3(), broken()}) {
    for (std::size_t p = 0; p < pi.dimension(); ++p) {
      for (int t = 0; t < 3; ++t) {
        auto q = random_alternating<PVector>(rng, pi.chart(), p);
        CHECK(naive_d(pi, q) == d_pi(pi, q));
      }
    }
  }
}

TEST_CASE("betti numbers in three variables match the naive solver") {
  for (const auto& pi : {flat_space(), scaled_space(), so3()}) {
    auto cx = lichnerowicz_complex(pi);
    for (std::size_t p = 0; p <= 3; ++p) {
      for (unsigned d = 0; d <= 2; ++d) {
        auto b = truncated_betti(cx, p, d);
        INFO(pi.as_pvector().str(), " p=", p, " d=", d);
        CHECK(b.betti == naive_betti(pi, p, d, b.d_prev));
      }
    }
  }
}

TEST_CASE("d_pi squares to zero as matrices") {
  std::vector<Bivector> poisson{flat_plane(), flat_space(), scaled_space(), so3()};
  for (const auto& pi : poisson) {
    auto cx = lichnerowicz_complex(pi);
    for (std::size_t p = 0; p <= 2 && p + 2 <= pi.dimension(); ++p) {
      for (unsigned d = 0; d <= 3; ++d) {
        const unsigned mid = std::max(0, static_cast<int>(d) + cx.shift_max);
        const unsigned top = std::max(0, static_cast<int>(mid) + cx.shift_max);
        auto a = assemble(cx, p, d, mid);
        auto b = assemble(cx, p + 1, mid, top);
        CHECK((b * a).is_zero());
      }
    }
  }
  auto br = broken();
  auto cx = lichnerowicz_complex(br);
  auto a = assemble(cx, 0, 1, 1);
  auto b = assemble(cx, 1, 1, 1);
  CHECK_FALSE((b * a).is_zero());
  // Witness: d_pi d_pi z.
  CHECK_FALSE(d_pi(br, d_pi(br, to_pvector(sf("z", br.chart())))).is_zero());
}

TEST_CASE("window and polynomial errors") {
  try {
    assemble_dpi_matrix(scaled_space(), 0, 2, 1);
    FAIL("expected WindowTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowTooSmall);
  }
  auto c = space();
  try {
    truncated_betti(make_bivector(c, {{0, 1, "1/(1+z^2)"}}), 1, 2);
    FAIL("expected NonPolynomial");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPolynomial);
  }
}

TEST_CASE("cohomology comparison report") {
  auto c = space();
  {
    auto pi = flat_space();
    auto g = CoMetric::identity(c);
    auto r = cohomology_comparison(pi, g, split_of(pi, g), 1, 3);
    CHECK(r.sharp_closed);
    CHECK(r.pushforward_closed);
    CHECK(r.poisson.betti == 4);
    CHECK(r.basic_count == 4);
    CHECK(r.leafwise.betti == 0);
    CHECK(r.dimensions_agree);
  }
  {
    auto pi = flat_plane();
    auto g = CoMetric::identity(plane());
    auto r = cohomology_comparison(pi, g, split_of(pi, g), 1, 3);
    CHECK(r.poisson.betti == 0);
    CHECK(r.basic_count == 0);
    CHECK(r.leafwise.betti == 0);
    CHECK(r.dimensions_agree);
  }
  {
    auto pi = flat_space();
    auto g = warped(c);
    auto r = cohomology_comparison(pi, g, split_of(pi, g), 1, 2);
    CHECK(r.sharp_closed);
    CHECK(r.pushforward_closed);
    CHECK(r.dimensions_agree);
    auto r0 = cohomology_comparison(pi, g, split_of(pi, g), 0, 2);
    CHECK(r0.sharp_closed);
    CHECK(r0.pushforward_closed);
  }
}
