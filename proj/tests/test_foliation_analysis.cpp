#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rpgeom/error.hpp"
#include "rpgeom/foliation.hpp"
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

ChartPtr four() { return make_chart({"x", "y", "z", "w"}); }

struct Example {
  std::string name;
  Bivector pi;
  CoMetric g;
  std::size_t rank;
  std::vector<RationalPoint> samples;
};

// Regular Riemann Poisson structures.
std::vector<Example> rp_examples() {
  auto c3 = space();
  auto c4 = four();
  FieldMatrix g4 = diagonal(c4, {"1", "1", "1+z^2", "2"});
  g4(2, 3) = sf("w", c4);
  g4(3, 2) = sf("w", c4);
  return {
      {"flat plane", flat_plane(), CoMetric::identity(plane()), 2, {pt({0, 0}), pt({1, -2})}},
      {"flat space", flat_space(), CoMetric::identity(c3), 2, {pt({0, 0, 0}), pt({1, 2, 3})}},
      {"flat space warped", flat_space(), warped(c3), 2, {pt({0, 0, 0}), pt({1, 2, 3})}},
      {"rank two in four", make_bivector(c4, {{0, 1, "1"}}), CoMetric(g4), 2, {pt({0, 0, 0, 0}), pt({1, 1, 1, 1})}},
      {"symplectic four", make_bivector(c4, {{0, 1, "1"}, {2, 3, "1"}}), CoMetric::identity(c4), 4, {pt({0, 0, 0, 0})}},
  };
}

// Regular foliations that are not Riemann Poisson, for structural properties.
std::vector<Example> other_examples() {
  auto c3 = space();
  return {
      {"scaled", scaled_space(), CoMetric::identity(c3), 2, {pt({0, 0, 0}), pt({1, 2, 3})}},
      {"so3 away from origin", so3(), CoMetric::identity(c3), 2, {pt({1, 0, 0}), pt({1, 2, 3})}},
  };
}

std::vector<Example> all_examples() {
  auto v = rp_examples();
  auto o = other_examples();
  v.insert(v.end(), o.begin(), o.end());
  return v;
}

LeafwiseForm random_leafwise(std::mt19937_64& rng, const FoliationSplit& s, const ChartPtr& c, std::size_t p) {
  LeafwiseForm w(c, s.rank, p);
  for (std::size_t k = 0; k < w.size(); ++k) w.at(k) = random_polynomial_field(rng, c, 2);
  return w;
}

}  // namespace

TEST_CASE("cotangent splitting examples") {
  auto pi = flat_space();
  auto c = pi.chart();
  auto s = split_cotangent(pi, CoMetric::identity(c), 2, {pt({0, 0, 0})});
  REQUIRE(s.kernel_frame.size() == 1);
  CHECK(s.kernel_frame[0] == dx(c, 2));
  REQUIRE(s.perp_frame.size() == 2);
  CHECK(s.perp_frame[0] == dx(c, 0));
  CHECK(s.perp_frame[1] == dx(c, 1));
  CHECK(s.ts_frame[0] == dd(c, 1));
  CHECK(s.ts_frame[1] == -dd(c, 0));
  REQUIRE(s.h_frame.size() == 1);
  CHECK(s.h_frame[0] == dd(c, 2));

  auto p2 = flat_plane();
  auto s2 = split_cotangent(p2, CoMetric::identity(p2.chart()), 2, {pt({0, 0})});
  CHECK(s2.kernel_frame.empty());
  CHECK(s2.perp_frame.size() == 2);
}

TEST_CASE("splitting errors") {
  auto c = space();
  try {
    split_cotangent(so3(), CoMetric::identity(c), 2, {pt({0, 0, 0})});
    FAIL("expected RankNotConstant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankNotConstant);
    CHECK(std::string(e.what()).find("(0,0,0)") != std::string::npos);
  }
  try {
    split_cotangent(flat_space(), CoMetric::identity(c), 1, {pt({0, 0, 0})});
    FAIL("expected RankOdd");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankOdd);
  }
  try {
    split_cotangent(flat_space(), CoMetric::identity(c), 0, {});
    FAIL("expected RankNotConstant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankNotConstant);
  }
}

TEST_CASE("frame invariants") {
  for (const auto& ex : all_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    CHECK(s.kernel_frame.size() == ex.pi.dimension() - ex.rank);
    for (const auto& k : s.kernel_frame) {
      CHECK(pi_sharp(ex.pi, k).is_zero());
      for (const auto& p : s.perp_frame) CHECK(ex.g(k, p).is_zero());
    }
    // #(perp) lies in TS.
    for (const auto& p : s.perp_frame) {
      auto back = pi_inverse(s, metric_sharp(ex.g, p));
      CHECK(back.has_value());
    }
    for (const auto& h : s.h_frame) CHECK_FALSE(pi_inverse(s, h).has_value());
    for (std::size_t a = 0; a < s.rank; ++a) {
      auto xi = pi_inverse(s, s.ts_frame[a]);
      REQUIRE(xi);
      CHECK(*xi == s.perp_frame[a]);
    }
  }
}

TEST_CASE("leafwise symplectic form") {
  auto c = space();
  {
    auto pi = flat_space();
    auto s = split_cotangent(pi, CoMetric::identity(c), 2, {pt({0, 0, 0})});
    CHECK(*pi_inverse(s, dd(c, 0)) == -dx(c, 1));
    CHECK(*pi_inverse(s, dd(c, 1)) == dx(c, 0));
    auto w = leafwise_symplectic(pi, s, {pt({0, 0, 0})});
    CHECK(evaluate(s, w, {dd(c, 0), dd(c, 1)}) == sf("1", c));
  }
  {
    auto pi = scaled_space();
    auto s = split_cotangent(pi, CoMetric::identity(c), 2, {pt({0, 0, 0})});
    auto w = leafwise_symplectic(pi, s);
    auto v = evaluate(s, w, {dd(c, 0), dd(c, 1)});
    CHECK(v == sf("1/(1+z^2)", c));
    CHECK(v.eval(std::vector<double>{0.3, -1.0, 1.0}) == doctest::Approx(0.5));
  }
  std::mt19937_64 rng(5);
  for (const auto& ex : all_examples()) {
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    auto w = leafwise_symplectic(ex.pi, s, ex.samples);
    for (int t = 0; t < 3; ++t) {
      VectorField u(ex.pi.chart());
      for (std::size_t a = 0; a < s.rank; ++a) u += random_polynomial_field(rng, ex.pi.chart(), 1) * s.ts_frame[a];
      CHECK(evaluate(s, w, {u, u}).is_zero());
    }
  }
}

TEST_CASE("induced tangent metric examples") {
  auto c = space();
  auto pi = flat_space();
  auto s = split_cotangent(pi, CoMetric::identity(c), 2, {});
  CHECK(induced_tangent_metric(CoMetric::identity(c), s) == FieldMatrix::identity(c, 3));

  auto gw = warped(c);
  auto sw = split_cotangent(pi, gw, 2, {});
  CHECK(induced_tangent_metric(gw, sw) == diagonal(c, {"1", "1", "1+z^2"}));

  // Differs from the inverse cometric once pi is not constant.
  auto ps = scaled_space();
  auto ss = split_cotangent(ps, CoMetric::identity(c), 2, {});
  auto t = induced_tangent_metric(CoMetric::identity(c), ss);
  CHECK(t == diagonal(c, {"1/(1+z^2)^2", "1/(1+z^2)^2", "1"}));
  CHECK_FALSE(t == inverse(FieldMatrix::identity(c, 3)));
}

TEST_CASE("induced tangent metric is positive definite and block orthogonal") {
  for (const auto& ex : all_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    auto t = induced_tangent_metric(ex.g, s);
    CHECK(t.is_symmetric());
    CHECK_FALSE(positive_definite_failure(t, ex.samples).has_value());
    auto e = adapted_frame(s);
    auto b = e.transpose() * t * e;
    for (std::size_t i = 0; i < s.rank; ++i) {
      for (std::size_t j = s.rank; j < ex.pi.dimension(); ++j) CHECK(b(i, j).is_zero());
    }
    // g(#a, #b) = <a, b> on the kernel.
    for (const auto& k1 : s.kernel_frame) {
      for (const auto& k2 : s.kernel_frame) {
        auto u = metric_sharp(ex.g, k1), v = metric_sharp(ex.g, k2);
        ScalarField val(ex.pi.chart());
        for (std::size_t i = 0; i < u.dimension(); ++i) {
          for (std::size_t j = 0; j < v.dimension(); ++j) val += u[i] * t(i, j) * v[j];
        }
        CHECK(val == ex.g(k1, k2));
      }
    }
  }
}

TEST_CASE("leaf connection") {
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    REQUIRE(is_riemann_poisson(ex.pi, ex.g));
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    auto d = levi_civita(ex.pi, ex.g);
    for (const auto& r : parallel_omega_residuals(d, ex.pi, s)) CHECK(r.is_zero());
    // Torsion free on the leaf frame.
    auto nabla = leaf_connection(d, ex.pi, s);
    for (std::size_t a = 0; a < s.rank; ++a) {
      for (std::size_t b = 0; b < s.rank; ++b) {
        CHECK(nabla[a][b] - nabla[b][a] == lie_bracket(s.ts_frame[a], s.ts_frame[b]));
      }
    }
  }
  auto c = space();
  auto s = split_cotangent(flat_space(), warped(c), 2, {});
  auto nabla = leaf_connection(levi_civita(flat_space(), warped(c)), flat_space(), s);
  for (const auto& row : nabla) {
    for (const auto& v : row) CHECK(v.is_zero());
  }
  // Non Riemann Poisson: residuals are only reported.
  auto ps = scaled_space();
  auto ss = split_cotangent(ps, CoMetric::identity(c), 2, {});
  CHECK_NOTHROW(parallel_omega_residuals(levi_civita(ps, CoMetric::identity(c)), ps, ss));
}

TEST_CASE("basic one forms") {
  auto pi = flat_space();
  auto c = pi.chart();
  auto zdz = sf("z", c) * dx(c, 2);
  auto xdz = sf("x", c) * dx(c, 2);
  CHECK(is_basic_by_definition(pi, zdz));
  CHECK(is_basic_by_bracket(pi, zdz));
  CHECK_FALSE(is_basic_by_definition(pi, xdz));
  CHECK_FALSE(is_basic_by_bracket(pi, xdz));
  CHECK(interior(pi_sharp(pi, dx(c, 1)), exterior_d(to_pform(xdz))) == to_pform(-dx(c, 2)));
  CHECK_FALSE(is_basic_by_definition(pi, dx(c, 0)));
  CHECK_FALSE(is_basic_by_bracket(pi, dx(c, 0)));

  std::mt19937_64 rng(17);
  for (const auto& ex : all_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    for (int t = 0; t < 10; ++t) {
      OneForm a = random_one_form(rng, ex.pi.chart(), 1);
      for (const auto& k : s.kernel_frame) a += random_polynomial_field(rng, ex.pi.chart(), 2) * k;
      CHECK(is_basic_by_definition(ex.pi, a) == is_basic_by_bracket(ex.pi, a));
    }
    for (const auto& a : basic_one_form_family(ex.pi, s, 2)) CHECK(is_basic_by_bracket(ex.pi, a));
  }
}

TEST_CASE("foliate vector fields") {
  auto pi = flat_space();
  auto c = pi.chart();
  auto s = split_cotangent(pi, CoMetric::identity(c), 2, {});
  CHECK(is_foliate(dd(c, 2), s));
  CHECK_FALSE(is_foliate(sf("x", c) * dd(c, 2), s));
  CHECK(is_foliate(dd(c, 0), s));
  CHECK(is_foliate(sf("x*y", c) * dd(c, 0), s));
}

TEST_CASE("prop 2.1 predicates") {
  auto pi = flat_space();
  auto c = pi.chart();
  auto g = CoMetric::identity(c);
  auto s = split_cotangent(pi, g, 2, {});
  auto d = levi_civita(pi, g);
  auto all = [](const BasicPredicates& p, bool v) {
    return p.basic == v && p.parallel == v && p.sharp_foliate == v && p.preserves_pi == v;
  };
  CHECK(all(basic_predicates(pi, g, d, s, dx(c, 2)), true));
  CHECK(all(basic_predicates(pi, g, d, s, sf("z", c) * dx(c, 2)), true));
  CHECK(all(basic_predicates(pi, g, d, s, sf("x", c) * dx(c, 2)), false));
  CHECK(is_casimir(pi, g(dx(c, 2), dx(c, 2))));
  CHECK(g(sf("z", c) * dx(c, 2), dx(c, 2)) == sf("z", c));
  CHECK(is_casimir(pi, sf("z", c)));

  std::mt19937_64 rng(23);
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto sp = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    if (sp.kernel_frame.empty()) continue;
    auto dc = levi_civita(ex.pi, ex.g);
    const auto cas = casimir_monomials(ex.pi, 2);
    int basic = 0;
    for (int t = 0; t < 20; ++t) {
      OneForm a(ex.pi.chart());
      for (const auto& k : sp.kernel_frame) {
        // Alternate between Casimir coefficients and arbitrary ones.
        ScalarField f = (t % 2 == 0) ? cas[rng() % cas.size()] * random_rational(rng)
                                     : random_polynomial_field(rng, ex.pi.chart(), 2);
        a += f * k;
      }
      auto p = basic_predicates(ex.pi, ex.g, dc, sp, a);
      CHECK(p.all_agree());
      if (p.basic) ++basic;
    }
    CHECK(basic > 0);
  }
}

TEST_CASE("prop 1.1 checks") {
  auto c = space();
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    auto p = kernel_checks(ex.pi, ex.g, levi_civita(ex.pi, ex.g), s);
    CHECK(p.kernel_image_in_kernel);
    CHECK(p.kernel_direction_flat);
    CHECK(p.perp_closed);
    CHECK(p.witness.empty());
  }
  auto ps = scaled_space();
  auto g = CoMetric::identity(c);
  auto s = split_cotangent(ps, g, 2, {});
  auto d = levi_civita(ps, g);
  auto p = kernel_checks(ps, g, d, s);
  CHECK_FALSE(p.kernel_direction_flat);
  CHECK(covariant_derivative(d, ps, dx(c, 2), dx(c, 0)) == -(sf("z", c) * dx(c, 1)));
  CHECK_FALSE(p.witness.empty());
}

TEST_CASE("bracket against lie derivative of pi") {
  auto ps = scaled_space();
  auto c = ps.chart();
  CHECK(koszul_bracket_fast(ps, dx(c, 0), dx(c, 1))(dd(c, 2)) == sf("2*z", c));
  CHECK(bracket_invariance_residual(ps, dx(c, 0), dx(c, 1), dd(c, 2)).is_zero());
  // Without a(X) = b(X) = 0 the two sides differ.
  CHECK(bracket_invariance_residual(flat_space(), dx(c, 0), dx(c, 1), sf("x", c) * dd(c, 0)) == sf("1", c));

  std::mt19937_64 rng(29);
  std::vector<Bivector> corpus{flat_space(), scaled_space(), so3(), broken()};
  for (const auto& pi : corpus) {
    for (int t = 0; t < 10; ++t) {
      auto a = random_one_form(rng, c, 1);
      auto b = random_one_form(rng, c, 1);
      auto x = random_vector_field(rng, c, 2);
      CHECK(bracket_invariance_residual(pi, a, b, x) == bracket_invariance_correction(pi, a, b, x));
      // X annihilated by a and b: cross product of the coefficient vectors.
      auto f = random_polynomial_field(rng, c, 1);
      VectorField k(c);
      k[0] = a[1] * b[2] - a[2] * b[1];
      k[1] = a[2] * b[0] - a[0] * b[2];
      k[2] = a[0] * b[1] - a[1] * b[0];
      k = f * k;
      REQUIRE(a(k).is_zero());
      CHECK(bracket_invariance_residual(pi, a, b, k).is_zero());
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t m = 0; m < 3; ++m) {
          CHECK(bracket_invariance_residual(pi, dx(c, i), dx(c, j), dd(c, m)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("invariance of pi along the orthogonal distribution") {
  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    for (const auto& v : transverse_invariance_values(ex.pi, s)) CHECK(v.is_zero());
  }
  auto c = space();
  auto s = split_cotangent(scaled_space(), CoMetric::identity(c), 2, {});
  auto v = transverse_invariance_values(scaled_space(), s);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == sf("2*z", c));
}

TEST_CASE("bundle like metric") {
  auto c = space();
  auto pi = flat_space();
  auto s = split_cotangent(pi, CoMetric::identity(c), 2, {});
  auto fam = basic_one_form_family(pi, s, 2);
  CHECK(fam.size() == 3);  // dz, z dz, z^2 dz
  auto cas = casimir_monomials(pi, 2);
  CHECK(cas.size() == 3);
  auto r = bundle_like_check(pi, CoMetric::identity(c), s);
  CHECK(r.pass);
  CHECK(r.pairs == 6);

  auto gw = warped(c);
  auto sw = split_cotangent(pi, gw, 2, {});
  CHECK(gw(dx(c, 2), dx(c, 2)) == sf("1/(1+z^2)", c));
  CHECK(bundle_like_check(pi, gw, sw).pass);

  for (const auto& ex : rp_examples()) {
    INFO(ex.name);
    auto sp = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    auto br = bundle_like_check(ex.pi, ex.g, sp);
    CHECK(br.pass);
    CHECK(br.witness.empty());
  }

  // A metric coupling z to x is not bundle-like.
  FieldMatrix m = FieldMatrix::identity(c, 3);
  m(2, 2) = sf("1+x^2", c);
  CoMetric gb(m);
  auto sb = split_cotangent(pi, gb, 2, {});
  auto bad = bundle_like_check(pi, gb, sb);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witness.empty());
  CHECK_FALSE(is_riemann_poisson(pi, gb));
}

TEST_CASE("leafwise differential examples") {
  auto c = space();
  auto pi = flat_space();
  auto s = split_cotangent(pi, CoMetric::identity(c), 2, {});
  LeafwiseForm f(c, 2, 0);
  f.at(0) = sf("x", c);
  auto df = leafwise_d(s, f);
  REQUIRE(df.size() == 2);
  CHECK(df.at(0).is_zero());
  CHECK(df.at(1) == sf("-1", c));

  auto ps = scaled_space();
  auto ss = split_cotangent(ps, CoMetric::identity(c), 2, {});
  auto w = leafwise_symplectic(ps, ss);
  try {
    leafwise_d(ss, w);
    FAIL("expected DegreeOverflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeOverflow);
  }
}

TEST_CASE("leafwise differential squares to zero and matches d of the extension") {
  std::mt19937_64 rng(59);
  for (const auto& ex : all_examples()) {
    INFO(ex.name);
    auto s = split_cotangent(ex.pi, ex.g, ex.rank, ex.samples);
    const auto& c = ex.pi.chart();
    for (std::size_t p = 0; p + 1 < s.rank; ++p) {
      auto w = random_leafwise(rng, s, c, p);
      auto dw = leafwise_d(s, w);
      if (p + 2 <= s.rank) CHECK(leafwise_d(s, dw).is_zero());
      // Oracle: exterior derivative of the zero extension, evaluated on the leaf frame.
      auto big = exterior_d(extend_by_zero(s, w));
      const auto& idx = dw.indices();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        std::vector<VectorField> args;
        for (auto a : idx[k]) args.push_back(s.ts_frame[a]);
        CHECK(evaluate(big, args) == dw.at(k));
      }
    }
  }
}

TEST_CASE("non involutive distribution") {
  // A frame whose bracket leaves its span.
  auto c = space();
  FoliationSplit s;
  s.rank = 2;
  s.ts_frame = {dd(c, 0), dd(c, 1) + sf("x", c) * dd(c, 2)};
  s.perp_frame = {dx(c, 0), dx(c, 1)};
  s.kernel_frame = {dx(c, 2) - sf("x", c) * dx(c, 1)};
  s.h_frame = {dd(c, 2)};
  try {
    ts_structure(s, 0, 1);
    FAIL("expected NotInvolutive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvolutive);
  }
}
