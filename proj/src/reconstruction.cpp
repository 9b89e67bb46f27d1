#include "rpgeom/reconstruction.hpp"

#include <map>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

std::string point_str(const RationalPoint& p) {
  std::string s;
  for (const auto& q : p) s += (s.empty() ? "" : ",") + q.get_str();
  return "(" + s + ")";
}

FieldMatrix columns(const ChartPtr& c, const std::vector<VectorField>& v) {
  const std::size_t n = c->dimension();
  FieldMatrix m(c, n, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = v[j][i];
  }
  return m;
}

ScalarField inner(const FieldMatrix& g, const VectorField& u, const VectorField& v) {
  ScalarField acc(g.chart());
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!v[j].is_zero() && !g(i, j).is_zero()) acc += u[i] * g(i, j) * v[j];
    }
  }
  return acc;
}

std::vector<ScalarField> clear_denominators(std::vector<ScalarField> v) {
  Polynomial l = Polynomial::constant(1);
  for (const auto& e : v) {
    if (e.is_zero() || e.is_polynomial()) continue;
    l = divide_exact(l * e.denominator(), gcd(l, e.denominator()));
  }
  if (l.is_constant() || v.empty()) return v;
  ScalarField s(v.front().chart(), l);
  for (auto& e : v) e *= s;
  return v;
}

// Forms vanishing on every vector of the frame.
std::vector<OneForm> annihilator_of(const ChartPtr& c, const std::vector<VectorField>& frame) {
  const std::size_t n = c->dimension();
  if (frame.empty()) {
    std::vector<OneForm> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(OneForm::coordinate(c, i));
    return all;
  }
  std::vector<OneForm> out;
  for (auto& v : kernel_basis(columns(c, frame).transpose())) out.push_back(OneForm(clear_denominators(std::move(v))));
  return out;
}

bool full_rank_at(const FieldMatrix& m, std::size_t r, const RationalPoint& p) {
  try {
    return rank(evaluate(m, p)) == r;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleAtPoint) throw;
    return false;
  }
}

// Gram matrix of omega on the leaf frame.
FieldMatrix leaf_gram(const FoliationInput& in) {
  const std::size_t r = in.f_frame.size();
  FieldMatrix m(in.chart, r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      m(a, b) = evaluate(in.omega, {in.f_frame[a], in.f_frame[b]});
      m(b, a) = -m(a, b);
    }
  }
  return m;
}

void check_nondegenerate(const FoliationInput& in) {
  const FieldMatrix w = leaf_gram(in);
  const std::size_t r = in.f_frame.size();
  for (const auto& p : in.samples) {
    if (!full_rank_at(w, r, p)) throw Error(ErrorKind::DegenerateOmegaAt, "omega degenerate at " + point_str(p));
  }
  if (rank(w) != r) throw Error(ErrorKind::DegenerateOmegaAt, "omega is degenerate on the leaves");
}

}  // namespace

std::vector<VectorField> orthogonal_frame(const FoliationInput& in) {
  const auto& c = in.chart;
  const std::size_t n = c->dimension();
  const std::size_t r = in.f_frame.size();
  if (in.tangent_metric.rows() != n || in.tangent_metric.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "tangent metric must be n x n");
  }
  if (!in.tangent_metric.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "tangent metric is not symmetric");
  if (auto p = positive_definite_failure(in.tangent_metric, in.samples)) {
    throw Error(ErrorKind::NotPositiveDefiniteAt, "tangent metric not positive definite at " + point_str(*p));
  }
  if (r == 0) throw Error(ErrorKind::RankNotConstant, "empty leaf frame");
  const FieldMatrix f = columns(c, in.f_frame);
  if (rank(f) != r) throw Error(ErrorKind::RankNotConstant, "leaf frame is not independent");
  for (const auto& p : in.samples) {
    if (!full_rank_at(f, r, p)) throw Error(ErrorKind::RankNotConstant, "leaf frame degenerates at " + point_str(p));
  }
  std::vector<VectorField> out;
  for (auto& v : kernel_basis(f.transpose() * in.tangent_metric)) out.emplace_back(clear_denominators(std::move(v)));
  return out;
}

std::vector<VectorField> foliate_perpendicular_frame(const FoliationInput& in, const std::vector<VectorField>& perp,
                                                     unsigned max_degree) {
  const auto& c = in.chart;
  const std::size_t n = c->dimension();
  const std::size_t q = perp.size();
  if (q == 0) return {};
  const auto ann = annihilator_of(c, in.f_frame);
  const auto monos = monomials_up_to(n, max_degree);

  // Unknown u[k*M + t] multiplies monos[t] * perp[k]. Each condition
  // ann_m([X, f_j]) = 0 is linear in u.
  const std::size_t unknowns = q * monos.size();
  std::vector<VectorField> candidates;
  for (std::size_t k = 0; k < q; ++k) {
    for (const auto& m : monos) candidates.push_back(ScalarField(c, Polynomial::term(m, 1)) * perp[k]);
  }
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : in.f_frame) {
    for (const auto& a : ann) {
      std::vector<ScalarField> e;
      for (const auto& x : candidates) e.push_back(a(lie_bracket(x, f)));
      Polynomial l = Polynomial::constant(1);
      for (const auto& v : e) {
        if (!v.is_zero() && !v.is_polynomial()) l = divide_exact(l * v.denominator(), gcd(l, v.denominator()));
      }
      std::map<Monomial, std::vector<Rational>> eqs;
      for (std::size_t t = 0; t < unknowns; ++t) {
        if (e[t].is_zero()) continue;
        const Polynomial num = e[t].numerator() * divide_exact(l, e[t].denominator());
        for (const auto& term : num.terms()) {
          auto& row = eqs[term.mono];
          if (row.empty()) row.assign(unknowns, Rational(0));
          row[t] += term.coeff;
        }
      }
      for (auto& eq : eqs) rows.push_back(std::move(eq.second));
    }
  }

  std::vector<std::vector<Rational>> solutions;
  if (rows.empty()) {
    for (std::size_t t = 0; t < unknowns; ++t) {
      std::vector<Rational> v(unknowns, Rational(0));
      v[t] = 1;
      solutions.push_back(std::move(v));
    }
  } else {
    RationalMatrix sys(rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t t = 0; t < unknowns; ++t) sys(i, t) = rows[i][t];
    }
    solutions = kernel_basis(sys);
  }

  std::vector<VectorField> chosen;
  for (const auto& sol : solutions) {
    VectorField x(c);
    for (std::size_t t = 0; t < unknowns; ++t) {
      if (sol[t] != 0) x += ScalarField(c, sol[t]) * candidates[t];
    }
    auto trial = chosen;
    trial.push_back(x);
    const FieldMatrix m = columns(c, trial);
    if (rank(m) != trial.size()) continue;
    bool ok = true;
    for (const auto& p : in.samples) ok = ok && full_rank_at(m, trial.size(), p);
    if (!ok) continue;
    chosen = std::move(trial);
    if (chosen.size() == q) return chosen;
  }
  throw Error(ErrorKind::Inconclusive, "no foliate orthogonal frame with coefficients of degree <= " +
                                           std::to_string(max_degree));
}

InputReport validate_input(const FoliationInput& in) {
  const auto& c = in.chart;
  const std::size_t r = in.f_frame.size();
  if (in.omega.degree() != 2) throw Error(ErrorKind::DimensionMismatch, "omega must be a 2-form");
  InputReport rep;
  rep.rank = r;
  rep.perp_frame = orthogonal_frame(in);
  const FieldMatrix f = columns(c, in.f_frame);

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const VectorField br = lie_bracket(in.f_frame[i], in.f_frame[j]);
      if (!try_solve(f, FieldMatrix::column(br.components()))) {
        throw Error(ErrorKind::NotInvolutive, "NotInvolutive(" + std::to_string(i) + "," + std::to_string(j) +
                                                  "): bracket " + br.str() + " leaves the distribution");
      }
    }
  }
  for (const auto& v : rep.perp_frame) {
    if (!interior(v, in.omega).is_zero()) {
      throw Error(ErrorKind::OmegaNotTangential, "omega does not vanish on orthogonal field " + v.str());
    }
  }
  check_nondegenerate(in);
  if (r >= 3) {
    const PForm dw = exterior_d(in.omega);
    for (const auto& idx : increasing_indices(r, 3)) {
      const ScalarField v = evaluate(dw, {in.f_frame[idx[0]], in.f_frame[idx[1]], in.f_frame[idx[2]]});
      if (!v.is_zero()) throw Error(ErrorKind::NotLeafwiseClosed, "d_F omega = " + v.str() + " on a leaf frame triple");
    }
  }

  rep.foliate_frame = foliate_perpendicular_frame(in, rep.perp_frame);
  for (const auto& x : rep.foliate_frame) {
    const PForm lw = lie_derivative(x, in.omega);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = a + 1; b < r; ++b) {
        const ScalarField v = evaluate(lw, {in.f_frame[a], in.f_frame[b]});
        if (!v.is_zero()) {
          throw Error(ErrorKind::InvarianceFails, "InvarianceFails(X=" + x.str() + ", U=" + in.f_frame[a].str() +
                                                      ", V=" + in.f_frame[b].str() + "): L_X omega(U,V) = " + v.str());
        }
      }
    }
  }

  // (L_U g)(h_a, h_b) = U.g(h_a,h_b) - g([U,h_a],h_b) - g(h_a,[U,h_b]).
  const FieldMatrix& g = in.tangent_metric;
  const auto& h = rep.perp_frame;
  for (const auto& u : in.f_frame) {
    for (std::size_t a = 0; a < h.size(); ++a) {
      const VectorField ua = lie_bracket(u, h[a]);
      for (std::size_t b = a; b < h.size(); ++b) {
        const ScalarField v =
            u.apply(inner(g, h[a], h[b])) - inner(g, ua, h[b]) - inner(g, h[a], lie_bracket(u, h[b]));
        if (!v.is_zero()) {
          throw Error(ErrorKind::NotBundleLike, "(L_U g)(X,Y) = " + v.str() + " for U = " + u.str() + ", X = " +
                                                    h[a].str() + ", Y = " + h[b].str());
        }
      }
    }
  }

  // Parallelism of omega, checked on the assembled structure.
  const Structure s = build_structure(in);
  const FoliationSplit split = split_cotangent(s.pi, s.cometric, r, in.samples);
  const ChristoffelTable d = levi_civita(s.pi, s.cometric);
  for (const auto& v : parallel_omega_residuals(d, s.pi, split)) {
    if (!v.is_zero()) throw Error(ErrorKind::CertificationFailed, "omega is not parallel along the leaves: " + v.str());
  }
  return rep;
}

Structure build_structure(const FoliationInput& in) {
  const auto& c = in.chart;
  const std::size_t n = c->dimension();
  const std::size_t r = in.f_frame.size();
  const auto perp = orthogonal_frame(in);
  check_nondegenerate(in);

  const FieldMatrix& g = in.tangent_metric;
  const FieldMatrix f = columns(c, in.f_frame);
  const FieldMatrix w = leaf_gram(in);

  // Column i of cf: coefficients over f_frame of u_i = omega^-1 of the F-part of dx^i,
  // i.e. omega(u_i, f_a) = dx^i(f_a).
  const FieldMatrix cf = solve_linear(w.transpose(), f.transpose());
  FieldMatrix fgram(c, r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) fgram(a, b) = inner(g, in.f_frame[a], in.f_frame[b]);
  }
  FieldMatrix pim = cf.transpose() * w * cf;
  FieldMatrix metric = cf.transpose() * fgram * cf;

  if (!perp.empty()) {
    // Column i of ch: coefficients over perp of #(a_i), a_i the F-annihilating part of dx^i.
    const std::size_t q = perp.size();
    const FieldMatrix h = columns(c, perp);
    FieldMatrix hgram(c, q, q);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) hgram(a, b) = inner(g, perp[a], perp[b]);
    }
    const FieldMatrix ch = solve_linear(hgram, h.transpose());
    metric = metric + ch.transpose() * hgram * ch;
  }
  // Mixed pairs contribute nothing in either order.
  FieldMatrix sym(c, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = (metric(i, j) + metric(j, i)) * Rational(1, 2);
  }

  Structure s{Bivector(pim), CoMetric(sym), annihilator_of(c, in.f_frame), annihilator_of(c, perp)};
  validate_cometric(s.cometric, in.samples);
  return s;
}

Certificate certify(const Structure& s, std::size_t rank_expected) {
  Certificate cert;
  if (auto w = jacobi_witness(s.pi)) {
    throw Error(ErrorKind::CertificationFailed, "Jacobi identity fails on coordinates " + std::to_string((*w)[0]) +
                                                    "," + std::to_string((*w)[1]) + "," + std::to_string((*w)[2]));
  }
  cert.poisson = true;
  if (auto w = riemann_poisson_witness(levi_civita(s.pi, s.cometric), s.pi)) {
    throw Error(ErrorKind::CertificationFailed, "D pi != 0: D pi(dx^" + std::to_string(w->indices[0]) + ",dx^" +
                                                    std::to_string(w->indices[1]) + ",dx^" +
                                                    std::to_string(w->indices[2]) + ") = " + w->value.str());
  }
  cert.riemann_poisson = true;
  for (const auto& k : s.annihilator) {
    if (!pi_sharp(s.pi, k).is_zero()) throw Error(ErrorKind::CertificationFailed, "pi(" + k.str() + ") != 0");
  }
  if (rank(s.pi.matrix()) != rank_expected) {
    throw Error(ErrorKind::CertificationFailed, "Ker pi is larger than the annihilator of the leaves");
  }
  cert.kernel_matches = true;
  return cert;
}

FoliationInput extract_input(const Bivector& pi, const CoMetric& g, std::size_t rank,
                             const std::vector<RationalPoint>& samples) {
  const FoliationSplit split = split_cotangent(pi, g, rank, samples);
  return FoliationInput{pi.chart(), split.ts_frame, induced_tangent_metric(g, split),
                        extend_by_zero(split, leafwise_symplectic(pi, split, samples)), samples};
}

RoundTrip round_trip(const Bivector& pi, const CoMetric& g, std::size_t rank, const std::vector<RationalPoint>& samples) {
  Structure s = build_structure(extract_input(pi, g, rank, samples));
  RoundTrip out{s.pi == pi, s.cometric == g, std::move(s)};
  return out;
}

}  // namespace rpgeom
