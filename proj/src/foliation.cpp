#include "rpgeom/foliation.hpp"

#include <algorithm>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

std::string point_str(const RationalPoint& p) {
  std::string s;
  for (const auto& q : p) s += (s.empty() ? "" : ",") + q.get_str();
  return "(" + s + ")";
}

// Scales a rational vector by the lcm of its denominators so the entries are polynomial.
std::vector<ScalarField> clear_denominators(std::vector<ScalarField> v) {
  if (v.empty()) return v;
  Polynomial l = Polynomial::constant(1);
  for (const auto& e : v) {
    if (e.is_zero() || e.is_polynomial()) continue;
    const Polynomial& d = e.denominator();
    l = divide_exact(l * d, gcd(l, d));
  }
  if (l.is_constant()) return v;
  ScalarField s(v.front().chart(), l);
  for (auto& e : v) e *= s;
  return v;
}

OneForm as_form(const std::vector<ScalarField>& v) { return OneForm(v); }

FieldMatrix frame_matrix(const ChartPtr& c, const std::vector<VectorField>& cols) {
  const std::size_t n = c->dimension();
  FieldMatrix m(c, n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::optional<std::vector<ScalarField>> ts_coefficients(const FoliationSplit& split, const VectorField& u) {
  const auto& c = u.chart();
  if (split.rank == 0) {
    if (u.is_zero()) return std::vector<ScalarField>{};
    return std::nullopt;
  }
  auto sol = try_solve(frame_matrix(c, split.ts_frame), FieldMatrix::column(u.components()));
  if (!sol) return std::nullopt;
  return sol->column_vector(0);
}

std::vector<ScalarField> require_tangent(const FoliationSplit& split, const VectorField& u) {
  auto co = ts_coefficients(split, u);
  if (!co) throw Error(ErrorKind::DimensionMismatch, "vector " + u.str() + " is not tangent to the leaves");
  return *co;
}

std::size_t position_of(const std::vector<MultiIndex>& table, const MultiIndex& idx) {
  auto it = std::lower_bound(table.begin(), table.end(), idx);
  return static_cast<std::size_t>(it - table.begin());
}

}  // namespace

FoliationSplit split_cotangent(const Bivector& pi, const CoMetric& g, std::size_t declared_rank,
                               const std::vector<RationalPoint>& samples) {
  require_same_chart(pi.chart(), g.chart());
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  if (declared_rank % 2 != 0) throw Error(ErrorKind::RankOdd, "declared rank " + std::to_string(declared_rank) + " is odd");
  if (declared_rank > n) throw Error(ErrorKind::DimensionMismatch, "declared rank exceeds the dimension");

  const std::size_t generic = rank(pi.matrix());
  if (generic != declared_rank) {
    throw Error(ErrorKind::RankNotConstant, "generic rank " + std::to_string(generic) + " differs from declared rank " +
                                                std::to_string(declared_rank));
  }
  for (const auto& p : samples) {
    if (p.size() != n) throw Error(ErrorKind::DimensionMismatch, "sample point has wrong dimension");
    std::size_t r = 0;
    try {
      r = rank(evaluate(pi.matrix(), p));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleAtPoint) throw;
      throw Error(ErrorKind::RankNotConstant, "bivector has a pole at " + point_str(p));
    }
    if (r != declared_rank) {
      throw Error(ErrorKind::RankNotConstant,
                  "rank " + std::to_string(r) + " at " + point_str(p) + ", expected " + std::to_string(declared_rank));
    }
  }

  FoliationSplit s;
  s.rank = declared_rank;
  for (auto& v : kernel_basis(pi.matrix())) s.kernel_frame.push_back(as_form(clear_denominators(std::move(v))));

  if (s.kernel_frame.empty()) {
    for (std::size_t i = 0; i < n; ++i) s.perp_frame.push_back(OneForm::coordinate(c, i));
  } else {
    FieldMatrix k(c, s.kernel_frame.size(), n);
    for (std::size_t a = 0; a < s.kernel_frame.size(); ++a) {
      const VectorField row = metric_sharp(g, s.kernel_frame[a]);
      for (std::size_t j = 0; j < n; ++j) k(a, j) = row[j];
    }
    for (auto& v : kernel_basis(k)) s.perp_frame.push_back(as_form(clear_denominators(std::move(v))));
  }
  for (const auto& a : s.perp_frame) s.ts_frame.push_back(pi_sharp(pi, a));
  for (const auto& a : s.kernel_frame) s.h_frame.push_back(metric_sharp(g, a));

  if (s.perp_frame.size() != declared_rank) {
    throw Error(ErrorKind::InternalInconsistency, "orthogonal complement has unexpected rank");
  }
  const FieldMatrix e = adapted_frame(s);
  if (rank(e) != n) throw Error(ErrorKind::RankNotConstant, "adapted frame is degenerate");
  for (const auto& p : samples) {
    bool ok = false;
    try {
      ok = rank(evaluate(e, p)) == n;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::PoleAtPoint) throw;
    }
    if (!ok) throw Error(ErrorKind::RankNotConstant, "adapted frame degenerates at " + point_str(p));
  }
  return s;
}

FieldMatrix adapted_frame(const FoliationSplit& split) {
  std::vector<VectorField> cols = split.ts_frame;
  cols.insert(cols.end(), split.h_frame.begin(), split.h_frame.end());
  if (cols.empty()) throw Error(ErrorKind::DimensionMismatch, "empty frame");
  return frame_matrix(cols.front().chart(), cols);
}

std::optional<OneForm> pi_inverse(const FoliationSplit& split, const VectorField& u) {
  auto co = ts_coefficients(split, u);
  if (!co) return std::nullopt;
  OneForm xi(u.chart());
  for (std::size_t a = 0; a < co->size(); ++a) {
    if (!(*co)[a].is_zero()) xi += (*co)[a] * split.perp_frame[a];
  }
  return xi;
}

LeafwiseForm::LeafwiseForm(ChartPtr chart, std::size_t rank, std::size_t degree)
    : chart_(std::move(chart)), rank_(rank), degree_(degree) {
  if (degree > rank) throw Error(ErrorKind::DegreeOverflow, "leafwise degree exceeds the leaf dimension");
  comps_.assign(binomial(rank, degree), ScalarField(chart_));
}

ScalarField LeafwiseForm::get(MultiIndex idx) const {
  if (idx.size() != degree_) throw Error(ErrorKind::DimensionMismatch, "index tuple has wrong length");
  for (auto i : idx) {
    if (i >= rank_) throw Error(ErrorKind::IndexOutOfRange, "leafwise index out of range");
  }
  const int sign = sort_with_sign(idx);
  if (sign == 0) return ScalarField(chart_);
  const ScalarField& v = comps_[position_of(indices(), idx)];
  return sign > 0 ? v : -v;
}

bool LeafwiseForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ScalarField& c) { return c.is_zero(); });
}

LeafwiseForm leafwise_symplectic(const Bivector& pi, const FoliationSplit& split,
                                 const std::vector<RationalPoint>& samples) {
  const auto& c = pi.chart();
  const std::size_t r = split.rank;
  LeafwiseForm w(c, r, 2);
  FieldMatrix m(c, r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) m(a, b) = pi(split.perp_frame[a], split.perp_frame[b]);
  }
  const auto& idx = w.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) w.at(k) = m(idx[k][0], idx[k][1]);
  if (r == 0) return w;
  if (rank(m) != r) throw Error(ErrorKind::SingularLeafwiseForm, "leafwise form is degenerate");
  for (const auto& p : samples) {
    bool ok = false;
    try {
      ok = rank(evaluate(m, p)) == r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleAtPoint) throw;
    }
    if (!ok) throw Error(ErrorKind::SingularLeafwiseForm, "leafwise form is degenerate at " + point_str(p));
  }
  return w;
}

ScalarField evaluate(const FoliationSplit& split, const LeafwiseForm& w, const std::vector<VectorField>& args) {
  const std::size_t p = w.degree();
  if (args.size() != p) throw Error(ErrorKind::DimensionMismatch, "wrong number of arguments");
  const auto& c = w.chart();
  if (p == 0) return w.at(0);
  std::vector<std::vector<ScalarField>> co;
  for (const auto& u : args) co.push_back(require_tangent(split, u));
  ScalarField acc(c);
  const auto& idx = w.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (w.at(k).is_zero()) continue;
    FieldMatrix m(c, p, p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) m(i, j) = co[i][idx[k][j]];
    }
    acc += w.at(k) * determinant(m);
  }
  return acc;
}

PForm extend_by_zero(const FoliationSplit& split, const LeafwiseForm& w) {
  const auto& c = w.chart();
  const std::size_t n = c->dimension();
  PForm out(c, w.degree());
  if (w.degree() == 0) {
    out.at(0) = w.at(0);
    return out;
  }
  const FieldMatrix inv = inverse(adapted_frame(split));
  std::vector<PForm> theta;
  for (std::size_t a = 0; a < split.rank; ++a) {
    OneForm t(c);
    for (std::size_t j = 0; j < n; ++j) t[j] = inv(a, j);
    theta.push_back(to_pform(t));
  }
  const auto& idx = w.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (w.at(k).is_zero()) continue;
    PForm term = theta[idx[k][0]];
    for (std::size_t l = 1; l < idx[k].size(); ++l) term = wedge(term, theta[idx[k][l]]);
    out += w.at(k) * term;
  }
  return out;
}

std::vector<ScalarField> ts_structure(const FoliationSplit& split, std::size_t a, std::size_t b) {
  const VectorField br = lie_bracket(split.ts_frame[a], split.ts_frame[b]);
  auto co = ts_coefficients(split, br);
  if (!co) {
    throw Error(ErrorKind::NotInvolutive, "bracket of leaf frame fields " + std::to_string(a) + "," + std::to_string(b) +
                                              " leaves the distribution: " + br.str());
  }
  return *co;
}

LeafwiseForm leafwise_d(const FoliationSplit& split, const LeafwiseForm& w) {
  const std::size_t r = split.rank;
  const std::size_t p = w.degree();
  if (p >= r) throw Error(ErrorKind::DegreeOverflow, "leafwise degree exceeds the leaf dimension");
  const auto& c = w.chart();

  std::vector<std::vector<std::vector<ScalarField>>> st(r, std::vector<std::vector<ScalarField>>(r));
  if (p > 0) {
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = a + 1; b < r; ++b) st[a][b] = ts_structure(split, a, b);
    }
  }

  LeafwiseForm out(c, r, p + 1);
  const auto& idx = out.indices();
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    const MultiIndex& tuple = idx[pos];
    ScalarField acc(c);
    for (std::size_t j = 0; j <= p; ++j) {
      MultiIndex rest;
      for (std::size_t l = 0; l <= p; ++l) {
        if (l != j) rest.push_back(tuple[l]);
      }
      ScalarField v = split.ts_frame[tuple[j]].apply(w.get(rest));
      if (j % 2 == 0) acc += v; else acc -= v;
    }
    for (std::size_t i = 0; i <= p; ++i) {
      for (std::size_t j = i + 1; j <= p; ++j) {
        const auto& coeffs = st[tuple[i]][tuple[j]];
        MultiIndex rest;
        for (std::size_t l = 0; l <= p; ++l) {
          if (l != i && l != j) rest.push_back(tuple[l]);
        }
        ScalarField sum(c);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          if (coeffs[k].is_zero()) continue;
          MultiIndex full{k};
          full.insert(full.end(), rest.begin(), rest.end());
          sum += coeffs[k] * w.get(full);
        }
        if ((i + j) % 2 == 0) acc += sum; else acc -= sum;
      }
    }
    out.at(pos) = acc;
  }
  return out;
}

FieldMatrix induced_tangent_metric(const CoMetric& g, const FoliationSplit& split) {
  const auto& c = g.chart();
  const std::size_t n = g.dimension();
  const std::size_t r = split.rank;
  FieldMatrix b(c, n, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) b(i, j) = g(split.perp_frame[i], split.perp_frame[j]);
  }
  for (std::size_t i = 0; i < n - r; ++i) {
    for (std::size_t j = 0; j < n - r; ++j) b(r + i, r + j) = g(split.kernel_frame[i], split.kernel_frame[j]);
  }
  const FieldMatrix inv = inverse(adapted_frame(split));
  return inv.transpose() * b * inv;
}

std::vector<std::vector<VectorField>> leaf_connection(const ChristoffelTable& d, const Bivector& pi,
                                                      const FoliationSplit& split) {
  const std::size_t r = split.rank;
  std::vector<std::vector<VectorField>> out(r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      out[a].push_back(pi_sharp(pi, covariant_derivative(d, pi, split.perp_frame[a], split.perp_frame[b])));
    }
  }
  return out;
}

std::vector<ScalarField> parallel_omega_residuals(const ChristoffelTable& d, const Bivector& pi,
                                                  const FoliationSplit& split) {
  const std::size_t r = split.rank;
  const LeafwiseForm w = leafwise_symplectic(pi, split);
  const auto nabla = leaf_connection(d, pi, split);
  const auto& ts = split.ts_frame;
  std::vector<ScalarField> out;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t c = b + 1; c < r; ++c) {
        out.push_back(ts[a].apply(w.get({b, c})) - evaluate(split, w, {nabla[a][b], ts[c]}) -
                      evaluate(split, w, {ts[b], nabla[a][c]}));
      }
    }
  }
  return out;
}

bool is_basic_by_definition(const Bivector& pi, const OneForm& a) {
  if (!pi_sharp(pi, a).is_zero()) return false;
  const PForm da = exterior_d(to_pform(a));
  for (std::size_t i = 0; i < pi.dimension(); ++i) {
    if (!interior(pi_sharp(pi, OneForm::coordinate(pi.chart(), i)), da).is_zero()) return false;
  }
  return true;
}

bool is_basic_by_bracket(const Bivector& pi, const OneForm& a) {
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    const OneForm dxi = OneForm::coordinate(c, i);
    if (!koszul_bracket_fast(pi, a, dxi).is_zero()) return false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!koszul_bracket_fast(pi, a, ScalarField::coordinate(c, k) * dxi).is_zero()) return false;
    }
  }
  return true;
}

bool is_foliate(const VectorField& x, const FoliationSplit& split) {
  for (const auto& t : split.ts_frame) {
    const VectorField br = lie_bracket(x, t);
    for (const auto& k : split.kernel_frame) {
      if (!k(br).is_zero()) return false;
    }
  }
  return true;
}

bool is_parallel(const ChristoffelTable& d, const Bivector& pi, const OneForm& a) {
  for (std::size_t i = 0; i < pi.dimension(); ++i) {
    if (!covariant_derivative(d, pi, OneForm::coordinate(pi.chart(), i), a).is_zero()) return false;
  }
  return true;
}

BasicPredicates basic_predicates(const Bivector& pi, const CoMetric& g, const ChristoffelTable& d,
                         const FoliationSplit& split, const OneForm& a) {
  BasicPredicates out;
  out.basic = is_basic_by_definition(pi, a);
  out.parallel = is_parallel(d, pi, a);
  const VectorField s = metric_sharp(g, a);
  out.sharp_foliate = is_foliate(s, split);
  out.preserves_pi = lie_derivative(s, pi.as_pvector()).is_zero();
  return out;
}

KernelChecks kernel_checks(const Bivector& pi, const CoMetric& g, const ChristoffelTable& d, const FoliationSplit& split) {
  KernelChecks out;
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  auto note = [&](const std::string& s) {
    if (out.witness.empty()) out.witness = s;
  };
  for (const auto& k : split.kernel_frame) {
    for (std::size_t i = 0; i < n; ++i) {
      const OneForm dxi = OneForm::coordinate(c, i);
      const OneForm dk = covariant_derivative(d, pi, dxi, k);
      if (!pi_sharp(pi, dk).is_zero()) {
        out.kernel_image_in_kernel = false;
        note("pi(D_{" + dxi.str() + "}(" + k.str() + ")) = " + pi_sharp(pi, dk).str());
      }
      const OneForm dkx = covariant_derivative(d, pi, k, dxi);
      if (!dkx.is_zero()) {
        out.kernel_direction_flat = false;
        note("D_{" + k.str() + "}" + dxi.str() + " = " + dkx.str());
      }
    }
  }
  const auto& perp = split.perp_frame;
  for (std::size_t a = 0; a < perp.size(); ++a) {
    for (std::size_t b = 0; b < perp.size(); ++b) {
      const OneForm dab = covariant_derivative(d, pi, perp[a], perp[b]);
      const OneForm br = koszul_bracket_fast(pi, perp[a], perp[b]);
      for (const auto& k : split.kernel_frame) {
        const ScalarField v1 = g(dab, k);
        if (!v1.is_zero()) {
          out.perp_closed = false;
          note("<D_{" + perp[a].str() + "}(" + perp[b].str() + "), " + k.str() + "> = " + v1.str());
        }
        const ScalarField v2 = g(br, k);
        if (!v2.is_zero()) {
          out.perp_closed = false;
          note("<[" + perp[a].str() + ", " + perp[b].str() + "], " + k.str() + "> = " + v2.str());
        }
      }
    }
  }
  return out;
}

ScalarField bracket_invariance_residual(const Bivector& pi, const OneForm& a, const OneForm& b, const VectorField& x) {
  const ScalarField lhs = koszul_bracket_fast(pi, a, b)(x);
  const PVector lx = lie_derivative(x, pi.as_pvector());
  return lhs - evaluate(lx, {a, b});
}

ScalarField bracket_invariance_correction(const Bivector& pi, const OneForm& a, const OneForm& b, const VectorField& x) {
  return pi_sharp(pi, a).apply(b(x)) - pi_sharp(pi, b).apply(a(x));
}

std::vector<ScalarField> transverse_invariance_values(const Bivector& pi, const FoliationSplit& split) {
  std::vector<ScalarField> out;
  const PVector q = pi.as_pvector();
  for (const auto& x : split.h_frame) {
    const PVector lx = lie_derivative(x, q);
    for (std::size_t a = 0; a < split.perp_frame.size(); ++a) {
      for (std::size_t b = a + 1; b < split.perp_frame.size(); ++b) {
        out.push_back(evaluate(lx, {split.perp_frame[a], split.perp_frame[b]}));
      }
    }
  }
  return out;
}

std::vector<ScalarField> casimir_monomials(const Bivector& pi, unsigned degree) {
  std::vector<ScalarField> out;
  for (const auto& m : monomials_up_to(pi.dimension(), degree)) {
    ScalarField f(pi.chart(), Polynomial::term(m, 1));
    if (is_casimir(pi, f)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<OneForm> basic_one_form_family(const Bivector& pi, const FoliationSplit& split, unsigned degree) {
  std::vector<OneForm> out;
  const auto cas = casimir_monomials(pi, degree);
  for (const auto& k : split.kernel_frame) {
    for (const auto& f : cas) {
      OneForm a = f * k;
      if (is_basic_by_definition(pi, a)) out.push_back(std::move(a));
    }
  }
  return out;
}

BundleLike bundle_like_check(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, unsigned degree) {
  BundleLike out;
  const auto family = basic_one_form_family(pi, split, degree);
  const FieldMatrix t = induced_tangent_metric(g, split);
  const std::size_t n = pi.dimension();
  std::vector<VectorField> sharp;
  for (const auto& a : family) sharp.push_back(metric_sharp(g, a));
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i; j < family.size(); ++j) {
      ++out.pairs;
      const ScalarField inner = g(family[i], family[j]);
      ScalarField tangent(pi.chart());
      for (std::size_t k = 0; k < n; ++k) {
        if (sharp[i][k].is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (!sharp[j][l].is_zero() && !t(k, l).is_zero()) tangent += sharp[i][k] * t(k, l) * sharp[j][l];
        }
      }
      if (tangent != inner) {
        out.pass = false;
        out.witness = "g(#a,#b) = " + tangent.str() + " but <a,b> = " + inner.str() + " for a = " + family[i].str() +
                      ", b = " + family[j].str();
        return out;
      }
      if (!is_casimir(pi, inner)) {
        out.pass = false;
        out.witness = "<" + family[i].str() + ", " + family[j].str() + "> = " + inner.str() + " is not a Casimir";
        return out;
      }
    }
  }
  return out;
}

}  // namespace rpgeom
