#include "rpgeom/cohomology.hpp"

#include <algorithm>
#include <climits>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

const Polynomial& polynomial_of(const ScalarField& f, const char* what) {
  if (!f.is_polynomial()) throw Error(ErrorKind::NonPolynomial, std::string(what) + " has non-polynomial entry " + f.str());
  // Canonical form keeps a monic constant denominator, so the numerator is the polynomial.
  return f.numerator();
}

void widen(int& lo, int& hi, const Polynomial& p, int offset) {
  if (p.is_zero()) return;
  lo = std::min(lo, static_cast<int>(p.min_total_degree()) + offset);
  hi = std::max(hi, static_cast<int>(p.total_degree()) + offset);
}

PVector basis_vector(const ChartPtr& c, std::size_t p, const Monomial& m, const MultiIndex& idx) {
  PVector q(c, p);
  q.set(idx, ScalarField(c, Polynomial::term(m, 1)));
  return q;
}

std::vector<VectorField> dual_frame(const FoliationSplit& split, const ChartPtr& c) {
  const std::size_t n = c->dimension();
  std::vector<OneForm> forms = split.perp_frame;
  forms.insert(forms.end(), split.kernel_frame.begin(), split.kernel_frame.end());
  FieldMatrix b(c, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) b(k, j) = forms[k][j];
  }
  const FieldMatrix e = inverse(b);
  std::vector<VectorField> out;
  for (std::size_t l = 0; l < n; ++l) out.emplace_back(e.column_vector(l));
  return out;
}

PVector wedge_of(const ChartPtr& c, const std::vector<VectorField>& frame, const MultiIndex& idx) {
  if (idx.empty()) {
    PVector one(c, 0);
    one.at(0) = ScalarField(c, Rational(1));
    return one;
  }
  PVector out = to_pvector(frame[idx[0]]);
  for (std::size_t k = 1; k < idx.size(); ++k) out = wedge(out, to_pvector(frame[idx[k]]));
  return out;
}

PForm wedge_of(const ChartPtr& c, const std::vector<OneForm>& frame, const MultiIndex& idx) {
  if (idx.empty()) {
    PForm one(c, 0);
    one.at(0) = ScalarField(c, Rational(1));
    return one;
  }
  PForm out = to_pform(frame[idx[0]]);
  for (std::size_t k = 1; k < idx.size(); ++k) out = wedge(out, to_pform(frame[idx[k]]));
  return out;
}

// Rank of a family of polynomial component lists, as vectors of rational coefficients.
std::size_t coefficient_rank(const std::vector<std::vector<Polynomial>>& family) {
  if (family.empty()) return 0;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> slot;
  for (const auto& comps : family) {
    for (std::size_t k = 0; k < comps.size(); ++k) {
      for (const auto& t : comps[k].terms()) slot.emplace(std::make_pair(k, t.mono), slot.size());
    }
  }
  RationalMatrix m(slot.size(), family.size());
  for (std::size_t j = 0; j < family.size(); ++j) {
    for (std::size_t k = 0; k < family[j].size(); ++k) {
      for (const auto& t : family[j][k].terms()) m(slot.at({k, t.mono}), j) = t.coeff;
    }
  }
  return rank(m);
}

}  // namespace

GradedBasis::GradedBasis(std::size_t nvars, std::size_t slots, std::size_t p, unsigned d)
    : nvars_(nvars), slots_(slots), p_(p), d_(d), monos_(monomials_up_to(nvars, d)) {
  for (std::size_t i = 0; i < monos_.size(); ++i) pos_.emplace(monos_[i], i);
}

std::optional<std::size_t> GradedBasis::index_of(const Monomial& m, std::size_t tuple_pos) const {
  auto it = pos_.find(m);
  if (it == pos_.end()) return std::nullopt;
  return it->second * tuples().size() + tuple_pos;
}

PolynomialComplex lichnerowicz_complex(const Bivector& pi) {
  const std::size_t n = pi.dimension();
  int lo = INT_MAX, hi = INT_MIN;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) widen(lo, hi, polynomial_of(pi(i, j), "bivector"), -1);
  }
  if (lo == INT_MAX) lo = hi = 0;
  PolynomialComplex cx;
  cx.nvars = n;
  cx.slots = n;
  cx.shift_min = lo;
  cx.shift_max = hi;
  cx.apply = [pi](std::size_t p, const Monomial& m, const MultiIndex& idx) {
    std::vector<Polynomial> out;
    if (p + 1 > pi.dimension()) return out;
    const PVector image = d_pi(pi, basis_vector(pi.chart(), p, m, idx));
    for (std::size_t k = 0; k < image.size(); ++k) out.push_back(polynomial_of(image.at(k), "d_pi image"));
    return out;
  };
  return cx;
}

PolynomialComplex leafwise_complex(const FoliationSplit& split) {
  if (split.ts_frame.empty()) throw Error(ErrorKind::DimensionMismatch, "leafwise complex needs a leaf frame");
  const auto& c = split.ts_frame.front().chart();
  const std::size_t r = split.rank;
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& t : split.ts_frame) {
    for (const auto& e : t.components()) widen(lo, hi, polynomial_of(e, "leaf frame"), -1);
  }
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      for (const auto& e : ts_structure(split, a, b)) widen(lo, hi, polynomial_of(e, "leaf structure function"), 0);
    }
  }
  if (lo == INT_MAX) lo = hi = 0;
  PolynomialComplex cx;
  cx.nvars = c->dimension();
  cx.slots = r;
  cx.shift_min = lo;
  cx.shift_max = hi;
  cx.apply = [split, c](std::size_t p, const Monomial& m, const MultiIndex& idx) {
    std::vector<Polynomial> out;
    if (p + 1 > split.rank) return out;
    LeafwiseForm w(c, split.rank, p);
    const auto& table = w.indices();
    const auto pos = static_cast<std::size_t>(std::lower_bound(table.begin(), table.end(), idx) - table.begin());
    w.at(pos) = ScalarField(c, Polynomial::term(m, 1));
    const LeafwiseForm dw = leafwise_d(split, w);
    for (std::size_t k = 0; k < dw.size(); ++k) out.push_back(polynomial_of(dw.at(k), "leafwise image"));
    return out;
  };
  return cx;
}

RationalMatrix assemble(const PolynomialComplex& cx, std::size_t p, unsigned d_in, unsigned d_out) {
  const GradedBasis in(cx.nvars, cx.slots, p, d_in);
  if (p + 1 > cx.slots) return RationalMatrix(0, in.size());
  const GradedBasis out(cx.nvars, cx.slots, p + 1, d_out);
  RationalMatrix m(out.size(), in.size());
  for (std::size_t col = 0; col < in.size(); ++col) {
    const auto comps = cx.apply(p, in.monomial_at(col), in.tuple_at(col));
    for (std::size_t k = 0; k < comps.size(); ++k) {
      for (const auto& t : comps[k].terms()) {
        auto row = out.index_of(t.mono, k);
        if (!row) {
          throw Error(ErrorKind::WindowTooSmall, "image degree " + std::to_string(t.mono.degree()) +
                                                     " exceeds output window " + std::to_string(d_out));
        }
        m(*row, col) = t.coeff;
      }
    }
  }
  return m;
}

RationalMatrix assemble_dpi_matrix(const Bivector& pi, std::size_t p, unsigned d_in, unsigned d_out) {
  return assemble(lichnerowicz_complex(pi), p, d_in, d_out);
}

std::string BettiWindow::describe() const {
  return "b" + std::to_string(p) + "(window d=" + std::to_string(d) + ") = " + std::to_string(betti) +
         " [closed " + std::to_string(kernel) + ", exact " + std::to_string(image) + " from degree <= " +
         std::to_string(d_prev) + (graded ? "" : ", inhomogeneous differential") + "]";
}

namespace {

unsigned out_degree(const PolynomialComplex& cx, unsigned d) {
  return static_cast<unsigned>(std::max(0, static_cast<int>(d) + cx.shift_max));
}

}  // namespace

std::vector<std::vector<Rational>> closed_cochains(const PolynomialComplex& cx, std::size_t p, unsigned d) {
  const GradedBasis basis(cx.nvars, cx.slots, p, d);
  if (p + 1 > cx.slots) {
    std::vector<std::vector<Rational>> all;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Rational> v(basis.size(), Rational(0));
      v[i] = 1;
      all.push_back(std::move(v));
    }
    return all;
  }
  return kernel_basis(assemble(cx, p, d, out_degree(cx, d)));
}

BettiWindow truncated_betti(const PolynomialComplex& cx, std::size_t p, unsigned d) {
  BettiWindow b;
  b.p = p;
  b.d = d;
  b.graded = cx.shift_min == cx.shift_max;
  if (p > cx.slots) return b;
  const GradedBasis basis(cx.nvars, cx.slots, p, d);
  if (p + 1 > cx.slots) {
    b.kernel = basis.size();
  } else {
    const RationalMatrix a = assemble(cx, p, d, out_degree(cx, d));
    b.kernel = basis.size() - rank(a);
  }
  const int prev = static_cast<int>(d) - cx.shift_min;
  if (p > 0 && prev >= 0) {
    b.d_prev = static_cast<unsigned>(prev);
    const unsigned top = std::max(d, out_degree(cx, b.d_prev));
    const RationalMatrix m = assemble(cx, p - 1, b.d_prev, top);
    const GradedBasis rows(cx.nvars, cx.slots, p, top);
    std::vector<std::size_t> high;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows.monomial_at(i).degree() > d) high.push_back(i);
    }
    const std::size_t full = rank(m);
    b.image = full - (high.empty() ? 0 : rank(m.select_rows(high)));
  }
  b.betti = b.kernel - b.image;
  return b;
}

BettiWindow truncated_betti(const Bivector& pi, std::size_t p, unsigned d) {
  return truncated_betti(lichnerowicz_complex(pi), p, d);
}

std::pair<PVector, PVector> split_multivector(const PVector& q, const FoliationSplit& split) {
  const auto& c = q.chart();
  const std::size_t p = q.degree();
  if (p == 0) return {q, PVector(c, 0)};
  if (p > split.rank) return {PVector(c, p), q};
  std::vector<OneForm> forms = split.perp_frame;
  const auto e = dual_frame(split, c);
  PVector q0(c, p);
  for (const auto& idx : increasing_indices(split.rank, p)) {
    std::vector<OneForm> args;
    for (auto a : idx) args.push_back(forms[a]);
    const ScalarField v = evaluate(q, args);
    if (!v.is_zero()) q0 += v * wedge_of(c, e, idx);
  }
  return {q0, q - q0};
}

SplitPreservation dpi_preserves_split(const Bivector& pi, const FoliationSplit& split, std::size_t p, unsigned d) {
  SplitPreservation out;
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  if (p + 1 > n) return out;
  const auto e = dual_frame(split, c);
  for (const auto& m : monomials_up_to(n, d)) {
    const ScalarField coeff(c, Polynomial::term(m, 1));
    for (const auto& idx : increasing_indices(n, p)) {
      const bool in0 = std::all_of(idx.begin(), idx.end(), [&](std::size_t a) { return a < split.rank; });
      const PVector q = coeff * wedge_of(c, e, idx);
      const auto parts = split_multivector(d_pi(pi, q), split);
      ++out.checked;
      const PVector& wrong = in0 ? parts.second : parts.first;
      if (!wrong.is_zero()) {
        (in0 ? out.preserved0 : out.preserved1) = false;
        if (out.witness.empty()) {
          out.witness = "d_pi(" + q.str() + ") has " + (in0 ? "X1" : "X0") + " component " + wrong.str();
        }
      }
    }
  }
  return out;
}

PVector pi_pushforward(const Bivector& pi, const FoliationSplit& split, const LeafwiseForm& w) {
  const auto& c = pi.chart();
  const std::size_t p = w.degree();
  PVector out(c, p);
  if (p == 0) {
    out.at(0) = w.at(0);
    return out;
  }
  std::vector<VectorField> images;
  for (std::size_t i = 0; i < pi.dimension(); ++i) images.push_back(pi_sharp(pi, OneForm::coordinate(c, i)));
  const auto& idx = out.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    std::vector<VectorField> args;
    for (auto i : idx[k]) args.push_back(images[i]);
    out.at(k) = evaluate(split, w, args);
  }
  return out;
}

PVector naturality_residual(const Bivector& pi, const FoliationSplit& split, const LeafwiseForm& w) {
  return pi_pushforward(pi, split, leafwise_d(split, w)) - d_pi(pi, pi_pushforward(pi, split, w));
}

void require_basic(const FoliationSplit& split, const PForm& w) {
  const PForm dw = exterior_d(w);
  for (const auto& x : split.ts_frame) {
    if (w.degree() > 0) {
      const PForm iw = interior(x, w);
      if (!iw.is_zero()) throw Error(ErrorKind::NotBasic, "i_X w = " + iw.str() + " for X = " + x.str());
    }
    const PForm idw = interior(x, dw);
    if (!idw.is_zero()) throw Error(ErrorKind::NotBasic, "i_X dw = " + idw.str() + " for X = " + x.str());
  }
}

PVector sharp_basic(const CoMetric& g, const FoliationSplit& split, const PForm& w) {
  require_basic(split, w);
  const auto& c = g.chart();
  const std::size_t p = w.degree();
  PVector out(c, p);
  if (p == 0) {
    out.at(0) = w.at(0);
    return out;
  }
  std::vector<VectorField> images;
  for (std::size_t i = 0; i < g.dimension(); ++i) images.push_back(metric_sharp(g, OneForm::coordinate(c, i)));
  const auto& idx = out.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    std::vector<VectorField> args;
    for (auto i : idx[k]) args.push_back(images[i]);
    out.at(k) = evaluate(w, args);
  }
  return out;
}

PVector sharp_basic_residual(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, const PForm& w) {
  return d_pi(pi, sharp_basic(g, split, w));
}

std::vector<PForm> basic_form_family(const Bivector& pi, const FoliationSplit& split, std::size_t p, unsigned d) {
  std::vector<PForm> out;
  const auto& c = pi.chart();
  const auto cas = casimir_monomials(pi, d);
  const std::size_t q = split.kernel_frame.size();
  if (p > q) return out;
  for (const auto& idx : increasing_indices(q, p)) {
    const PForm k = wedge_of(c, split.kernel_frame, idx);
    for (const auto& f : cas) {
      PForm w = f * k;
      try {
        require_basic(split, w);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotBasic) throw;
        continue;
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

ComparisonReport cohomology_comparison(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, std::size_t p,
                                 unsigned d) {
  ComparisonReport rep;
  rep.p = p;
  rep.d = d;
  const auto& c = pi.chart();

  const auto family = basic_form_family(pi, split, p, d);
  std::vector<std::vector<Polynomial>> coeffs;
  for (const auto& w : family) {
    const PVector r = sharp_basic_residual(pi, g, split, w);
    if (!r.is_zero()) {
      rep.sharp_closed = false;
      if (rep.witness.empty()) rep.witness = "d_pi #(" + w.str() + ") = " + r.str();
    }
    std::vector<Polynomial> comps;
    for (std::size_t k = 0; k < w.size(); ++k) comps.push_back(polynomial_of(w.at(k), "basic form"));
    coeffs.push_back(std::move(comps));
  }
  rep.basic_count = coefficient_rank(coeffs);

  rep.poisson = truncated_betti(pi, p, d);
  if (p <= split.rank) {
    const PolynomialComplex leaf = leafwise_complex(split);
    rep.leafwise = truncated_betti(leaf, p, d);
    const GradedBasis basis(leaf.nvars, leaf.slots, p, d);
    for (const auto& v : closed_cochains(leaf, p, d)) {
      LeafwiseForm w(c, split.rank, p);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        const auto& table = w.indices();
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(table.begin(), table.end(), basis.tuple_at(i)) - table.begin());
        w.at(pos) += ScalarField(c, Polynomial::term(basis.monomial_at(i), v[i]));
      }
      const PVector r = d_pi(pi, pi_pushforward(pi, split, w));
      if (!r.is_zero()) {
        rep.pushforward_closed = false;
        if (rep.witness.empty()) rep.witness = "d_pi pi(w) = " + r.str();
      }
    }
  } else {
    rep.leafwise.p = p;
    rep.leafwise.d = d;
  }
  if (p == 1) rep.dimensions_agree = rep.poisson.betti == rep.basic_count + rep.leafwise.betti;
  return rep;
}

}  // namespace rpgeom
