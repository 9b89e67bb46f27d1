#include "rpgeom/poisson.hpp"

#include "rpgeom/error.hpp"

namespace rpgeom {

Bivector::Bivector(FieldMatrix matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() != m_.chart()->dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "bivector matrix must be n x n");
  }
  if (!m_.is_antisymmetric()) throw Error(ErrorKind::NotAntisymmetric, "bivector matrix is not antisymmetric");
}

Bivector Bivector::zero(const ChartPtr& chart) {
  return Bivector(FieldMatrix(chart, chart->dimension(), chart->dimension()));
}

Bivector Bivector::from_pvector(const PVector& q) {
  if (q.degree() != 2) throw Error(ErrorKind::DimensionMismatch, "expected a 2-vector");
  const std::size_t n = q.dimension();
  FieldMatrix m(q.chart(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m(i, j) = q.get({i, j});
    }
  }
  return Bivector(std::move(m));
}

ScalarField Bivector::operator()(const OneForm& a, const OneForm& b) const {
  require_same_chart(chart(), a.chart());
  require_same_chart(chart(), b.chart());
  ScalarField acc(chart());
  const std::size_t n = dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b[j].is_zero() && !m_(i, j).is_zero()) acc += a[i] * m_(i, j) * b[j];
    }
  }
  return acc;
}

PVector Bivector::as_pvector() const {
  PVector q(chart(), 2);
  for (const auto& idx : q.indices()) q.set(idx, m_(idx[0], idx[1]));
  return q;
}

bool Bivector::is_polynomial() const {
  for (std::size_t i = 0; i < dimension(); ++i) {
    for (std::size_t j = 0; j < dimension(); ++j) {
      if (!m_(i, j).is_polynomial()) return false;
    }
  }
  return true;
}

VectorField pi_sharp(const Bivector& pi, const OneForm& a) {
  require_same_chart(pi.chart(), a.chart());
  const std::size_t n = pi.dimension();
  VectorField v(pi.chart());
  for (std::size_t j = 0; j < n; ++j) {
    ScalarField acc(pi.chart());
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i].is_zero() && !pi(i, j).is_zero()) acc += a[i] * pi(i, j);
    }
    v[j] = std::move(acc);
  }
  return v;
}

ScalarField fn_bracket(const Bivector& pi, const ScalarField& f, const ScalarField& g) {
  return pi(OneForm::differential(f), OneForm::differential(g));
}

ScalarField jacobiator(const Bivector& pi, const ScalarField& f, const ScalarField& g, const ScalarField& h) {
  return fn_bracket(pi, fn_bracket(pi, f, g), h) + fn_bracket(pi, fn_bracket(pi, g, h), f) +
         fn_bracket(pi, fn_bracket(pi, h, f), g);
}

std::optional<std::array<std::size_t, 3>> jacobi_witness(const Bivector& pi) {
  const auto& c = pi.chart();
  if (pi.dimension() < 3) return std::nullopt;
  for (const auto& t : increasing_indices(pi.dimension(), 3)) {
    auto x = [&](std::size_t k) { return ScalarField::coordinate(c, t[k]); };
    if (!jacobiator(pi, x(0), x(1), x(2)).is_zero()) return std::array<std::size_t, 3>{t[0], t[1], t[2]};
  }
  return std::nullopt;
}

bool is_poisson(const Bivector& pi) { return !jacobi_witness(pi); }

OneForm koszul_bracket_fast(const Bivector& pi, const OneForm& a, const OneForm& b) {
  return lie_derivative(pi_sharp(pi, a), b) - lie_derivative(pi_sharp(pi, b), a) -
         OneForm::differential(pi(a, b));
}

OneForm koszul_bracket(const Bivector& pi, const OneForm& a, const OneForm& b) {
  OneForm first = koszul_bracket_fast(pi, a, b);
  OneForm second = to_one_form(interior(pi_sharp(pi, a), exterior_d(to_pform(b))) -
                               interior(pi_sharp(pi, b), exterior_d(to_pform(a)))) +
                   OneForm::differential(pi(a, b));
  if (!(first == second)) {
    throw Error(ErrorKind::InternalInconsistency, "the two expressions of the Koszul bracket disagree");
  }
  return first;
}

VectorField homomorphism_defect(const Bivector& pi, const OneForm& a, const OneForm& b) {
  return pi_sharp(pi, koszul_bracket_fast(pi, a, b)) - lie_bracket(pi_sharp(pi, a), pi_sharp(pi, b));
}

PVector d_pi(const Bivector& pi, const PVector& q) {
  require_same_chart(pi.chart(), q.chart());
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  const std::size_t p = q.degree();
  if (p >= n) throw Error(ErrorKind::DegreeOverflow, "d_pi of a top-degree multivector");

  std::vector<OneForm> dx;
  std::vector<VectorField> sharp;
  for (std::size_t i = 0; i < n; ++i) {
    dx.push_back(OneForm::coordinate(c, i));
    sharp.push_back(pi_sharp(pi, dx.back()));
  }
  // [dx^i, dx^j]_pi = d(pi_ij) for coordinate forms.
  std::vector<std::vector<OneForm>> bracket(n, std::vector<OneForm>(n, OneForm(c)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) bracket[i][j] = OneForm::differential(pi(i, j));
    }
  }

  PVector out(c, p + 1);
  const auto& idx = out.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const MultiIndex& a = idx[k];
    ScalarField acc(c);
    for (std::size_t j = 0; j <= p; ++j) {
      MultiIndex rest = a;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      ScalarField term = sharp[a[j]].apply(q.get(rest));
      if (j % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    for (std::size_t i = 0; i <= p; ++i) {
      for (std::size_t j = i + 1; j <= p; ++j) {
        const OneForm& br = bracket[a[i]][a[j]];
        if (br.is_zero()) continue;
        std::vector<OneForm> args{br};
        for (std::size_t m = 0; m <= p; ++m) {
          if (m != i && m != j) args.push_back(dx[a[m]]);
        }
        ScalarField term = evaluate(q, args);
        if ((i + j) % 2 == 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
    }
    out.at(k) = std::move(acc);
  }
  return out;
}

bool is_casimir(const Bivector& pi, const ScalarField& f) { return pi_sharp(pi, OneForm::differential(f)).is_zero(); }

}  // namespace rpgeom
