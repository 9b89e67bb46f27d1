#include "rpgeom/metric.hpp"

#include <algorithm>

#include "rpgeom/error.hpp"

namespace rpgeom {

CoMetric::CoMetric(FieldMatrix matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() != m_.chart()->dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "cometric matrix must be n x n");
  }
  if (!m_.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "cometric matrix is not symmetric");
}

CoMetric CoMetric::identity(const ChartPtr& chart) { return CoMetric(FieldMatrix::identity(chart, chart->dimension())); }

ScalarField CoMetric::operator()(const OneForm& a, const OneForm& b) const {
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

VectorField metric_sharp(const CoMetric& g, const OneForm& a) {
  require_same_chart(g.chart(), a.chart());
  const std::size_t n = g.dimension();
  VectorField v(g.chart());
  for (std::size_t j = 0; j < n; ++j) {
    ScalarField acc(g.chart());
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i].is_zero() && !g(i, j).is_zero()) acc += a[i] * g(i, j);
    }
    v[j] = std::move(acc);
  }
  return v;
}

std::optional<RationalPoint> positive_definite_failure(const FieldMatrix& g, const std::vector<RationalPoint>& samples) {
  for (const auto& p : samples) {
    RationalMatrix v;
    try {
      v = evaluate(g, p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleAtPoint) return p;
      throw;
    }
    for (std::size_t k = 1; k <= v.rows(); ++k) {
      RationalMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = v(i, j);
      }
      if (determinant(minor) <= 0) return p;
    }
  }
  return std::nullopt;
}

void validate_cometric(const CoMetric& g, const std::vector<RationalPoint>& samples) {
  if (samples.empty()) throw Error(ErrorKind::SchemaError, "at least one sample point is required");
  if (auto p = positive_definite_failure(g.matrix(), samples)) {
    std::string where;
    for (const auto& q : *p) where += (where.empty() ? "" : ",") + q.get_str();
    throw Error(ErrorKind::NotPositiveDefiniteAt, "cometric not positive definite at (" + where + ")");
  }
}

ChristoffelTable::ChristoffelTable(ChartPtr chart)
    : chart_(std::move(chart)), n_(chart_->dimension()), g_(n_ * n_ * n_, ScalarField(chart_)) {}

OneForm ChristoffelTable::basis(std::size_t i, std::size_t j) const {
  OneForm a(chart_);
  for (std::size_t k = 0; k < n_; ++k) a[k] = (*this)(i, j, k);
  return a;
}

bool ChristoffelTable::is_zero() const {
  return std::all_of(g_.begin(), g_.end(), [](const ScalarField& c) { return c.is_zero(); });
}

ChristoffelTable levi_civita(const Bivector& pi, const CoMetric& g) {
  require_same_chart(pi.chart(), g.chart());
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();

  std::vector<VectorField> sharp;
  for (std::size_t i = 0; i < n; ++i) sharp.push_back(pi_sharp(pi, OneForm::coordinate(c, i)));
  // <[dx^a, dx^b], dx^k> with [dx^a, dx^b] = d(pi_ab).
  auto bracket_pair = [&](std::size_t a, std::size_t b, std::size_t k) {
    ScalarField acc(c);
    if (a == b) return acc;
    const ScalarField& e = pi(a, b);
    if (e.is_constant()) return acc;
    for (std::size_t m = 0; m < n; ++m) {
      if (!g(m, k).is_zero()) acc += e.partial(m) * g(m, k);
    }
    return acc;
  };

  // Column i*n+j holds 2<D_{dx^i} dx^j, dx^k> over k.
  FieldMatrix rhs(c, n, n * n);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        ScalarField v = sharp[i].apply(g(j, k)) + sharp[j].apply(g(i, k)) - sharp[k].apply(g(i, j)) +
                        bracket_pair(i, j, k) + bracket_pair(k, i, j) + bracket_pair(k, j, i);
        rhs(k, i * n + j) = v * half;
      }
    }
  }
  if (rank(g.matrix()) < n) throw Error(ErrorKind::SingularMetric, "cometric matrix is singular");
  auto sol = try_solve(g.matrix(), rhs);
  if (!sol) throw Error(ErrorKind::SingularMetric, "cometric matrix is singular");

  ChristoffelTable table(c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) table(i, j, k) = (*sol)(k, i * n + j);
    }
  }
  return table;
}

OneForm covariant_derivative(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b) {
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  OneForm out(c);
  const VectorField along = pi_sharp(pi, a);
  for (std::size_t j = 0; j < n; ++j) {
    if (!b[j].is_zero()) out[j] += along.apply(b[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      ScalarField w = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!d(i, j, k).is_zero()) out[k] += w * d(i, j, k);
      }
    }
  }
  return out;
}

OneForm torsion_defect(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b) {
  return covariant_derivative(d, pi, a, b) - covariant_derivative(d, pi, b, a) - koszul_bracket_fast(pi, a, b);
}

ScalarField metric_defect(const ChristoffelTable& d, const CoMetric& g, const Bivector& pi, const OneForm& a,
                          const OneForm& b, const OneForm& c) {
  return pi_sharp(pi, a).apply(g(b, c)) - g(covariant_derivative(d, pi, a, b), c) -
         g(b, covariant_derivative(d, pi, a, c));
}

ScalarField d_pi_tensor(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b,
                        const OneForm& c) {
  return pi_sharp(pi, a).apply(pi(b, c)) - pi(covariant_derivative(d, pi, a, b), c) -
         pi(b, covariant_derivative(d, pi, a, c));
}

ScalarField cyclic_d_pi(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b,
                        const OneForm& c) {
  return d_pi_tensor(d, pi, a, b, c) + d_pi_tensor(d, pi, b, c, a) + d_pi_tensor(d, pi, c, a, b);
}

std::optional<DpiWitness> riemann_poisson_witness(const ChristoffelTable& d, const Bivector& pi) {
  const auto& c = pi.chart();
  const std::size_t n = pi.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ScalarField v = d_pi_tensor(d, pi, OneForm::coordinate(c, i), OneForm::coordinate(c, j), OneForm::coordinate(c, k));
        if (!v.is_zero()) return DpiWitness{{i, j, k}, v};
      }
    }
  }
  return std::nullopt;
}

bool is_riemann_poisson(const Bivector& pi, const CoMetric& g) {
  return is_poisson(pi) && !riemann_poisson_witness(levi_civita(pi, g), pi);
}

}  // namespace rpgeom
