#include "rpgeom/linalg.hpp"

#include "rpgeom/error.hpp"

namespace rpgeom {

FieldMatrix::FieldMatrix(ChartPtr chart, std::size_t rows, std::size_t cols)
    : chart_(std::move(chart)), rows_(rows), cols_(cols), data_(rows * cols, ScalarField(chart_)) {}

FieldMatrix FieldMatrix::identity(const ChartPtr& chart, std::size_t n) {
  FieldMatrix m(chart, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarField(chart, Rational(1));
  return m;
}

FieldMatrix FieldMatrix::column(const std::vector<ScalarField>& entries) {
  if (entries.empty()) throw Error(ErrorKind::DimensionMismatch, "empty column");
  FieldMatrix m(entries.front().chart(), entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(chart_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<ScalarField> FieldMatrix::column_vector(std::size_t j) const {
  std::vector<ScalarField> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

bool FieldMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool FieldMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

bool FieldMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!(*this)(i, i).is_zero()) return false;
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == -(*this)(j, i))) return false;
    }
  }
  return true;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  require_same_chart(a.chart_, b.chart_);
  FieldMatrix c(a.chart_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ScalarField& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  FieldMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
  FieldMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Polynomial image of a field matrix: row i of `entries` is row i of the
// input scaled by `scale[i]`, the lcm of that row's denominators.
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Polynomial> entries;
  std::vector<Polynomial> scale;

  Polynomial& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(a, j), at(b, j));
    std::swap(scale[a], scale[b]);
  }
};

PolyMatrix clear_denominators(const FieldMatrix& m) {
  PolyMatrix p{m.rows(), m.cols(), std::vector<Polynomial>(m.rows() * m.cols()), {}};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Polynomial lcm = Polynomial::constant(1);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Polynomial& d = m(i, j).denominator();
      if (d.is_constant()) continue;
      lcm = lcm * divide_exact(d, gcd(lcm, d));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const ScalarField& e = m(i, j);
      if (e.is_zero()) continue;
      p.at(i, j) = e.numerator() * divide_exact(lcm, e.denominator());
    }
    p.scale.push_back(std::move(lcm));
  }
  return p;
}

std::size_t complexity(const Polynomial& f) { return f.terms().size() * 4 + f.total_degree(); }

// Fraction-free elimination over the polynomial ring; every division is
// exact. With `jordan` set, entries above each pivot are cleared as well.
// Only the first `ncols` columns are eligible as pivots. Returns pivot
// columns; `sign` tracks row swaps and `last` the final pivot.
std::vector<std::size_t> bareiss(PolyMatrix& a, std::size_t ncols, bool jordan, int* sign = nullptr) {
  std::vector<std::size_t> pivots;
  Polynomial prev = Polynomial::constant(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.rows; ++c) {
    std::size_t best = a.rows;
    for (std::size_t i = r; i < a.rows; ++i) {
      if (a.at(i, c).is_zero()) continue;
      if (best == a.rows || complexity(a.at(i, c)) < complexity(a.at(best, c))) best = i;
    }
    if (best == a.rows) continue;
    if (best != r) {
      a.swap_rows(best, r);
      if (sign) *sign = -*sign;
    }
    const Polynomial pivot = a.at(r, c);
    for (std::size_t i = jordan ? 0 : r + 1; i < a.rows; ++i) {
      if (i == r) continue;
      const Polynomial lead = a.at(i, c);
      for (std::size_t j = 0; j < a.cols; ++j) {
        if (j == c) continue;
        Polynomial& e = a.at(i, j);
        if (lead.is_zero()) {
          if (!e.is_zero()) e = divide_exact(pivot * e, prev);
        } else if (a.at(r, j).is_zero()) {
          if (!e.is_zero()) e = divide_exact(pivot * e, prev);
        } else {
          e = divide_exact(pivot * e - lead * a.at(r, j), prev);
        }
      }
      a.at(i, c) = Polynomial();
    }
    prev = pivot;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon row_reduce(const FieldMatrix& m) {
  PolyMatrix a = clear_denominators(m);
  auto pivots = bareiss(a, a.cols, true);
  FieldMatrix reduced(m.chart(), m.rows(), m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const Polynomial& p = a.at(k, pivots[k]);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!a.at(k, j).is_zero()) reduced(k, j) = ScalarField(m.chart(), a.at(k, j), p);
    }
  }
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) {
  PolyMatrix a = clear_denominators(m);
  return bareiss(a, a.cols, false).size();
}

std::vector<std::vector<ScalarField>> kernel_basis(const FieldMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<ScalarField>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<ScalarField> v(m.cols(), ScalarField(m.chart()));
    v[free] = ScalarField(m.chart(), Rational(1));
    for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) {
      v[e.pivot_columns[k]] = -e.reduced(k, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

FieldMatrix augment(const FieldMatrix& m, const FieldMatrix& rhs) {
  if (m.rows() != rhs.rows()) throw Error(ErrorKind::DimensionMismatch, "solve: row count mismatch");
  FieldMatrix aug(m.chart(), m.rows(), m.cols() + rhs.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, m.cols() + j) = rhs(i, j);
  }
  return aug;
}

}  // namespace

std::optional<FieldMatrix> try_solve(const FieldMatrix& m, const FieldMatrix& rhs) {
  PolyMatrix a = clear_denominators(augment(m, rhs));
  auto pivots = bareiss(a, m.cols(), true);
  for (std::size_t i = pivots.size(); i < a.rows; ++i) {
    for (std::size_t j = m.cols(); j < a.cols; ++j) {
      if (!a.at(i, j).is_zero()) return std::nullopt;
    }
  }
  FieldMatrix x(m.chart(), m.cols(), rhs.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const Polynomial& p = a.at(k, pivots[k]);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      const Polynomial& e = a.at(k, m.cols() + j);
      if (!e.is_zero()) x(pivots[k], j) = ScalarField(m.chart(), e, p);
    }
  }
  return x;
}

FieldMatrix solve_linear(const FieldMatrix& m, const FieldMatrix& rhs) {
  auto x = try_solve(m, rhs);
  if (!x) throw Error(ErrorKind::SingularMatrix, "linear system is inconsistent");
  return std::move(*x);
}

FieldMatrix inverse(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  if (rank(m) != m.rows()) throw Error(ErrorKind::SingularMatrix, "determinant vanishes identically");
  return solve_linear(m, FieldMatrix::identity(m.chart(), m.rows()));
}

ScalarField determinant(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  PolyMatrix a = clear_denominators(m);
  int sign = 1;
  auto pivots = bareiss(a, a.cols, false, &sign);
  if (pivots.size() != m.rows()) return ScalarField(m.chart());
  Polynomial scale = Polynomial::constant(1);
  for (const auto& s : a.scale) scale = scale * s;
  return ScalarField(m.chart(), a.at(m.rows() - 1, m.cols() - 1) * Rational(sign), scale);
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

bool RationalMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (e != 0) return false;
  }
  return true;
}

RationalMatrix RationalMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  RationalMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  }
  return out;
}

RationalMatrix RationalMatrix::hconcat(const RationalMatrix& other) const {
  if (rows_ != other.rows_) throw Error(ErrorKind::DimensionMismatch, "hconcat row mismatch");
  RationalMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return c;
}

std::size_t rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      a[i * cols + j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
    }
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    const mpz_class pivot = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class& e = a[i * cols + j];
        e = pivot * e - lead * a[r * cols + j];
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
  RationalMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix evaluate(const FieldMatrix& m, std::span<const Rational> point) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(point);
  }
  return out;
}

}  // namespace rpgeom
