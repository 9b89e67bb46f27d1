#pragma once

#include <optional>
#include <vector>

#include "rpgeom/scalar_field.hpp"

namespace rpgeom {

/// Dense matrix of scalar fields sharing one chart.
class FieldMatrix {
 public:
  FieldMatrix(ChartPtr chart, std::size_t rows, std::size_t cols);
  static FieldMatrix identity(const ChartPtr& chart, std::size_t n);
  static FieldMatrix column(const std::vector<ScalarField>& entries);

  const ChartPtr& chart() const { return chart_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  ScalarField& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ScalarField& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  FieldMatrix transpose() const;
  std::vector<ScalarField> column_vector(std::size_t j) const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  ChartPtr chart_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ScalarField> data_;
};

/// Reduced row echelon form computed by fraction-free (Bareiss) forward
/// elimination followed by back substitution.
struct Echelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

Echelon row_reduce(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);
/// Basis of the right kernel, one vector per free column.
std::vector<std::vector<ScalarField>> kernel_basis(const FieldMatrix& m);
/// Particular solution of m * x = rhs; nullopt when inconsistent.
std::optional<FieldMatrix> try_solve(const FieldMatrix& m, const FieldMatrix& rhs);
/// Solution of m * x = rhs; throws SingularMatrix when inconsistent.
FieldMatrix solve_linear(const FieldMatrix& m, const FieldMatrix& rhs);
/// Throws SingularMatrix when the determinant vanishes identically.
FieldMatrix inverse(const FieldMatrix& m);
ScalarField determinant(const FieldMatrix& m);

/// Dense matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  RationalMatrix select_rows(const std::vector<std::size_t>& rows) const;
  RationalMatrix hconcat(const RationalMatrix& other) const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact rank by integer Bareiss elimination.
std::size_t rank(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);
RationalMatrix evaluate(const FieldMatrix& m, std::span<const Rational> point);

}  // namespace rpgeom
