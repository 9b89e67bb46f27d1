#pragma once

#include <array>
#include <optional>

#include "rpgeom/poisson.hpp"

namespace rpgeom {

/// Symmetric matrix G_ij = <dx^i, dx^j> of a metric on the cotangent bundle.
class CoMetric {
 public:
  /// Throws NotSymmetric.
  explicit CoMetric(FieldMatrix matrix);
  static CoMetric identity(const ChartPtr& chart);

  const ChartPtr& chart() const { return m_.chart(); }
  std::size_t dimension() const { return m_.rows(); }
  const FieldMatrix& matrix() const { return m_; }
  const ScalarField& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  ScalarField operator()(const OneForm& a, const OneForm& b) const;

  friend bool operator==(const CoMetric& a, const CoMetric& b) { return a.m_ == b.m_; }

 private:
  FieldMatrix m_;
};

/// The vector field #a with b(#a) = <a, b>.
VectorField metric_sharp(const CoMetric& g, const OneForm& a);

/// First sample where some leading principal minor is not positive.
std::optional<RationalPoint> positive_definite_failure(const FieldMatrix& g, const std::vector<RationalPoint>& samples);
/// Throws NotPositiveDefiniteAt on failure.
void validate_cometric(const CoMetric& g, const std::vector<RationalPoint>& samples);

/// D_{dx^i} dx^j = sum_k gamma(i,j,k) dx^k.
class ChristoffelTable {
 public:
  explicit ChristoffelTable(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dimension() const { return chart_->dimension(); }
  ScalarField& operator()(std::size_t i, std::size_t j, std::size_t k) { return g_[(i * n_ + j) * n_ + k]; }
  const ScalarField& operator()(std::size_t i, std::size_t j, std::size_t k) const { return g_[(i * n_ + j) * n_ + k]; }
  OneForm basis(std::size_t i, std::size_t j) const;
  bool is_zero() const;

  friend bool operator==(const ChristoffelTable& a, const ChristoffelTable& b) { return a.g_ == b.g_; }

 private:
  ChartPtr chart_;
  std::size_t n_;
  std::vector<ScalarField> g_;
};

/// Throws SingularMetric when G is not invertible.
ChristoffelTable levi_civita(const Bivector& pi, const CoMetric& g);

/// D_a b extended from the table by the contravariant Leibniz rule.
OneForm covariant_derivative(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b);

OneForm torsion_defect(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b);
ScalarField metric_defect(const ChristoffelTable& d, const CoMetric& g, const Bivector& pi, const OneForm& a,
                          const OneForm& b, const OneForm& c);

/// D pi(a,b,c) = pi(a).pi(b,c) - pi(D_a b, c) - pi(b, D_a c).
ScalarField d_pi_tensor(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b,
                        const OneForm& c);
ScalarField cyclic_d_pi(const ChristoffelTable& d, const Bivector& pi, const OneForm& a, const OneForm& b,
                        const OneForm& c);

struct DpiWitness {
  std::array<std::size_t, 3> indices;
  ScalarField value;
};

/// First coordinate triple with nonzero D pi, if any.
std::optional<DpiWitness> riemann_poisson_witness(const ChristoffelTable& d, const Bivector& pi);
bool is_riemann_poisson(const Bivector& pi, const CoMetric& g);

}  // namespace rpgeom
