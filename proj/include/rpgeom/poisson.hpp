#pragma once

#include <array>
#include <optional>

#include "rpgeom/linalg.hpp"
#include "rpgeom/tensor.hpp"

namespace rpgeom {

/// Antisymmetric matrix pi_ij = pi(dx^i, dx^j).
class Bivector {
 public:
  /// Throws NotAntisymmetric.
  explicit Bivector(FieldMatrix matrix);
  static Bivector zero(const ChartPtr& chart);
  static Bivector from_pvector(const PVector& q);

  const ChartPtr& chart() const { return m_.chart(); }
  std::size_t dimension() const { return m_.rows(); }
  const FieldMatrix& matrix() const { return m_; }
  const ScalarField& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  ScalarField operator()(const OneForm& a, const OneForm& b) const;
  PVector as_pvector() const;
  bool is_polynomial() const;

  friend bool operator==(const Bivector& a, const Bivector& b) { return a.m_ == b.m_; }

 private:
  FieldMatrix m_;
};

/// The vector field V with b(V) = pi(a, b).
VectorField pi_sharp(const Bivector& pi, const OneForm& a);
ScalarField fn_bracket(const Bivector& pi, const ScalarField& f, const ScalarField& g);
ScalarField jacobiator(const Bivector& pi, const ScalarField& f, const ScalarField& g, const ScalarField& h);
/// First coordinate triple i<j<k with nonzero jacobiator, if any.
std::optional<std::array<std::size_t, 3>> jacobi_witness(const Bivector& pi);
bool is_poisson(const Bivector& pi);

/// Both expressions of the bracket (Lie derivative form and contraction form)
/// are computed; throws InternalInconsistency if they differ.
OneForm koszul_bracket(const Bivector& pi, const OneForm& a, const OneForm& b);
/// Lie derivative form only; cheaper.
OneForm koszul_bracket_fast(const Bivector& pi, const OneForm& a, const OneForm& b);

/// pi_sharp([a,b]) - [pi_sharp a, pi_sharp b].
VectorField homomorphism_defect(const Bivector& pi, const OneForm& a, const OneForm& b);

/// Lichnerowicz differential, evaluated on coordinate form tuples. For
/// functions this gives d_pi f = -pi_sharp(df).
PVector d_pi(const Bivector& pi, const PVector& q);

bool is_casimir(const Bivector& pi, const ScalarField& f);

}  // namespace rpgeom
