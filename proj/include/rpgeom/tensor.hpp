#pragma once

#include <cstdint>
#include <vector>

#include "rpgeom/scalar_field.hpp"

namespace rpgeom {

/// Strictly increasing coordinate indices.
using MultiIndex = std::vector<std::size_t>;

/// All strictly increasing p-tuples from {0..n-1}, in lexicographic order.
const std::vector<MultiIndex>& increasing_indices(std::size_t n, std::size_t p);
std::size_t binomial(std::size_t n, std::size_t k);

/// Sorts an arbitrary index tuple. Returns the permutation sign, or 0 when an
/// index repeats.
int sort_with_sign(MultiIndex& idx);

class OneForm;

class VectorField {
 public:
  explicit VectorField(ChartPtr chart);
  explicit VectorField(std::vector<ScalarField> components);
  static VectorField coordinate(const ChartPtr& chart, std::size_t i);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dimension() const { return comps_.size(); }
  const std::vector<ScalarField>& components() const { return comps_; }
  ScalarField& operator[](std::size_t i) { return comps_[i]; }
  const ScalarField& operator[](std::size_t i) const { return comps_[i]; }

  bool is_zero() const;
  /// Directional derivative X(f).
  ScalarField apply(const ScalarField& f) const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const ScalarField& f, VectorField v);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }

  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<ScalarField> comps_;
};

class OneForm {
 public:
  explicit OneForm(ChartPtr chart);
  explicit OneForm(std::vector<ScalarField> components);
  static OneForm coordinate(const ChartPtr& chart, std::size_t i);
  static OneForm differential(const ScalarField& f);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dimension() const { return comps_.size(); }
  const std::vector<ScalarField>& components() const { return comps_; }
  ScalarField& operator[](std::size_t i) { return comps_[i]; }
  const ScalarField& operator[](std::size_t i) const { return comps_[i]; }

  bool is_zero() const;
  ScalarField operator()(const VectorField& v) const;

  OneForm operator-() const;
  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const ScalarField& f, OneForm a);
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.comps_ == b.comps_; }

  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<ScalarField> comps_;
};

enum class Variance { Covariant, Contravariant };

/// Totally antisymmetric tensor of degree p. Components are stored for
/// strictly increasing index tuples; value on coordinate arguments equals the
/// component, so (dx^dy)(d/dx, d/dy) = 1.
template <Variance V>
class Alternating {
 public:
  Alternating(ChartPtr chart, std::size_t degree);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dimension() const { return chart_->dimension(); }
  std::size_t degree() const { return degree_; }
  const std::vector<MultiIndex>& indices() const { return increasing_indices(dimension(), degree_); }
  std::size_t size() const { return comps_.size(); }

  /// Component by position in indices().
  ScalarField& at(std::size_t pos) { return comps_[pos]; }
  const ScalarField& at(std::size_t pos) const { return comps_[pos]; }
  /// Component for an arbitrary tuple, with antisymmetry sign applied.
  ScalarField get(MultiIndex idx) const;
  /// Sets the component of an increasing tuple.
  void set(const MultiIndex& idx, ScalarField value);
  void add(MultiIndex idx, const ScalarField& value);

  bool is_zero() const;

  Alternating operator-() const;
  Alternating& operator+=(const Alternating& o);
  Alternating& operator-=(const Alternating& o);
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(const ScalarField& f, Alternating a) {
    for (auto& c : a.comps_) c = f * c;
    return a;
  }
  friend bool operator==(const Alternating& a, const Alternating& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  std::string str() const;

 private:
  ChartPtr chart_;
  std::size_t degree_;
  std::vector<ScalarField> comps_;
};

using PForm = Alternating<Variance::Covariant>;
using PVector = Alternating<Variance::Contravariant>;

extern template class Alternating<Variance::Covariant>;
extern template class Alternating<Variance::Contravariant>;

PForm to_pform(const ScalarField& f);
PForm to_pform(const OneForm& a);
PVector to_pvector(const ScalarField& f);
PVector to_pvector(const VectorField& v);
OneForm to_one_form(const PForm& w);
VectorField to_vector_field(const PVector& q);

PForm wedge(const PForm& a, const PForm& b);
PVector wedge(const PVector& a, const PVector& b);

/// i_X w, contraction in the first slot.
PForm interior(const VectorField& x, const PForm& w);
/// i_a Q, contraction in the first slot.
PVector interior(const OneForm& a, const PVector& q);

/// Full evaluation on p arguments.
ScalarField evaluate(const PForm& w, const std::vector<VectorField>& args);
ScalarField evaluate(const PVector& q, const std::vector<OneForm>& args);

PForm exterior_d(const PForm& w);
VectorField lie_bracket(const VectorField& x, const VectorField& y);
/// Cartan formula i_X d + d i_X.
PForm lie_derivative(const VectorField& x, const PForm& w);
OneForm lie_derivative(const VectorField& x, const OneForm& a);
/// Componentwise Leibniz expansion for multivector fields.
PVector lie_derivative(const VectorField& x, const PVector& q);

}  // namespace rpgeom
