#pragma once

#include <optional>
#include <string>

#include "rpgeom/metric.hpp"

namespace rpgeom {

/// Frames realizing T*P = Ker pi + (Ker pi)^perp and TP = TS + H.
struct FoliationSplit {
  std::size_t rank = 0;
  std::vector<OneForm> kernel_frame;
  std::vector<OneForm> perp_frame;
  std::vector<VectorField> ts_frame;  // ts_frame[a] = pi_sharp(perp_frame[a])
  std::vector<VectorField> h_frame;   // h_frame[a] = #(kernel_frame[a])
};

/// Throws RankOdd, RankNotConstant, DimensionMismatch.
FoliationSplit split_cotangent(const Bivector& pi, const CoMetric& g, std::size_t declared_rank,
                               const std::vector<RationalPoint>& samples);

/// Matrix whose columns are ts_frame then h_frame.
FieldMatrix adapted_frame(const FoliationSplit& split);
/// The form xi in span(perp_frame) with pi_sharp(xi) = u; nullopt if u is not in TS.
std::optional<OneForm> pi_inverse(const FoliationSplit& split, const VectorField& u);

/// Alternating form on TS, components on increasing tuples of ts_frame indices.
class LeafwiseForm {
 public:
  LeafwiseForm(ChartPtr chart, std::size_t rank, std::size_t degree);

  const ChartPtr& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return comps_.size(); }
  const std::vector<MultiIndex>& indices() const { return increasing_indices(rank_, degree_); }
  ScalarField& at(std::size_t pos) { return comps_[pos]; }
  const ScalarField& at(std::size_t pos) const { return comps_[pos]; }
  ScalarField get(MultiIndex idx) const;
  bool is_zero() const;

  friend bool operator==(const LeafwiseForm& a, const LeafwiseForm& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  ChartPtr chart_;
  std::size_t rank_;
  std::size_t degree_;
  std::vector<ScalarField> comps_;
};

/// omega(u, v) = pi(pi^-1 u, pi^-1 v) on ts_frame pairs. Throws SingularLeafwiseForm.
LeafwiseForm leafwise_symplectic(const Bivector& pi, const FoliationSplit& split,
                                 const std::vector<RationalPoint>& samples = {});
/// Evaluates a leafwise form on vectors tangent to TS.
ScalarField evaluate(const FoliationSplit& split, const LeafwiseForm& w, const std::vector<VectorField>& args);
/// Extends a leafwise form to P by i_v w = 0 for v in H.
PForm extend_by_zero(const FoliationSplit& split, const LeafwiseForm& w);
/// Leafwise differential on ts_frame tuples, bracket terms included.
LeafwiseForm leafwise_d(const FoliationSplit& split, const LeafwiseForm& w);
/// Coefficients c with [ts_a, ts_b] = sum_k c[k] ts_k. Throws NotInvolutive.
std::vector<ScalarField> ts_structure(const FoliationSplit& split, std::size_t a, std::size_t b);

/// Tangent metric: <pi^-1 u, pi^-1 v> on TS, <a, b> on H = #(Ker pi), zero across.
FieldMatrix induced_tangent_metric(const CoMetric& g, const FoliationSplit& split);

/// nabla_{ts_a} ts_b = pi_sharp(D_{perp_a} perp_b).
std::vector<std::vector<VectorField>> leaf_connection(const ChristoffelTable& d, const Bivector& pi,
                                                      const FoliationSplit& split);
/// u.w(v,x) - w(nabla_u v, x) - w(v, nabla_u x) over frame triples.
std::vector<ScalarField> parallel_omega_residuals(const ChristoffelTable& d, const Bivector& pi,
                                                  const FoliationSplit& split);

/// pi(a) = 0 and i_{pi(dx^i)} da = 0 for every i.
bool is_basic_by_definition(const Bivector& pi, const OneForm& a);
/// [a, b] = 0 for b in {dx^i} and {x^k dx^i}.
bool is_basic_by_bracket(const Bivector& pi, const OneForm& a);

/// kernel_frame[k]([x, ts_frame[j]]) = 0 for all j, k.
bool is_foliate(const VectorField& x, const FoliationSplit& split);

/// D_b a = 0 for every coordinate form b.
bool is_parallel(const ChristoffelTable& d, const Bivector& pi, const OneForm& a);

struct BasicPredicates {
  bool basic = false;
  bool parallel = false;
  bool sharp_foliate = false;
  bool preserves_pi = false;
  bool all_agree() const {
    return basic == parallel && parallel == sharp_foliate && sharp_foliate == preserves_pi;
  }
};

BasicPredicates basic_predicates(const Bivector& pi, const CoMetric& g, const ChristoffelTable& d,
                         const FoliationSplit& split, const OneForm& a);

struct KernelChecks {
  bool kernel_image_in_kernel = true;  // pi(b) = 0 implies pi(D_a b) = 0
  bool kernel_direction_flat = true;   // pi(a) = 0 implies D_a = 0
  bool perp_closed = true;             // D and the bracket preserve (Ker pi)^perp
  std::string witness;
};

KernelChecks kernel_checks(const Bivector& pi, const CoMetric& g, const ChristoffelTable& d, const FoliationSplit& split);

/// [a,b]_pi(x) - L_x pi(a,b). Zero whenever a(x) = b(x) = 0.
ScalarField bracket_invariance_residual(const Bivector& pi, const OneForm& a, const OneForm& b, const VectorField& x);
/// pi(a).b(x) - pi(b).a(x), the value of bracket_invariance_residual for arbitrary x.
ScalarField bracket_invariance_correction(const Bivector& pi, const OneForm& a, const OneForm& b, const VectorField& x);
/// L_x pi(a, b) for a, b in perp_frame and x in h_frame.
std::vector<ScalarField> transverse_invariance_values(const Bivector& pi, const FoliationSplit& split);

/// Monomials of total degree <= degree that are Casimir functions.
std::vector<ScalarField> casimir_monomials(const Bivector& pi, unsigned degree);
/// Kernel frame elements times Casimir monomials, kept when basic.
std::vector<OneForm> basic_one_form_family(const Bivector& pi, const FoliationSplit& split, unsigned degree);

struct BundleLike {
  bool pass = true;
  std::size_t pairs = 0;
  std::string witness;
};

/// For basic a, b in the family: g(#a, #b) = <a, b> and it is a Casimir.
BundleLike bundle_like_check(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, unsigned degree = 2);

}  // namespace rpgeom
