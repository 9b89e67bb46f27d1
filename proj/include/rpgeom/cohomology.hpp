#pragma once

#include <functional>
#include <map>
#include <string>

#include "rpgeom/foliation.hpp"

namespace rpgeom {

/// Monomial coefficient (degree <= d) times coordinate p-tuple, ordered by
/// monomial (graded lex, ascending) and then tuple.
class GradedBasis {
 public:
  /// `slots` is the number of frame directions the tuples range over.
  GradedBasis(std::size_t nvars, std::size_t slots, std::size_t p, unsigned d);

  std::size_t p() const { return p_; }
  unsigned d() const { return d_; }
  std::size_t size() const { return monos_.size() * tuples().size(); }
  const std::vector<Monomial>& monomials() const { return monos_; }
  const std::vector<MultiIndex>& tuples() const { return increasing_indices(slots_, p_); }

  const Monomial& monomial_at(std::size_t pos) const { return monos_[pos / tuples().size()]; }
  const MultiIndex& tuple_at(std::size_t pos) const { return tuples()[pos % tuples().size()]; }
  /// nullopt when the monomial is outside the window.
  std::optional<std::size_t> index_of(const Monomial& m, std::size_t tuple_pos) const;

 private:
  std::size_t nvars_;
  std::size_t slots_;
  std::size_t p_;
  unsigned d_;
  std::vector<Monomial> monos_;
  std::map<Monomial, std::size_t> pos_;
};

/// A cochain complex on polynomial coefficients over a fixed frame. `apply`
/// maps a basis element (monomial, p-tuple) to its image components, indexed
/// like increasing_indices(slots, p+1). Output degree = input degree + shift
/// for shift in [shift_min, shift_max].
struct PolynomialComplex {
  std::size_t nvars = 0;
  std::size_t slots = 0;
  int shift_min = 0;
  int shift_max = 0;
  std::function<std::vector<Polynomial>(std::size_t p, const Monomial&, const MultiIndex&)> apply;
};

/// Lichnerowicz complex of a polynomial bivector. Throws NonPolynomial.
PolynomialComplex lichnerowicz_complex(const Bivector& pi);
/// Leafwise complex over ts_frame. Throws NonPolynomial when the frame or its
/// structure functions are not polynomial.
PolynomialComplex leafwise_complex(const FoliationSplit& split);

/// Matrix from GradedBasis(p, d_in) to GradedBasis(p+1, d_out). Throws WindowTooSmall.
RationalMatrix assemble(const PolynomialComplex& cx, std::size_t p, unsigned d_in, unsigned d_out);
RationalMatrix assemble_dpi_matrix(const Bivector& pi, std::size_t p, unsigned d_in, unsigned d_out);

struct BettiWindow {
  std::size_t p = 0;
  unsigned d = 0;         // coefficient degree bound for closed p-cochains
  unsigned d_prev = 0;    // degree bound for (p-1)-cochains whose image is intersected with the window
  std::size_t kernel = 0;
  std::size_t image = 0;
  std::size_t betti = 0;
  bool graded = true;     // false when the differential is not homogeneous; the count is then a window estimate
  std::string describe() const;
};

/// dim ker(d | p, deg <= d) - dim(d(C^{p-1}) cap window).
BettiWindow truncated_betti(const PolynomialComplex& cx, std::size_t p, unsigned d);
BettiWindow truncated_betti(const Bivector& pi, std::size_t p, unsigned d);
/// Closed p-cochains in the window as coefficient vectors over GradedBasis(p, d).
std::vector<std::vector<Rational>> closed_cochains(const PolynomialComplex& cx, std::size_t p, unsigned d);

/// Q = Q0 + Q1 with i_k Q0 = 0 for kernel forms k and Q1 vanishing on (Ker pi)^perp.
std::pair<PVector, PVector> split_multivector(const PVector& q, const FoliationSplit& split);

struct SplitPreservation {
  bool preserved0 = true;
  bool preserved1 = true;
  std::size_t checked = 0;
  std::string witness;
};

/// d_pi maps the two summands into themselves on the window basis.
SplitPreservation dpi_preserves_split(const Bivector& pi, const FoliationSplit& split, std::size_t p, unsigned d);

/// pi(w)(a_1..a_p) = w(pi(a_1), .., pi(a_p)).
PVector pi_pushforward(const Bivector& pi, const FoliationSplit& split, const LeafwiseForm& w);
/// pi(d_F w) - d_pi(pi(w)).
PVector naturality_residual(const Bivector& pi, const FoliationSplit& split, const LeafwiseForm& w);

/// Throws NotBasic with the failing contraction.
void require_basic(const FoliationSplit& split, const PForm& w);
/// #(w)(a_1..a_p) = w(#a_1, .., #a_p). Throws NotBasic.
PVector sharp_basic(const CoMetric& g, const FoliationSplit& split, const PForm& w);
/// d_pi #(w); zero for basic w on Riemann Poisson manifolds.
PVector sharp_basic_residual(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, const PForm& w);

/// Basic p-forms: wedges of kernel frame forms times Casimir monomials of degree <= d.
std::vector<PForm> basic_form_family(const Bivector& pi, const FoliationSplit& split, std::size_t p, unsigned d);

struct ComparisonReport {
  std::size_t p = 0;
  unsigned d = 0;
  bool sharp_closed = true;        // #(basic) is d_pi-closed
  bool pushforward_closed = true;  // pi(d_F-closed) is d_pi-closed
  std::size_t basic_count = 0;     // independent basic forms in the window
  BettiWindow poisson;
  BettiWindow leafwise;
  bool dimensions_agree = true;    // only meaningful for p = 1
  std::string witness;
};

ComparisonReport cohomology_comparison(const Bivector& pi, const CoMetric& g, const FoliationSplit& split, std::size_t p,
                                 unsigned d);

}  // namespace rpgeom
