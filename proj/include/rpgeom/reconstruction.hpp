#pragma once

#include <string>

#include "rpgeom/foliation.hpp"

namespace rpgeom {

/// A foliation with a leafwise symplectic form and a metric on TP.
struct FoliationInput {
  ChartPtr chart;
  std::vector<VectorField> f_frame;
  FieldMatrix tangent_metric;
  PForm omega;  // i_v omega = 0 for v orthogonal to the leaves
  std::vector<RationalPoint> samples;
};

struct InputReport {
  std::size_t rank = 0;
  std::vector<VectorField> perp_frame;     // spans F', the g-orthogonal of F
  std::vector<VectorField> foliate_frame;  // foliate fields spanning F'
};

/// Orthogonal complement of the leaves. Throws RankNotConstant, NotSymmetric, NotPositiveDefiniteAt.
std::vector<VectorField> orthogonal_frame(const FoliationInput& in);

/// Foliate fields spanning F' with polynomial coefficients of degree <= max_degree
/// against orthogonal_frame. Throws Inconclusive when none span.
std::vector<VectorField> foliate_perpendicular_frame(const FoliationInput& in, const std::vector<VectorField>& perp,
                                                     unsigned max_degree = 2);

/// Throws NotInvolutive, OmegaNotTangential, DegenerateOmegaAt, NotLeafwiseClosed,
/// InvarianceFails, NotBundleLike, Inconclusive, and CertificationFailed when
/// omega is not parallel along the leaves.
InputReport validate_input(const FoliationInput& in);

struct Structure {
  Bivector pi;
  CoMetric cometric;
  std::vector<OneForm> annihilator;       // forms vanishing on F
  std::vector<OneForm> perp_annihilator;  // forms vanishing on F'
};

/// Assembles pi and the cotangent metric. Throws DegenerateOmegaAt, NotPositiveDefiniteAt.
Structure build_structure(const FoliationInput& in);

struct Certificate {
  bool poisson = false;
  bool riemann_poisson = false;
  bool kernel_matches = false;
};

/// Throws CertificationFailed naming the failing identity.
Certificate certify(const Structure& s, std::size_t rank);

struct RoundTrip {
  bool pi_equal = false;
  bool metric_equal = false;
  Structure rebuilt;
};

/// The foliation data of (pi, g): leaves TS, induced tangent metric, leafwise form.
FoliationInput extract_input(const Bivector& pi, const CoMetric& g, std::size_t rank,
                             const std::vector<RationalPoint>& samples);
RoundTrip round_trip(const Bivector& pi, const CoMetric& g, std::size_t rank, const std::vector<RationalPoint>& samples);

}  // namespace rpgeom
