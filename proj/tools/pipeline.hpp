#pragma once

#include <optional>

#include "spec_io.hpp"

namespace rpverify {

inline constexpr const char* kToolVersion = "0.3.0";

struct Witness {
  std::string label;   // e.g. Dpi(dx,dx,dz)
  rpgeom::ScalarField expr;
  std::optional<rpgeom::RationalPoint> point;  // where expr is nonzero
  rpgeom::Rational value;
};

struct Verdict {
  std::string name;
  std::string status;  // pass, fail, skip
  std::string detail;
  std::optional<Witness> witness;
};

struct CheckResult {
  std::vector<Verdict> verdicts;
  bool failed() const;
};

/// Samples first, then a fixed grid of small rationals.
std::optional<rpgeom::RationalPoint> nonzero_point(const rpgeom::ScalarField& f,
                                                   const std::vector<rpgeom::RationalPoint>& samples);
Witness make_witness(std::string label, const rpgeom::ScalarField& f, const std::vector<rpgeom::RationalPoint>& samples);

/// Throws InputError when the cometric is not positive definite at a sample.
CheckResult run_check(const ManifoldSpec& spec);

std::string sha256_hex(const std::string& data);

nlohmann::ordered_json verdicts_json(const CheckResult& r);
std::string render_text(const CheckResult& r);

nlohmann::ordered_json christoffel_json(const ManifoldSpec& spec);
std::string christoffel_text(const ManifoldSpec& spec);

}  // namespace rpverify
