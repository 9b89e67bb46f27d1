#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "rpgeom/reconstruction.hpp"

namespace rpverify {

/// Malformed input: unreadable file, bad JSON, schema violation, or parse failure.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifoldSpec {
  std::string name;
  rpgeom::ChartPtr chart;
  rpgeom::Bivector pi;
  rpgeom::CoMetric cometric;
  std::size_t declared_rank = 0;
  std::vector<rpgeom::RationalPoint> samples;
};

struct FoliationSpec {
  std::string name;
  rpgeom::FoliationInput input;
};

std::string read_file(const std::string& path);

ManifoldSpec parse_manifold_spec(const nlohmann::json& j);
FoliationSpec parse_foliation_spec(const nlohmann::json& j);
std::vector<rpgeom::RationalPoint> parse_samples(const nlohmann::json& j, std::size_t n);
nlohmann::json parse_json(const std::string& text);

/// Serializes with upper-triangular pi and cometric entries, zero entries omitted.
nlohmann::ordered_json to_json(const ManifoldSpec& spec);

std::string point_str(const rpgeom::RationalPoint& p);

}  // namespace rpverify
