#include "spec_io.hpp"

#include <fstream>
#include <sstream>

#include "rpgeom/error.hpp"
#include "rpgeom/parser.hpp"

using nlohmann::json;
using namespace rpgeom;

namespace rpverify {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("SchemaError: missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("SchemaError: " + where + " must be a string or integer");
}

std::size_t as_index(const json& j, const std::string& where, std::size_t n) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InputError("SchemaError: " + where + " must be a nonnegative integer");
  }
  const auto v = j.get<std::size_t>();
  if (v >= n) throw InputError("SchemaError: " + where + " = " + std::to_string(v) + " out of range");
  return v;
}

ScalarField parse_expr(const std::string& text, const ChartPtr& chart, const std::string& where) {
  try {
    return parse_scalar(text, chart);
  } catch (const SyntaxError& e) {
    std::string expected;
    for (const auto& s : e.expected()) expected += (expected.empty() ? "" : ", ") + s;
    throw InputError("SyntaxError in " + where + " at offset " + std::to_string(e.offset()) + " of \"" + text +
                     "\"" + (expected.empty() ? "" : ", expected " + expected) + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

ChartPtr parse_chart(const json& j) {
  const json& coords = field(j, "coordinates");
  if (!coords.is_array() || coords.empty()) throw InputError("SchemaError: 'coordinates' must be a nonempty array");
  std::vector<std::string> names;
  for (const auto& c : coords) names.push_back(as_string(c, "coordinate"));
  try {
    return make_chart(names);
  } catch (const Error& e) {
    throw InputError(std::string(e.what()));
  }
}

// Entries {"i","j","expr"} with i < j (antisymmetric) or i <= j (symmetric).
FieldMatrix parse_entries(const json& list, const ChartPtr& chart, const std::string& key, bool antisymmetric) {
  const std::size_t n = chart->dimension();
  if (!list.is_array()) throw InputError("SchemaError: '" + key + "' must be an array");
  FieldMatrix m(chart, n, n);
  std::vector<bool> seen(n * n, false);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& e = list[k];
    const std::string where = key + "[" + std::to_string(k) + "]";
    const std::size_t i = as_index(field(e, "i"), where + ".i", n);
    const std::size_t jj = as_index(field(e, "j"), where + ".j", n);
    if (antisymmetric ? i >= jj : i > jj) {
      throw InputError("SchemaError: " + where + " must satisfy i " + (antisymmetric ? "<" : "<=") + " j");
    }
    if (seen[i * n + jj]) throw InputError("SchemaError: " + where + " repeats an entry");
    seen[i * n + jj] = true;
    const ScalarField v = parse_expr(as_string(field(e, "expr"), where + ".expr"), chart, where);
    m(i, jj) = v;
    m(jj, i) = antisymmetric ? -v : v;
  }
  return m;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

std::vector<RationalPoint> parse_samples(const json& j, std::size_t n) {
  if (!j.is_array() || j.empty()) throw InputError("SchemaError: 'samples' must be a nonempty array");
  std::vector<RationalPoint> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& p = j[k];
    if (!p.is_array() || p.size() != n) {
      throw InputError("SchemaError: samples[" + std::to_string(k) + "] must have " + std::to_string(n) + " entries");
    }
    RationalPoint pt;
    for (const auto& x : p) {
      const std::string s = as_string(x, "sample coordinate");
      try {
        pt.push_back(parse_rational(s));
      } catch (const Error& e) {
        throw InputError("SchemaError: sample coordinate \"" + s + "\" is not a rational");
      }
    }
    out.push_back(std::move(pt));
  }
  return out;
}

ManifoldSpec parse_manifold_spec(const json& j) {
  if (!j.is_object()) throw InputError("SchemaError: spec must be a JSON object");
  const ChartPtr chart = parse_chart(j);
  const std::size_t n = chart->dimension();
  const std::string name = j.contains("name") ? as_string(j.at("name"), "name") : "";
  FieldMatrix pm = parse_entries(field(j, "pi"), chart, "pi", true);
  FieldMatrix gm = parse_entries(field(j, "cometric"), chart, "cometric", false);
  const json& r = field(j, "declared_rank");
  if (!r.is_number_integer() || r.get<long long>() < 0) {
    throw InputError("SchemaError: 'declared_rank' must be a nonnegative integer");
  }
  return ManifoldSpec{name, chart, Bivector(pm), CoMetric(gm), r.get<std::size_t>(), parse_samples(field(j, "samples"), n)};
}

FoliationSpec parse_foliation_spec(const json& j) {
  if (!j.is_object()) throw InputError("SchemaError: spec must be a JSON object");
  const ChartPtr chart = parse_chart(j);
  const std::size_t n = chart->dimension();
  const std::string name = j.contains("name") ? as_string(j.at("name"), "name") : "";
  const json& frame = field(j, "frame");
  if (!frame.is_array() || frame.empty()) throw InputError("SchemaError: 'frame' must be a nonempty array");
  std::vector<VectorField> f;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    const json& v = frame[k];
    if (!v.is_array() || v.size() != n) {
      throw InputError("SchemaError: frame[" + std::to_string(k) + "] must have " + std::to_string(n) + " components");
    }
    std::vector<ScalarField> comps;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string where = "frame[" + std::to_string(k) + "][" + std::to_string(i) + "]";
      comps.push_back(parse_expr(as_string(v[i], where), chart, where));
    }
    f.emplace_back(comps);
  }
  FieldMatrix g = parse_entries(field(j, "tangent_metric"), chart, "tangent_metric", false);
  FieldMatrix w = parse_entries(field(j, "omega"), chart, "omega", true);
  PForm omega(chart, 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!w(a, b).is_zero()) omega.set({a, b}, w(a, b));
    }
  }
  return FoliationSpec{name, FoliationInput{chart, f, g, omega, parse_samples(field(j, "samples"), n)}};
}

nlohmann::ordered_json to_json(const ManifoldSpec& spec) {
  nlohmann::ordered_json j;
  j["name"] = spec.name;
  j["coordinates"] = spec.chart->names();
  const std::size_t n = spec.chart->dimension();
  auto entries = [&](const FieldMatrix& m, bool strict) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = strict ? i + 1 : i; k < n; ++k) {
        if (m(i, k).is_zero()) continue;
        list.push_back({{"i", i}, {"j", k}, {"expr", m(i, k).str()}});
      }
    }
    return list;
  };
  j["pi"] = entries(spec.pi.matrix(), true);
  j["cometric"] = entries(spec.cometric.matrix(), false);
  j["declared_rank"] = spec.declared_rank;
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& p : spec.samples) {
    nlohmann::ordered_json pt = nlohmann::ordered_json::array();
    for (const auto& q : p) pt.push_back(q.get_str());
    samples.push_back(pt);
  }
  j["samples"] = samples;
  return j;
}

std::string point_str(const RationalPoint& p) {
  std::string s;
  for (const auto& q : p) s += (s.empty() ? "" : ",") + q.get_str();
  return "(" + s + ")";
}

}  // namespace rpverify
