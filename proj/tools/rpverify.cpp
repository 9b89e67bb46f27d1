#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "pipeline.hpp"
#include "rpgeom/cohomology.hpp"
#include "rpgeom/error.hpp"

using namespace rpgeom;
using namespace rpverify;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Options {
  std::string spec_path;
  std::string samples_path;
  bool json = false;
  bool verify = false;
  bool compare = false;
  int p = -1;
  unsigned degree = 3;
};

// Kinds that describe a malformed input rather than a mathematical failure.
bool is_input_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::InvalidChart:
    case ErrorKind::SchemaError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotAntisymmetric:
    case ErrorKind::NotPositiveDefiniteAt:
    case ErrorKind::NonPolynomial:
      return true;
    default:
      return false;
  }
}

struct Loaded {
  std::string text;
  nlohmann::json json;
};

Loaded load(const Options& o) {
  Loaded l;
  l.text = read_file(o.spec_path);
  l.json = parse_json(l.text);
  return l;
}

ManifoldSpec load_manifold(const Options& o, Loaded& l) {
  ManifoldSpec spec = parse_manifold_spec(l.json);
  if (!o.samples_path.empty()) {
    spec.samples = parse_samples(parse_json(read_file(o.samples_path)), spec.chart->dimension());
  }
  return spec;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::ordered_json header(const std::string& command, const std::string& name, const std::string& text) {
  nlohmann::ordered_json j;
  j["tool"] = "rpverify";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["spec"] = name;
  j["input_sha256"] = sha256_hex(text);
  return j;
}

int cmd_check(const Options& o, bool full_report) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded l = load(o);
  const ManifoldSpec spec = load_manifold(o, l);
  const CheckResult r = run_check(spec);
  const int code = r.failed() ? kFail : kPass;
  if (o.json || full_report) {
    auto j = header(full_report ? "report" : "check", spec.name, l.text);
    j["verdicts"] = verdicts_json(r);
    if (full_report) {
      try {
        j["christoffel"] = christoffel_json(spec);
      } catch (const Error& e) {
        j["christoffel"] = std::string(e.what());
      }
    }
    j["exit_code"] = code;
    j["timing_ms"] = ms_since(t0);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rpverify " << kToolVersion << "  " << spec.name << "  sha256 " << sha256_hex(l.text) << "\n"
              << render_text(r);
  }
  return code;
}

int cmd_christoffel(const Options& o) {
  Loaded l = load(o);
  const ManifoldSpec spec = load_manifold(o, l);
  if (o.json) {
    auto j = header("christoffel", spec.name, l.text);
    j["symbols"] = christoffel_json(spec);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << christoffel_text(spec);
  }
  return kPass;
}

int cmd_foliation(const Options& o) {
  Loaded l = load(o);
  const ManifoldSpec spec = load_manifold(o, l);
  validate_cometric(spec.cometric, spec.samples);
  const FoliationSplit s = split_cotangent(spec.pi, spec.cometric, spec.declared_rank, spec.samples);
  const LeafwiseForm w = leafwise_symplectic(spec.pi, s, spec.samples);
  const FieldMatrix h = induced_tangent_metric(spec.cometric, s);
  const auto inv = transverse_invariance_values(spec.pi, s);
  bool invariant = true;
  for (const auto& v : inv) invariant = invariant && v.is_zero();

  auto strs = [](const auto& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
  };
  std::vector<std::string> wcomps;
  for (std::size_t k = 0; k < w.size(); ++k) wcomps.push_back(w.at(k).str());
  std::vector<std::vector<std::string>> hm(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) hm[i].push_back(h(i, j).str());
  }

  if (o.json) {
    auto j = header("foliation", spec.name, l.text);
    j["rank"] = s.rank;
    j["kernel_frame"] = strs(s.kernel_frame);
    j["perp_frame"] = strs(s.perp_frame);
    j["tangent_frame"] = strs(s.ts_frame);
    j["normal_frame"] = strs(s.h_frame);
    j["leafwise_symplectic"] = wcomps;
    j["induced_tangent_metric"] = hm;
    j["transverse_invariance"] = invariant;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rank " << s.rank << "\n";
    for (const auto& k : s.kernel_frame) std::cout << "kernel  " << k.str() << "\n";
    for (const auto& k : s.perp_frame) std::cout << "perp    " << k.str() << "\n";
    for (const auto& k : s.ts_frame) std::cout << "tangent " << k.str() << "\n";
    for (const auto& k : s.h_frame) std::cout << "normal  " << k.str() << "\n";
    for (std::size_t k = 0; k < w.size(); ++k) std::cout << "omega[" << k << "] = " << wcomps[k] << "\n";
    for (std::size_t i = 0; i < hm.size(); ++i) {
      std::cout << "h[" << i << "] =";
      for (const auto& e : hm[i]) std::cout << " " << e;
      std::cout << "\n";
    }
    std::cout << "transverse invariance: " << (invariant ? "pass" : "fail") << "\n";
  }
  return invariant ? kPass : kFail;
}

int cmd_construct(const Options& o) {
  Loaded l = load(o);
  const FoliationSpec fs = parse_foliation_spec(l.json);
  FoliationInput in = fs.input;
  if (!o.samples_path.empty()) in.samples = parse_samples(parse_json(read_file(o.samples_path)), in.chart->dimension());
  const InputReport rep = validate_input(in);
  const Structure s = build_structure(in);
  (void)certify(s, rep.rank);
  ManifoldSpec out{fs.name.empty() ? "constructed" : fs.name + " (constructed)", in.chart, s.pi, s.cometric, rep.rank,
                   in.samples};
  std::cout << to_json(out).dump(2) << "\n";
  if (!o.verify) return kPass;
  const CheckResult r = run_check(out);
  std::cerr << render_text(r);
  return r.failed() ? kFail : kPass;
}

int cmd_cohomology(const Options& o) {
  Loaded l = load(o);
  const ManifoldSpec spec = load_manifold(o, l);
  if (!spec.pi.is_polynomial()) {
    throw Error(ErrorKind::NonPolynomial, "NonPolynomialBivector: cohomology needs polynomial pi entries");
  }
  std::vector<std::size_t> degrees;
  if (o.p >= 0) {
    degrees.push_back(static_cast<std::size_t>(o.p));
  } else {
    for (std::size_t p = 0; p <= spec.chart->dimension(); ++p) degrees.push_back(p);
  }
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (std::size_t p : degrees) {
    const BettiWindow b = truncated_betti(spec.pi, p, o.degree);
    if (o.json) {
      windows.push_back({{"p", p}, {"degree", o.degree}, {"betti", b.betti}, {"closed", b.kernel},
                         {"exact", b.image}, {"exact_degree", b.d_prev}, {"graded", b.graded}});
    } else {
      std::cout << b.describe() << "\n";
    }
  }
  int code = kPass;
  nlohmann::ordered_json thm;
  if (o.compare) {
    validate_cometric(spec.cometric, spec.samples);
    const FoliationSplit s = split_cotangent(spec.pi, spec.cometric, spec.declared_rank, spec.samples);
    const std::size_t p = o.p >= 0 ? static_cast<std::size_t>(o.p) : 1;
    const ComparisonReport t = cohomology_comparison(spec.pi, spec.cometric, s, p, o.degree);
    const bool ok = t.sharp_closed && t.pushforward_closed && (p != 1 || t.dimensions_agree);
    if (!ok) code = kFail;
    if (o.json) {
      thm = {{"p", p},
             {"sharp_closed", t.sharp_closed},
             {"pushforward_closed", t.pushforward_closed},
             {"basic_count", t.basic_count},
             {"poisson_betti", t.poisson.betti},
             {"leafwise_betti", t.leafwise.betti},
             {"dimensions_agree", t.dimensions_agree},
             {"witness", t.witness}};
    } else {
      std::cout << "basic forms: " << t.basic_count << ", sharp closed: " << (t.sharp_closed ? "yes" : "no")
                << ", pushforward closed: " << (t.pushforward_closed ? "yes" : "no") << "\n"
                << "poisson   " << t.poisson.describe() << "\n"
                << "leafwise  " << t.leafwise.describe() << "\n";
      if (p == 1) std::cout << "dimension comparison: " << (t.dimensions_agree ? "agree" : "differ") << "\n";
      if (!t.witness.empty()) std::cout << "witness: " << t.witness << "\n";
    }
  }
  if (o.json) {
    auto j = header("cohomology", spec.name, l.text);
    j["windows"] = windows;
    if (o.compare) j["comparison"] = thm;
    std::cout << j.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for Riemann Poisson structures"};
  app.set_version_flag("--version", std::string("rpverify ") + kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", o.spec_path, "Spec JSON file")->required();
    sub->add_flag("--json", o.json, "Emit JSON");
    sub->add_option("--samples", o.samples_path, "JSON array of sample points replacing the spec samples");
  };
  auto* check = app.add_subcommand("check", "Run the verification pipeline on a manifold spec");
  add_common(check);
  auto* chr = app.add_subcommand("christoffel", "Print the Levi-Civita contravariant connection");
  add_common(chr);
  auto* fol = app.add_subcommand("foliation", "Describe the symplectic foliation");
  add_common(fol);
  auto* con = app.add_subcommand("construct", "Build pi and a metric from foliation data");
  add_common(con);
  con->add_flag("--verify", o.verify, "Re-run check on the result");
  auto* coh = app.add_subcommand("cohomology", "Truncated Poisson cohomology");
  add_common(coh);
  coh->add_option("--p", o.p, "Cochain degree (default: all)");
  coh->add_option("--degree", o.degree, "Polynomial degree window")->check(CLI::Range(0u, 12u));
  coh->add_flag("--thm31", o.compare, "Compare with leafwise cohomology");
  auto* rep = app.add_subcommand("report", "Full JSON report");
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (check->parsed()) return cmd_check(o, false);
    if (rep->parsed()) return cmd_check(o, true);
    if (chr->parsed()) return cmd_christoffel(o);
    if (fol->parsed()) return cmd_foliation(o);
    if (con->parsed()) return cmd_construct(o);
    if (coh->parsed()) return cmd_cohomology(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_input_kind(e.kind()) ? kInput : kFail;
  }
  return kInput;
}
