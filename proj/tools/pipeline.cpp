#include "pipeline.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "rpgeom/error.hpp"
#include "rpgeom/foliation.hpp"

using namespace rpgeom;

namespace rpverify {

namespace {

std::string dname(const ChartPtr& c, std::size_t i) { return "d" + c->names()[i]; }

std::optional<Rational> try_eval(const ScalarField& f, const RationalPoint& p) {
  try {
    return f.eval(p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Verdict pass(std::string name, std::string detail = {}) { return {std::move(name), "pass", std::move(detail), {}}; }
Verdict skip(std::string name, std::string detail) { return {std::move(name), "skip", std::move(detail), {}}; }

Verdict fail(std::string name, std::string detail, std::optional<Witness> w = {}) {
  return {std::move(name), "fail", std::move(detail), std::move(w)};
}

// First nonzero residual wins.
struct FirstNonzero {
  const std::vector<RationalPoint>& samples;
  std::optional<Witness> w;
  std::size_t checked = 0;
  void add(const std::string& label, const ScalarField& f) {
    ++checked;
    if (!w && !f.is_zero()) w = make_witness(label, f, samples);
  }
};

Verdict from_residuals(const std::string& name, FirstNonzero& acc, const std::string& what) {
  if (acc.w) return fail(name, what + " is nonzero", acc.w);
  return pass(name, std::to_string(acc.checked) + " residuals vanish");
}

}  // namespace

bool CheckResult::failed() const {
  for (const auto& v : verdicts) {
    if (v.status == "fail") return true;
  }
  return false;
}

std::optional<RationalPoint> nonzero_point(const ScalarField& f, const std::vector<RationalPoint>& samples) {
  for (const auto& p : samples) {
    const auto v = try_eval(f, p);
    if (v && *v != 0) return p;
  }
  if (f.is_zero()) return std::nullopt;
  const std::size_t n = f.chart()->dimension();
  static const std::vector<Rational> grid{Rational(1), Rational(2), Rational(-1), Rational(3), Rational(1, 2),
                                          Rational(0), Rational(-2), Rational(5)};
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t step = 0; step < 200000; ++step) {
    RationalPoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = grid[digit[i]];
    const auto v = try_eval(f, p);
    if (v && *v != 0) return p;
    std::size_t i = 0;
    while (i < n && ++digit[i] == grid.size()) digit[i++] = 0;
    if (i == n) break;
  }
  return std::nullopt;
}

Witness make_witness(std::string label, const ScalarField& f, const std::vector<RationalPoint>& samples) {
  Witness w{std::move(label), f, nonzero_point(f, samples), Rational(0)};
  if (w.point) w.value = f.eval(*w.point);
  return w;
}

CheckResult run_check(const ManifoldSpec& spec) {
  const auto& c = spec.chart;
  const std::size_t n = c->dimension();
  const auto& pi = spec.pi;
  const auto& g = spec.cometric;
  const auto& samples = spec.samples;
  CheckResult r;
  auto& out = r.verdicts;

  if (const auto bad = positive_definite_failure(g.matrix(), samples)) {
    throw InputError("NotPositiveDefiniteAt " + point_str(*bad) + ": cometric is not positive definite");
  }
  out.push_back(pass("cometric", "positive definite at " + std::to_string(samples.size()) + " samples"));

  const auto jw = jacobi_witness(pi);
  if (jw) {
    const auto [i, j, k] = *jw;
    const auto& x = c->names();
    const ScalarField f = jacobiator(pi, ScalarField::coordinate(c, i), ScalarField::coordinate(c, j),
                                     ScalarField::coordinate(c, k));
    out.push_back(fail("poisson", "Jacobi identity fails",
                       make_witness("Jac(" + x[i] + "," + x[j] + "," + x[k] + ")", f, samples)));
  } else {
    out.push_back(pass("poisson", "Jacobi identity holds"));
  }

  std::optional<ChristoffelTable> d;
  try {
    d = levi_civita(pi, g);
  } catch (const Error& e) {
    out.push_back(fail("connection", std::string(e.what())));
  }
  if (d) {
    FirstNonzero acc{samples};
    for (std::size_t i = 0; i < n; ++i) {
      const OneForm a = OneForm::coordinate(c, i);
      for (std::size_t j = 0; j < n; ++j) {
        const OneForm b = OneForm::coordinate(c, j);
        if (i < j) {
          const OneForm t = torsion_defect(*d, pi, a, b);
          for (std::size_t k = 0; k < n; ++k) {
            acc.add("T(" + dname(c, i) + "," + dname(c, j) + ")[" + c->names()[k] + "]", t[k]);
          }
        }
        for (std::size_t k = j; k < n; ++k) {
          acc.add("Dg(" + dname(c, i) + ";" + dname(c, j) + "," + dname(c, k) + ")",
                  metric_defect(*d, g, pi, a, b, OneForm::coordinate(c, k)));
        }
      }
    }
    out.push_back(from_residuals("connection", acc, "torsion or metric defect"));
  }

  bool rp = false;
  if (!jw && d) {
    if (const auto w = riemann_poisson_witness(*d, pi)) {
      const auto [i, j, k] = w->indices;
      out.push_back(fail("riemann_poisson", "D pi does not vanish",
                         make_witness("Dpi(" + dname(c, i) + "," + dname(c, j) + "," + dname(c, k) + ")", w->value,
                                      samples)));
    } else {
      rp = true;
      out.push_back(pass("riemann_poisson", "D pi = 0"));
    }
  } else {
    out.push_back(skip("riemann_poisson", jw ? "not Poisson" : "no connection"));
  }

  const char* foliation_checks[] = {"regular_foliation", "leafwise_symplectic", "bracket_invariance"};
  const char* rp_checks[] = {"kernel_properties", "leafwise_invariance", "parallel_omega", "basic_forms",
                             "bundle_like"};
  if (jw) {
    out.push_back(skip("casimirs", "not Poisson"));
    for (const char* name : foliation_checks) out.push_back(skip(name, "not Poisson"));
    for (const char* name : rp_checks) out.push_back(skip(name, "not Poisson"));
    return r;
  }

  const auto cas = casimir_monomials(pi, 2);
  std::string cas_list;
  for (const auto& f : cas) {
    if (f.is_constant()) continue;
    cas_list += (cas_list.empty() ? "" : ", ") + f.str();
  }
  out.push_back(pass("casimirs", cas_list.empty() ? "no nonconstant Casimir monomials of degree <= 2"
                                                  : "Casimir monomials: " + cas_list));

  std::optional<FoliationSplit> split;
  try {
    split = split_cotangent(pi, g, spec.declared_rank, samples);
    out.push_back(pass("regular_foliation", "rank " + std::to_string(split->rank)));
  } catch (const Error& e) {
    out.push_back(fail("regular_foliation", std::string(e.what())));
  }
  if (!split) {
    for (const char* name : {"leafwise_symplectic", "bracket_invariance"}) out.push_back(skip(name, "no regular split"));
    for (const char* name : rp_checks) out.push_back(skip(name, "no regular split"));
    return r;
  }

  try {
    (void)leafwise_symplectic(pi, *split, samples);
    out.push_back(pass("leafwise_symplectic", "nondegenerate at samples"));
  } catch (const Error& e) {
    out.push_back(fail("leafwise_symplectic", std::string(e.what())));
  }

  {
    FirstNonzero acc{samples};
    const std::size_t q = split->perp_frame.size();
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = a + 1; b < q; ++b) {
        for (std::size_t h = 0; h < split->h_frame.size(); ++h) {
          acc.add("B(p" + std::to_string(a) + ",p" + std::to_string(b) + ";h" + std::to_string(h) + ")",
                  bracket_invariance_residual(pi, split->perp_frame[a], split->perp_frame[b], split->h_frame[h]));
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) {
          acc.add("B(" + dname(c, i) + "," + dname(c, j) + ";d/d" + c->names()[m] + ")",
                  bracket_invariance_residual(pi, OneForm::coordinate(c, i), OneForm::coordinate(c, j),
                                VectorField::coordinate(c, m)));
        }
      }
    }
    out.push_back(from_residuals("bracket_invariance", acc, "[a,b](X) - X.pi(a,b) with a(X) = b(X) = 0"));
  }

  if (!rp) {
    for (const char* name : rp_checks) out.push_back(skip(name, "NotRiemannPoisson notice: requires D pi = 0"));
    return r;
  }

  const KernelChecks kc = kernel_checks(pi, g, *d, *split);
  if (kc.kernel_image_in_kernel && kc.kernel_direction_flat && kc.perp_closed) {
    out.push_back(pass("kernel_properties", "kernel and orthogonal distribution behave"));
  } else {
    out.push_back(fail("kernel_properties", kc.witness));
  }

  {
    FirstNonzero acc{samples};
    const auto vals = transverse_invariance_values(pi, *split);
    for (std::size_t k = 0; k < vals.size(); ++k) acc.add("(L_h pi)[" + std::to_string(k) + "]", vals[k]);
    out.push_back(from_residuals("leafwise_invariance", acc, "L_h pi on orthogonal forms"));
  }

  {
    FirstNonzero acc{samples};
    const auto vals = parallel_omega_residuals(*d, pi, *split);
    for (std::size_t k = 0; k < vals.size(); ++k) acc.add("(nabla w)[" + std::to_string(k) + "]", vals[k]);
    out.push_back(from_residuals("parallel_omega", acc, "leafwise covariant derivative of w"));
  }

  {
    std::vector<OneForm> family = basic_one_form_family(pi, *split, 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& k : split->kernel_frame) family.push_back(ScalarField::coordinate(c, i) * k);
    }
    std::string bad;
    for (const auto& a : family) {
      const BasicPredicates p = basic_predicates(pi, g, *d, *split, a);
      if (p.basic != p.parallel || p.basic != p.sharp_foliate || p.basic != p.preserves_pi) {
        bad = "predicates disagree on " + a.str();
        break;
      }
    }
    if (bad.empty()) {
      out.push_back(pass("basic_forms", "four characterizations agree on " + std::to_string(family.size()) + " forms"));
    } else {
      out.push_back(fail("basic_forms", bad));
    }
  }

  const BundleLike bl = bundle_like_check(pi, g, *split);
  if (bl.pass) {
    out.push_back(pass("bundle_like", std::to_string(bl.pairs) + " basic pairs"));
  } else {
    out.push_back(fail("bundle_like", bl.witness));
  }
  return r;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

nlohmann::ordered_json verdicts_json(const CheckResult& r) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::ordered_json j;
    j["name"] = v.name;
    j["status"] = v.status;
    j["detail"] = v.detail;
    if (v.witness) {
      nlohmann::ordered_json w;
      w["label"] = v.witness->label;
      w["expr"] = v.witness->expr.str();
      if (v.witness->point) {
        nlohmann::ordered_json pt = nlohmann::ordered_json::array();
        for (const auto& q : *v.witness->point) pt.push_back(q.get_str());
        w["point"] = pt;
        w["value"] = v.witness->value.get_str();
      } else {
        w["point"] = nullptr;
      }
      j["witness"] = w;
    }
    list.push_back(j);
  }
  return list;
}

std::string render_text(const CheckResult& r) {
  std::ostringstream os;
  for (const auto& v : r.verdicts) {
    os << v.name << ": " << v.status;
    if (v.witness) {
      os << "  witness " << v.witness->label << " = " << v.witness->expr.str();
      if (v.witness->point) os << "  (" << v.witness->value.get_str() << " at " << point_str(*v.witness->point) << ")";
    } else if (!v.detail.empty()) {
      os << "  " << v.detail;
    }
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json christoffel_json(const ManifoldSpec& spec) {
  const auto& c = spec.chart;
  const ChristoffelTable d = levi_civita(spec.pi, spec.cometric);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c->dimension(); ++i) {
    for (std::size_t j = 0; j < c->dimension(); ++j) {
      const OneForm f = d.basis(i, j);
      for (std::size_t k = 0; k < c->dimension(); ++k) {
        if (f[k].is_zero()) continue;
        list.push_back({{"a", dname(c, i)}, {"b", dname(c, j)}, {"component", dname(c, k)}, {"expr", f[k].str()}});
      }
    }
  }
  return list;
}

std::string christoffel_text(const ManifoldSpec& spec) {
  const auto& c = spec.chart;
  const ChristoffelTable d = levi_civita(spec.pi, spec.cometric);
  std::ostringstream os;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < c->dimension(); ++i) {
    for (std::size_t j = 0; j < c->dimension(); ++j) {
      const OneForm f = d.basis(i, j);
      if (f.is_zero()) continue;
      ++nonzero;
      os << "D_" << dname(c, i) << " " << dname(c, j) << " = " << f.str() << "\n";
    }
  }
  if (nonzero == 0) os << "all Christoffel symbols vanish\n";
  return os.str();
}

}  // namespace rpverify
