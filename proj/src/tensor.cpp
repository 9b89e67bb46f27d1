#include "rpgeom/tensor.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "rpgeom/error.hpp"

namespace rpgeom {

namespace {

struct IndexTables {
  std::array<std::array<std::vector<MultiIndex>, kMaxVars + 1>, kMaxVars + 1> lists;
  std::array<std::vector<std::size_t>, kMaxVars + 1> position;  // [n][mask]

  IndexTables() {
    for (std::size_t n = 0; n <= kMaxVars; ++n) {
      position[n].assign(std::size_t{1} << n, 0);
      // Lexicographic order of increasing tuples; masks visited by popcount.
      for (std::size_t p = 0; p <= n; ++p) {
        std::vector<MultiIndex> out;
        MultiIndex cur(p);
        for (std::size_t i = 0; i < p; ++i) cur[i] = i;
        while (true) {
          std::size_t mask = 0;
          for (auto i : cur) mask |= std::size_t{1} << i;
          position[n][mask] = out.size();
          out.push_back(cur);
          std::size_t k = p;
          while (k > 0 && cur[k - 1] == n - p + k - 1) --k;
          if (k == 0) break;
          ++cur[k - 1];
          for (std::size_t j = k; j < p; ++j) cur[j] = cur[j - 1] + 1;
        }
        lists[n][p] = std::move(out);
      }
    }
  }
};

const IndexTables& tables() {
  static const IndexTables t;
  return t;
}

std::size_t position_of(const MultiIndex& sorted, std::size_t n) {
  std::size_t mask = 0;
  for (auto i : sorted) {
    if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " out of range");
    mask |= std::size_t{1} << i;
  }
  return tables().position[n][mask];
}

std::string coefficient_prefix(const ScalarField& c) {
  std::string s = c.str();
  if (s == "1") return "";
  if (s == "-1") return "-";
  bool compound = s.find_first_of("+-", 1) != std::string::npos || s.find('/') != std::string::npos;
  return compound ? "(" + s + ")*" : s + "*";
}

std::string join_terms(const std::vector<std::pair<ScalarField, std::string>>& terms) {
  std::string out;
  for (const auto& [c, basis] : terms) {
    if (c.is_zero()) continue;
    std::string piece = coefficient_prefix(c) + basis;
    if (basis.empty() && (piece.empty() || piece.back() == '*')) piece = c.str();
    if (!out.empty() && piece[0] != '-') out += '+';
    out += piece;
  }
  return out.empty() ? "0" : out;
}

std::vector<ScalarField> zeros(const ChartPtr& chart, std::size_t n) { return std::vector<ScalarField>(n, ScalarField(chart)); }

const ChartPtr& chart_of(const std::vector<ScalarField>& comps) {
  if (comps.empty()) throw Error(ErrorKind::DimensionMismatch, "tensor needs at least one component");
  for (const auto& c : comps) require_same_chart(comps.front().chart(), c.chart());
  return comps.front().chart();
}

}  // namespace

const std::vector<MultiIndex>& increasing_indices(std::size_t n, std::size_t p) {
  if (n > kMaxVars || p > n) throw Error(ErrorKind::DegreeOverflow, "degree exceeds dimension");
  return tables().lists[n][p];
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int sort_with_sign(MultiIndex& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)), comps_(zeros(chart_, chart_->dimension())) {}

VectorField::VectorField(std::vector<ScalarField> components) : chart_(chart_of(components)), comps_(std::move(components)) {
  if (comps_.size() != chart_->dimension()) throw Error(ErrorKind::DimensionMismatch, "vector field component count");
}

VectorField VectorField::coordinate(const ChartPtr& chart, std::size_t i) {
  if (i >= chart->dimension()) throw Error(ErrorKind::IndexOutOfRange, "coordinate vector index");
  VectorField v(chart);
  v.comps_[i] = ScalarField(chart, Rational(1));
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ScalarField& c) { return c.is_zero(); });
}

ScalarField VectorField::apply(const ScalarField& f) const {
  require_same_chart(chart_, f.chart());
  ScalarField out(chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (!comps_[i].is_zero()) out += comps_[i] * f.partial(i);
  }
  return out;
}

VectorField VectorField::operator-() const {
  VectorField v = *this;
  for (auto& c : v.comps_) c = -c;
  return v;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_chart(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_chart(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

VectorField operator*(const ScalarField& f, VectorField v) {
  for (auto& c : v.comps_) c = f * c;
  return v;
}

std::string VectorField::str() const {
  std::vector<std::pair<ScalarField, std::string>> terms;
  for (std::size_t i = 0; i < comps_.size(); ++i) terms.emplace_back(comps_[i], "d/d" + chart_->names()[i]);
  return join_terms(terms);
}

// ---------------------------------------------------------------------------

OneForm::OneForm(ChartPtr chart) : chart_(std::move(chart)), comps_(zeros(chart_, chart_->dimension())) {}

OneForm::OneForm(std::vector<ScalarField> components) : chart_(chart_of(components)), comps_(std::move(components)) {
  if (comps_.size() != chart_->dimension()) throw Error(ErrorKind::DimensionMismatch, "one-form component count");
}

OneForm OneForm::coordinate(const ChartPtr& chart, std::size_t i) {
  if (i >= chart->dimension()) throw Error(ErrorKind::IndexOutOfRange, "coordinate form index");
  OneForm a(chart);
  a.comps_[i] = ScalarField(chart, Rational(1));
  return a;
}

OneForm OneForm::differential(const ScalarField& f) {
  OneForm a(f.chart());
  for (std::size_t i = 0; i < a.comps_.size(); ++i) a.comps_[i] = f.partial(i);
  return a;
}

bool OneForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ScalarField& c) { return c.is_zero(); });
}

ScalarField OneForm::operator()(const VectorField& v) const {
  require_same_chart(chart_, v.chart());
  ScalarField out(chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (!comps_[i].is_zero() && !v[i].is_zero()) out += comps_[i] * v[i];
  }
  return out;
}

OneForm OneForm::operator-() const {
  OneForm a = *this;
  for (auto& c : a.comps_) c = -c;
  return a;
}

OneForm& OneForm::operator+=(const OneForm& o) {
  require_same_chart(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  require_same_chart(chart_, o.chart_);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

OneForm operator*(const ScalarField& f, OneForm a) {
  for (auto& c : a.comps_) c = f * c;
  return a;
}

std::string OneForm::str() const {
  std::vector<std::pair<ScalarField, std::string>> terms;
  for (std::size_t i = 0; i < comps_.size(); ++i) terms.emplace_back(comps_[i], "d" + chart_->names()[i]);
  return join_terms(terms);
}

// ---------------------------------------------------------------------------

template <Variance V>
Alternating<V>::Alternating(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree_ > chart_->dimension()) throw Error(ErrorKind::DegreeOverflow, "degree exceeds dimension");
  comps_ = zeros(chart_, increasing_indices(chart_->dimension(), degree_).size());
}

template <Variance V>
ScalarField Alternating<V>::get(MultiIndex idx) const {
  if (idx.size() != degree_) throw Error(ErrorKind::DimensionMismatch, "index length differs from degree");
  int sign = sort_with_sign(idx);
  if (sign == 0) return ScalarField(chart_);
  const ScalarField& c = comps_[position_of(idx, dimension())];
  return sign > 0 ? c : -c;
}

template <Variance V>
void Alternating<V>::set(const MultiIndex& idx, ScalarField value) {
  MultiIndex sorted = idx;
  if (idx.size() != degree_ || sort_with_sign(sorted) != 1) {
    throw Error(ErrorKind::IndexOutOfRange, "set() needs a strictly increasing index");
  }
  require_same_chart(chart_, value.chart());
  comps_[position_of(sorted, dimension())] = std::move(value);
}

template <Variance V>
void Alternating<V>::add(MultiIndex idx, const ScalarField& value) {
  if (idx.size() != degree_) throw Error(ErrorKind::DimensionMismatch, "index length differs from degree");
  int sign = sort_with_sign(idx);
  if (sign == 0 || value.is_zero()) return;
  auto& c = comps_[position_of(idx, dimension())];
  if (sign > 0) {
    c += value;
  } else {
    c -= value;
  }
}

template <Variance V>
bool Alternating<V>::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ScalarField& c) { return c.is_zero(); });
}

template <Variance V>
Alternating<V> Alternating<V>::operator-() const {
  Alternating a = *this;
  for (auto& c : a.comps_) c = -c;
  return a;
}

template <Variance V>
Alternating<V>& Alternating<V>::operator+=(const Alternating& o) {
  require_same_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw Error(ErrorKind::DimensionMismatch, "adding tensors of different degree");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

template <Variance V>
Alternating<V>& Alternating<V>::operator-=(const Alternating& o) {
  require_same_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw Error(ErrorKind::DimensionMismatch, "subtracting tensors of different degree");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

template <Variance V>
std::string Alternating<V>::str() const {
  std::vector<std::pair<ScalarField, std::string>> terms;
  const auto& idx = indices();
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    std::string basis;
    for (std::size_t s = 0; s < idx[k].size(); ++s) {
      if (s > 0) basis += '^';
      basis += (V == Variance::Covariant ? "d" : "d/d") + chart_->names()[idx[k][s]];
    }
    terms.emplace_back(comps_[k], basis);
  }
  return join_terms(terms);
}

template class Alternating<Variance::Covariant>;
template class Alternating<Variance::Contravariant>;

// ---------------------------------------------------------------------------

PForm to_pform(const ScalarField& f) {
  PForm w(f.chart(), 0);
  w.at(0) = f;
  return w;
}

PForm to_pform(const OneForm& a) {
  PForm w(a.chart(), 1);
  for (std::size_t i = 0; i < a.dimension(); ++i) w.at(i) = a[i];
  return w;
}

PVector to_pvector(const ScalarField& f) {
  PVector q(f.chart(), 0);
  q.at(0) = f;
  return q;
}

PVector to_pvector(const VectorField& v) {
  PVector q(v.chart(), 1);
  for (std::size_t i = 0; i < v.dimension(); ++i) q.at(i) = v[i];
  return q;
}

OneForm to_one_form(const PForm& w) {
  if (w.degree() != 1) throw Error(ErrorKind::DimensionMismatch, "expected a 1-form");
  OneForm a(w.chart());
  for (std::size_t i = 0; i < a.dimension(); ++i) a[i] = w.at(i);
  return a;
}

VectorField to_vector_field(const PVector& q) {
  if (q.degree() != 1) throw Error(ErrorKind::DimensionMismatch, "expected a vector field");
  VectorField v(q.chart());
  for (std::size_t i = 0; i < v.dimension(); ++i) v[i] = q.at(i);
  return v;
}

namespace {

template <Variance V>
Alternating<V> wedge_impl(const Alternating<V>& a, const Alternating<V>& b) {
  require_same_chart(a.chart(), b.chart());
  const std::size_t n = a.dimension();
  if (a.degree() + b.degree() > n) throw Error(ErrorKind::DegreeOverflow, "wedge degree exceeds dimension");
  Alternating<V> out(a.chart(), a.degree() + b.degree());
  const auto& ia = a.indices();
  const auto& ib = b.indices();
  for (std::size_t i = 0; i < ia.size(); ++i) {
    if (a.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < ib.size(); ++j) {
      if (b.at(j).is_zero()) continue;
      MultiIndex joined = ia[i];
      joined.insert(joined.end(), ib[j].begin(), ib[j].end());
      out.add(joined, a.at(i) * b.at(j));
    }
  }
  return out;
}

template <Variance V, class Arg>
Alternating<V> interior_impl(const Arg& x, const Alternating<V>& w) {
  require_same_chart(x.chart(), w.chart());
  if (w.degree() == 0) throw Error(ErrorKind::DegreeUnderflow, "contraction of a degree-0 tensor");
  Alternating<V> out(w.chart(), w.degree() - 1);
  const auto& idx = out.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    ScalarField acc(w.chart());
    for (std::size_t i = 0; i < x.dimension(); ++i) {
      if (x[i].is_zero()) continue;
      MultiIndex full{i};
      full.insert(full.end(), idx[k].begin(), idx[k].end());
      ScalarField c = w.get(full);
      if (!c.is_zero()) acc += x[i] * c;
    }
    out.at(k) = std::move(acc);
  }
  return out;
}

template <Variance V, class Arg>
ScalarField evaluate_impl(Alternating<V> w, const std::vector<Arg>& args) {
  if (args.size() != w.degree()) throw Error(ErrorKind::DimensionMismatch, "argument count differs from degree");
  for (const auto& a : args) w = interior_impl(a, w);
  return w.at(0);
}

}  // namespace

PForm wedge(const PForm& a, const PForm& b) { return wedge_impl(a, b); }
PVector wedge(const PVector& a, const PVector& b) { return wedge_impl(a, b); }
PForm interior(const VectorField& x, const PForm& w) { return interior_impl(x, w); }
PVector interior(const OneForm& a, const PVector& q) { return interior_impl(a, q); }
ScalarField evaluate(const PForm& w, const std::vector<VectorField>& args) { return evaluate_impl(w, args); }
ScalarField evaluate(const PVector& q, const std::vector<OneForm>& args) { return evaluate_impl(q, args); }

PForm exterior_d(const PForm& w) {
  const std::size_t n = w.dimension();
  if (w.degree() >= n) throw Error(ErrorKind::DegreeOverflow, "exterior derivative of a top-degree form");
  PForm out(w.chart(), w.degree() + 1);
  const auto& idx = out.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    ScalarField acc(w.chart());
    for (std::size_t s = 0; s < idx[k].size(); ++s) {
      MultiIndex rest = idx[k];
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
      ScalarField c = w.get(rest);
      if (c.is_zero()) continue;
      ScalarField dc = c.partial(idx[k][s]);
      if (s % 2 == 0) {
        acc += dc;
      } else {
        acc -= dc;
      }
    }
    out.at(k) = std::move(acc);
  }
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  VectorField out(x.chart());
  for (std::size_t i = 0; i < x.dimension(); ++i) out[i] = x.apply(y[i]) - y.apply(x[i]);
  return out;
}

PForm lie_derivative(const VectorField& x, const PForm& w) {
  require_same_chart(x.chart(), w.chart());
  const std::size_t n = w.dimension();
  PForm out(w.chart(), w.degree());
  if (w.degree() < n) out += interior(x, exterior_d(w));
  if (w.degree() > 0) out += exterior_d(interior(x, w));
  return out;
}

OneForm lie_derivative(const VectorField& x, const OneForm& a) {
  return to_one_form(lie_derivative(x, to_pform(a)));
}

PVector lie_derivative(const VectorField& x, const PVector& q) {
  require_same_chart(x.chart(), q.chart());
  const std::size_t n = q.dimension();
  PVector out(q.chart(), q.degree());
  const auto& idx = q.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    ScalarField acc = x.apply(q.at(k));
    for (std::size_t s = 0; s < idx[k].size(); ++s) {
      for (std::size_t m = 0; m < n; ++m) {
        ScalarField dx = x[idx[k][s]].partial(m);
        if (dx.is_zero()) continue;
        MultiIndex swapped = idx[k];
        swapped[s] = m;
        ScalarField c = q.get(swapped);
        if (!c.is_zero()) acc -= c * dx;
      }
    }
    out.at(k) = std::move(acc);
  }
  return out;
}

}  // namespace rpgeom
