#include "gwlab/series.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"

namespace gwlab {

void Truncation::validate() const {
  if (max_genus < 0 || max_t_degree < 0 || max_descendent_index < 0 || max_class_degree < 0) {
    throw InputError("truncation bounds must be non-negative");
  }
}

int Monomial::class_degree() const { return std::accumulate(q.begin(), q.end(), 0); }

bool Monomial::is_constant() const {
  return lambda == 0 && t.empty() && std::all_of(q.begin(), q.end(), [](int d) { return d == 0; });
}

int Monomial::multiplicity(DescVar v) const {
  auto [lo, hi] = std::equal_range(t.begin(), t.end(), v);
  return static_cast<int>(hi - lo);
}

Integer Monomial::automorphisms() const {
  Integer aut = 1;
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    aut *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return aut;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.lambda = a.lambda + b.lambda;
  out.q.resize(std::max(a.q.size(), b.q.size()), 0);
  for (std::size_t i = 0; i < a.q.size(); ++i) out.q[i] += a.q[i];
  for (std::size_t i = 0; i < b.q.size(); ++i) out.q[i] += b.q[i];
  out.t.reserve(a.t.size() + b.t.size());
  std::merge(a.t.begin(), a.t.end(), b.t.begin(), b.t.end(), std::back_inserter(out.t));
  return out;
}

Monomial make_monomial(int lambda, std::vector<DescVar> t, std::vector<int> q) {
  std::sort(t.begin(), t.end());
  return Monomial{lambda, std::move(q), std::move(t)};
}

DescendentSeries::DescendentSeries(Truncation trunc, int basis_size, int class_rank)
    : trunc_(trunc), basis_size_(basis_size), class_rank_(class_rank) {
  trunc_.validate();
  if (basis_size <= 0) throw InputError("series basis size must be positive");
  if (class_rank < 0) throw InputError("series class rank must be non-negative");
}

DescendentSeries DescendentSeries::constant(Truncation trunc, const Rational& c, int basis_size,
                                            int class_rank) {
  DescendentSeries s(trunc, basis_size, class_rank);
  s.add_term(Monomial{0, std::vector<int>(class_rank, 0), {}}, c);
  return s;
}

void DescendentSeries::check_key_shape(const Monomial& key) const {
  if (static_cast<int>(key.q.size()) != class_rank_) {
    throw InputError("monomial q-vector has length " + std::to_string(key.q.size()) +
                     ", series class rank is " + std::to_string(class_rank_));
  }
  if (!std::is_sorted(key.t.begin(), key.t.end())) throw InputError("monomial t-multiset not sorted");
  for (const auto& v : key.t) {
    if (v.basis < 0 || v.basis >= basis_size_ || v.index < 0) {
      throw InputError("monomial variable t^" + std::to_string(v.basis) + "_" +
                       std::to_string(v.index) + " outside the series basis");
    }
  }
  for (int d : key.q) {
    if (d < 0) throw InputError("negative q-degree in monomial");
  }
  if (key.lambda % 2 != 0) throw InputError("odd lambda exponent in monomial");
}

bool DescendentSeries::in_bounds(const Monomial& key) const {
  if (key.lambda > trunc_.max_lambda_exponent()) return false;
  if (key.t_degree() > trunc_.max_t_degree) return false;
  if (key.class_degree() > trunc_.max_class_degree) return false;
  for (const auto& v : key.t) {
    if (v.index > trunc_.max_descendent_index) return false;
  }
  return true;
}

bool DescendentSeries::is_exact(const Monomial& key) const {
  return in_bounds(key) && key.weight() <= validity_.exact_weight &&
         key.t_degree() <= validity_.exact_t_degree;
}

CoefficientQuery DescendentSeries::coefficient(const Monomial& key) const {
  check_key_shape(key);
  if (!in_bounds(key)) throw InputError("coefficient requested outside the truncation");
  auto it = terms_.find(key);
  return CoefficientQuery{it == terms_.end() ? Rational(0) : it->second, is_exact(key)};
}

DescendentSeries& DescendentSeries::add_term(Monomial key, const Rational& c) {
  std::sort(key.t.begin(), key.t.end());
  check_key_shape(key);
  if (!in_bounds(key)) throw InputError("term outside the truncation");
  if (c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

bool DescendentSeries::accumulate(const Monomial& key, const Rational& c) {
  if (!in_bounds(key)) return false;
  if (c == 0) return true;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) it->second += c;
  return true;
}

void DescendentSeries::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

DescendentSeries& DescendentSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

namespace {

void require_compatible(const DescendentSeries& a, const DescendentSeries& b, const char* op) {
  if (!(a.truncation() == b.truncation())) {
    throw InputError(std::string(op) + ": mismatched truncations");
  }
  if (a.basis_size() != b.basis_size() || a.class_rank() != b.class_rank()) {
    throw InputError(std::string(op) + ": mismatched basis or class rank");
  }
}

Validity meet(const Validity& a, const Validity& b) {
  return Validity{std::min(a.exact_weight, b.exact_weight),
                  std::min(a.exact_t_degree, b.exact_t_degree), a.index_closed && b.index_closed};
}

void require_nonnegative_weights(const DescendentSeries& s, const char* op) {
  for (const auto& [k, v] : s.terms()) {
    if (k.weight() < 0) {
      throw InputError(std::string(op) + ": operand has a term of negative weight (lambda^" +
                       std::to_string(k.lambda) + " with t-degree " +
                       std::to_string(k.t_degree()) + ")");
    }
  }
}

}  // namespace

DescendentSeries series_add(const DescendentSeries& a, const DescendentSeries& b) {
  require_compatible(a, b, "series_add");
  DescendentSeries out = a;
  for (const auto& [k, v] : b.terms()) out.accumulate(k, v);
  out.prune();
  out.set_validity(meet(a.validity(), b.validity()));
  return out;
}

DescendentSeries series_sub(const DescendentSeries& a, const DescendentSeries& b) {
  require_compatible(a, b, "series_sub");
  DescendentSeries out = a;
  for (const auto& [k, v] : b.terms()) out.accumulate(k, -v);
  out.prune();
  out.set_validity(meet(a.validity(), b.validity()));
  return out;
}

DescendentSeries series_mul(const DescendentSeries& a, const DescendentSeries& b) {
  require_compatible(a, b, "series_mul");
  require_nonnegative_weights(a, "series_mul");
  require_nonnegative_weights(b, "series_mul");
  DescendentSeries out(a.truncation(), a.basis_size(), a.class_rank());
  const Truncation& tr = a.truncation();
  bool dropped_lambda = false;
  for (const auto& [ka, va] : a.terms()) {
    const int deg_a = ka.t_degree();
    const int cls_a = ka.class_degree();
    for (const auto& [kb, vb] : b.terms()) {
      if (deg_a + kb.t_degree() > tr.max_t_degree) continue;
      if (cls_a + kb.class_degree() > tr.max_class_degree) continue;
      if (ka.lambda + kb.lambda > tr.max_lambda_exponent()) {
        dropped_lambda = true;
        continue;
      }
      out.accumulate(multiply(ka, kb), va * vb);
    }
  }
  out.prune();
  Validity v = meet(a.validity(), b.validity());
  // Dropped products have lambda >= 2G, hence weight >= 2G.
  if (dropped_lambda) v.exact_weight = std::min(v.exact_weight, tr.max_lambda_exponent() + 1);
  out.set_validity(v);
  return out;
}

namespace {

Monomial constant_key(int class_rank) { return Monomial{0, std::vector<int>(class_rank, 0), {}}; }

}  // namespace

DescendentSeries series_exp(const DescendentSeries& f) {
  const Monomial one = constant_key(f.class_rank());
  if (auto it = f.terms().find(one); it != f.terms().end()) {
    throw InputError("series_exp: argument has nonzero constant term " + to_string(it->second));
  }
  require_nonnegative_weights(f, "series_exp");
  DescendentSeries result = DescendentSeries::constant(f.truncation(), 1, f.basis_size(), f.class_rank());
  result.set_validity(f.validity());
  DescendentSeries power = result;
  for (int j = 1; !power.empty(); ++j) {
    power = series_mul(power, f);
    power *= make_rational(1, j);
    result = series_add(result, power);
    result.set_validity(meet(result.validity(), power.validity()));
  }
  return result;
}

DescendentSeries series_log(const DescendentSeries& z) {
  const Monomial one = constant_key(z.class_rank());
  auto it = z.terms().find(one);
  if (it == z.terms().end() || it->second != 1) {
    throw InputError("series_log: constant term must be 1");
  }
  DescendentSeries u = z;
  u.add_term(one, -1);
  require_nonnegative_weights(u, "series_log");
  DescendentSeries result(z.truncation(), z.basis_size(), z.class_rank());
  result.set_validity(z.validity());
  DescendentSeries power = DescendentSeries::constant(z.truncation(), 1, z.basis_size(), z.class_rank());
  power.set_validity(z.validity());
  for (int j = 1;; ++j) {
    power = series_mul(power, u);
    if (power.empty()) break;
    DescendentSeries term = power;
    term *= make_rational(j % 2 == 1 ? 1 : -1, j);
    result = series_add(result, term);
  }
  return result;
}

DescendentSeries differentiate(const DescendentSeries& f, int basis, int index) {
  if (basis < 0 || basis >= f.basis_size() || index < 0) {
    throw InputError("differentiate: variable outside the series basis");
  }
  const DescVar v{basis, index};
  DescendentSeries out(f.truncation(), f.basis_size(), f.class_rank());
  for (const auto& [k, c] : f.terms()) {
    auto pos = std::lower_bound(k.t.begin(), k.t.end(), v);
    if (pos == k.t.end() || *pos != v) continue;
    const int mult = k.multiplicity(v);
    Monomial m = k;
    m.t.erase(m.t.begin() + (pos - k.t.begin()));
    out.accumulate(m, c * mult);
  }
  out.prune();
  Validity val = f.validity();
  if (val.exact_weight != Validity::kUnbounded) val.exact_weight -= 1;
  // Terms of t-degree D+1 are never stored, yet their derivatives land in bounds.
  val.exact_t_degree = std::min(val.exact_t_degree, f.truncation().max_t_degree) - 1;
  out.set_validity(val);
  return out;
}

bool agree_on_exact_region(const DescendentSeries& a, const DescendentSeries& b) {
  auto check = [](const DescendentSeries& x, const DescendentSeries& y) {
    for (const auto& [k, v] : x.terms()) {
      if (!x.is_exact(k) || !y.in_bounds(k) || !y.is_exact(k)) continue;
      auto it = y.terms().find(k);
      const Rational other = it == y.terms().end() ? Rational(0) : it->second;
      if (other != v) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

}  // namespace gwlab
