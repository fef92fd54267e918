#include "gwlab/virasoro.hpp"

#include <algorithm>
#include <sstream>

#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"
#include "gwlab/parallel.hpp"

namespace gwlab {

namespace {

PolyMatrix zero_poly_matrix(int n) {
  return PolyMatrix(n, std::vector<Polynomial>(n));
}

bool poly_matrix_zero(const PolyMatrix& m) {
  for (const auto& row : m) {
    for (const auto& p : row) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

// (P(m) Q(m + shift))_{ad} = sum_b P_ab(m) Q_bd(m + shift)
PolyMatrix mul_shifted(const PolyMatrix& p, const PolyMatrix& q, int shift) {
  const int n = static_cast<int>(p.size());
  PolyMatrix out = zero_poly_matrix(n);
  for (int b = 0; b < n; ++b) {
    std::vector<Polynomial> q_row(n);
    bool any = false;
    for (int d = 0; d < n; ++d) {
      if (q[b][d].is_zero()) continue;
      q_row[d] = q[b][d].shifted(Rational(shift));
      any = true;
    }
    if (!any) continue;
    for (int a = 0; a < n; ++a) {
      if (p[a][b].is_zero()) continue;
      for (int d = 0; d < n; ++d) {
        if (!q_row[d].is_zero()) out[a][d] += p[a][b] * q_row[d];
      }
    }
  }
  return out;
}

// Evaluates (P(m) Q(m + shift))_{ad} at an integer m.
Rational mul_shifted_at(const PolyMatrix& p, const PolyMatrix& q, int shift, int m, int a, int d) {
  Rational acc = 0;
  const int n = static_cast<int>(p.size());
  for (int b = 0; b < n; ++b) {
    if (p[a][b].is_zero() || q[b][d].is_zero()) continue;
    acc += p[a][b](Rational(m)) * q[b][d](Rational(m + shift));
  }
  return acc;
}

void accumulate(DiffOperator::Finite& out, OpMonomial mono, const Rational& c) {
  if (c == 0) return;
  std::sort(mono.ts.begin(), mono.ts.end());
  std::sort(mono.ds.begin(), mono.ds.end());
  auto [it, inserted] = out.try_emplace(std::move(mono), c);
  if (!inserted) it->second += c;
}

// Normal-ordered product x * y: every partial matching between x.ds and
// y.ts contributes one contraction term.
void wick_product(const OpMonomial& x, const OpMonomial& y, const Rational& c,
                  DiffOperator::Finite& out) {
  const auto& b = x.ds;
  const auto& cs = y.ts;
  std::vector<bool> b_used(b.size(), false);
  std::vector<bool> c_used(cs.size(), false);
  auto recurse = [&](auto& self, std::size_t i) -> void {
    if (i == b.size()) {
      OpMonomial m;
      m.lambda = x.lambda + y.lambda;
      m.ts = x.ts;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (!c_used[j]) m.ts.push_back(cs[j]);
      }
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b_used[j]) m.ds.push_back(b[j]);
      }
      m.ds.insert(m.ds.end(), y.ds.begin(), y.ds.end());
      accumulate(out, std::move(m), c);
      return;
    }
    self(self, i + 1);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (c_used[j] || cs[j] != b[i]) continue;
      c_used[j] = true;
      b_used[i] = true;
      self(self, i + 1);
      c_used[j] = false;
      b_used[i] = false;
    }
  };
  recurse(recurse, 0);
}

// sign * [family, mono] with the family's derivation action on each factor.
void bracket_family_finite(const FamilyKey& fk, const PolyMatrix& p, const OpMonomial& mono,
                           const Rational& c, int sign, DiffOperator::Finite& out) {
  const int n = static_cast<int>(p.size());
  const int s = fk.shift;
  for (std::size_t j = 0; j < mono.ts.size(); ++j) {
    const auto [cb, idx] = mono.ts[j];
    const int m = idx - s;
    if (m < 0) continue;
    for (int a = 0; a < n; ++a) {
      if (p[a][cb].is_zero()) continue;
      const Rational val = p[a][cb](Rational(m));
      if (val == 0) continue;
      OpMonomial r = mono;
      r.lambda += fk.lambda;
      r.ts[j] = DescVar{a, m};
      accumulate(out, std::move(r), c * val * sign);
    }
  }
  for (std::size_t j = 0; j < mono.ds.size(); ++j) {
    const auto [d, idx] = mono.ds[j];
    if (idx + s < 0) continue;
    for (int b = 0; b < n; ++b) {
      if (p[d][b].is_zero()) continue;
      const Rational val = p[d][b](Rational(idx));
      if (val == 0) continue;
      OpMonomial r = mono;
      r.lambda += fk.lambda;
      r.ds[j] = DescVar{b, idx + s};
      accumulate(out, std::move(r), -c * val * sign);
    }
  }
}

std::string var_name(const char* sym, const DescVar& v) {
  return std::string(sym) + "[" + std::to_string(v.basis) + "," + std::to_string(v.index) + "]";
}

std::string lambda_factor(int e) {
  if (e == 0) return "";
  return " lambda^" + std::to_string(e);
}

}  // namespace

void DiffOperator::add_family(FamilyKey key, const PolyMatrix& coefficients) {
  if (static_cast<int>(coefficients.size()) != basis_size_) {
    throw InputError("family coefficient matrix does not match the operator basis");
  }
  if (poly_matrix_zero(coefficients)) return;
  auto it = families_.find(key);
  if (it == families_.end()) {
    families_.emplace(key, coefficients);
    return;
  }
  for (int a = 0; a < basis_size_; ++a) {
    for (int b = 0; b < basis_size_; ++b) it->second[a][b] += coefficients[a][b];
  }
  if (poly_matrix_zero(it->second)) families_.erase(it);
}

void DiffOperator::add_term(OpMonomial term, const Rational& c) {
  if (c == 0) return;
  for (const auto& v : term.ts) {
    if (v.basis < 0 || v.basis >= basis_size_ || v.index < 0) throw InputError("operator variable out of range");
  }
  for (const auto& v : term.ds) {
    if (v.basis < 0 || v.basis >= basis_size_ || v.index < 0) throw InputError("operator variable out of range");
  }
  std::sort(term.ts.begin(), term.ts.end());
  std::sort(term.ds.begin(), term.ds.end());
  auto [it, inserted] = finite_.try_emplace(std::move(term), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) finite_.erase(it);
  }
}

Rational DiffOperator::scalar() const {
  auto it = finite_.find(OpMonomial{});
  return it == finite_.end() ? Rational(0) : it->second;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& other) {
  if (other.basis_size_ != basis_size_) throw InputError("operators over different bases");
  for (const auto& [k, p] : other.families_) add_family(k, p);
  for (const auto& [m, c] : other.finite_) add_term(m, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& other) {
  DiffOperator neg = other;
  neg *= Rational(-1);
  return *this += neg;
}

DiffOperator& DiffOperator::operator*=(const Rational& s) {
  if (s == 0) {
    families_.clear();
    finite_.clear();
    return *this;
  }
  for (auto& [k, p] : families_) {
    for (auto& row : p) {
      for (auto& poly : row) poly *= s;
    }
  }
  for (auto& [m, c] : finite_) c *= s;
  return *this;
}

std::string DiffOperator::to_string() const {
  std::ostringstream os;
  for (const auto& [key, p] : families_) {
    const int lo = std::max(0, -key.shift);
    for (int a = 0; a < basis_size_; ++a) {
      for (int b = 0; b < basis_size_; ++b) {
        if (p[a][b].is_zero()) continue;
        std::string dindex = "m";
        if (key.shift > 0) dindex += "+" + std::to_string(key.shift);
        if (key.shift < 0) dindex += std::to_string(key.shift);
        os << "sum_{m>=" << lo << "} (" << p[a][b].to_string() << ")" << lambda_factor(key.lambda)
           << " t[" << a << ",m] d[" << b << "," << dindex << "]\n";
      }
    }
  }
  for (const auto& [m, c] : finite_) {
    os << gwlab::to_string(c) << lambda_factor(m.lambda);
    for (const auto& v : m.ts) os << " " << var_name("t", v);
    for (const auto& v : m.ds) os << " " << var_name("d", v);
    os << "\n";
  }
  if (is_zero()) os << "0\n";
  return os.str();
}

DiffOperator op_t(int basis_size, int a, int k, const Rational& c, int lambda) {
  DiffOperator op(basis_size);
  op.add_term(OpMonomial{lambda, {DescVar{a, k}}, {}}, c);
  return op;
}

DiffOperator op_d(int basis_size, int a, int k, const Rational& c, int lambda) {
  DiffOperator op(basis_size);
  op.add_term(OpMonomial{lambda, {}, {DescVar{a, k}}}, c);
  return op;
}

DiffOperator op_scalar(int basis_size, const Rational& c, int lambda) {
  DiffOperator op(basis_size);
  op.add_term(OpMonomial{lambda, {}, {}}, c);
  return op;
}

DiffOperator op_product(const DiffOperator& a, const DiffOperator& b) {
  if (!a.families().empty() || !b.families().empty()) {
    throw InputError("op_product: only fixed-index operators can be multiplied");
  }
  DiffOperator::Finite acc;
  for (const auto& [x, cx] : a.finite()) {
    for (const auto& [y, cy] : b.finite()) wick_product(x, y, cx * cy, acc);
  }
  DiffOperator out(a.basis_size());
  for (auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

DiffOperator build_virasoro(int k, const TargetGeometry& target) {
  if (k < -1) throw InputError("build_virasoro: k must be >= -1, got " + std::to_string(k));
  const int n = static_cast<int>(target.size());
  DiffOperator op(n);
  std::vector<Rational> shifts(n);
  for (int a = 0; a < n; ++a) shifts[a] = target.hodge_shift(a);

  for (int i = 0; i <= k + 1; ++i) {
    const RationalMatrix ci = target.c1_power(i);
    if (gwlab::is_zero(ci)) continue;
    const Polynomial bracket(bracket_factor_polynomial(k, i));
    const int s = k - i;

    // [b_a + m]^k_i (C^i)_a^b t~^a_m d_{b, m+k-i}
    PolyMatrix family = zero_poly_matrix(n);
    for (int a = 0; a < n; ++a) {
      const Polynomial in_m = bracket.shifted(shifts[a]);
      for (int b = 0; b < n; ++b) {
        if (ci[a][b] != 0) family[a][b] = in_m * ci[a][b];
      }
    }
    op.add_family(FamilyKey{0, s}, family);

    // dilaton shift t~^0_1 = t^0_1 - 1
    if (1 + s >= 0) {
      const Rational factor = bracket_factor(shifts[0] + 1, k, i);
      for (int b = 0; b < n; ++b) {
        if (ci[0][b] != 0) op.add_term(OpMonomial{0, {}, {DescVar{b, 1 + s}}}, -factor * ci[0][b]);
      }
    }

    // (hbar/2) (-1)^{m+1} [b^a - m - 1]^k_i (C^i)^{ab} d_{a,m} d_{b,k-m-i-1}, where
    // b^a = 1 - b_a is the shift of the dual class g^{ac} gamma_c that d_{a,m}
    // pairs with. The two readings agree when b_a = 1/2 (the point); only
    // the dual one is symmetric in the two derivatives and closes the bracket.
    const RationalMatrix ci_up = target.c1_power_raised(i);
    for (int m = 0; k - m - i - 1 >= 0; ++m) {
      const int other = k - m - i - 1;
      const Rational sign = (m % 2 == 0) ? Rational(-1) : Rational(1);
      for (int a = 0; a < n; ++a) {
        const Rational factor = bracket_factor(1 - shifts[a] - m - 1, k, i);
        if (factor == 0) continue;
        for (int b = 0; b < n; ++b) {
          if (ci_up[a][b] == 0) continue;
          op.add_term(OpMonomial{2, {}, {DescVar{a, m}, DescVar{b, other}}},
                      make_rational(1, 2) * sign * factor * ci_up[a][b]);
        }
      }
    }
  }

  // (lambda^{-2}/2) (C^{k+1})_{ab} t^a_0 t^b_0
  const RationalMatrix top = target.c1_power_lowered(k + 1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (top[a][b] != 0) op.add_term(OpMonomial{-2, {DescVar{a, 0}, DescVar{b, 0}}, {}}, make_rational(1, 2) * top[a][b]);
    }
  }

  if (k == 0) {
    const Rational scalar =
        (Rational(3 - target.dim()) * target.chern_top() - 2 * target.chern_mixed()) / 48;
    op.add_term(OpMonomial{}, scalar);
  }
  return op;
}

DiffOperator commutator(const DiffOperator& x, const DiffOperator& y) {
  if (x.basis_size() != y.basis_size()) throw InputError("commutator of operators over different bases");
  const int n = x.basis_size();
  DiffOperator out(n);
  DiffOperator::Finite finite;

  for (const auto& [ka, pa] : x.families()) {
    for (const auto& [kb, pb] : y.families()) {
      const int s = ka.shift;
      const int u = kb.shift;
      const int lambda = ka.lambda + kb.lambda;
      PolyMatrix r = mul_shifted(pa, pb, s);
      const PolyMatrix second = mul_shifted(pb, pa, u);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) r[a][b] -= second[a][b];
      }
      out.add_family(FamilyKey{lambda, s + u}, r);

      // The merged family starts at max(0, -(s+u)); terms below each
      // original family's own range were never present.
      const int lo = std::max(0, -(s + u));
      for (int m = lo; m < -s; ++m) {
        for (int a = 0; a < n; ++a) {
          for (int d = 0; d < n; ++d) {
            const Rational v = mul_shifted_at(pa, pb, s, m, a, d);
            if (v != 0) accumulate(finite, OpMonomial{lambda, {DescVar{a, m}}, {DescVar{d, m + s + u}}}, -v);
          }
        }
      }
      for (int m = lo; m < -u; ++m) {
        for (int a = 0; a < n; ++a) {
          for (int d = 0; d < n; ++d) {
            const Rational v = mul_shifted_at(pb, pa, u, m, a, d);
            if (v != 0) accumulate(finite, OpMonomial{lambda, {DescVar{a, m}}, {DescVar{d, m + s + u}}}, v);
          }
        }
      }
    }
  }

  for (const auto& [ka, pa] : x.families()) {
    for (const auto& [mono, c] : y.finite()) bracket_family_finite(ka, pa, mono, c, 1, finite);
  }
  for (const auto& [kb, pb] : y.families()) {
    for (const auto& [mono, c] : x.finite()) bracket_family_finite(kb, pb, mono, c, -1, finite);
  }
  for (const auto& [mx, cx] : x.finite()) {
    for (const auto& [my, cy] : y.finite()) {
      wick_product(mx, my, cx * cy, finite);
      wick_product(my, mx, -cx * cy, finite);
    }
  }
  for (auto& [m, c] : finite) out.add_term(m, c);
  return out;
}

std::string BracketReport::to_string() const {
  std::ostringstream os;
  os << "virasoro bracket check: k_max=" << k_max << " pairs=" << pairs_checked
     << " defects=" << defects.size() << " " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& d : defects) {
    os << "defect [L_" << d.k << ", L_" << d.l << "] - (" << (d.k - d.l) << ") L_" << (d.k + d.l)
       << ": scalar " << gwlab::to_string(d.defect.scalar()) << "\n";
    os << d.defect.to_string();
  }
  return os.str();
}

BracketReport check_bracket(const TargetGeometry& target, int k_max) {
  if (k_max < -1) throw InputError("check_bracket: k_max must be >= -1");
  const int top = std::max(2 * k_max - 1, k_max);
  std::vector<DiffOperator> ops;
  for (int k = -1; k <= top; ++k) ops.push_back(build_virasoro(k, target));
  auto L = [&](int k) -> const DiffOperator& { return ops[k + 1]; };

  std::vector<std::pair<int, int>> pairs;
  for (int k = -1; k <= k_max; ++k) {
    for (int l = k + 1; l <= k_max; ++l) pairs.emplace_back(k, l);
  }
  std::vector<DiffOperator> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t idx) {
    const auto [k, l] = pairs[idx];
    results[idx] = commutator(L(k), L(l)) - L(k + l) * Rational(k - l);
  });

  BracketReport report;
  report.k_max = k_max;
  report.pairs_checked = static_cast<int>(pairs.size());
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (!results[idx].is_zero()) {
      report.defects.push_back(BracketDefect{pairs[idx].first, pairs[idx].second, std::move(results[idx])});
    }
  }
  return report;
}

DescendentSeries apply(const DiffOperator& op, const DescendentSeries& z) {
  if (op.basis_size() != z.basis_size()) {
    throw InputError("apply: operator basis size " + std::to_string(op.basis_size()) +
                     " does not match series basis size " + std::to_string(z.basis_size()));
  }
  const Truncation& tr = z.truncation();
  DescendentSeries out(tr, z.basis_size(), z.class_rank());
  const int n = op.basis_size();

  int drop_weight = 0;
  int drop_degree = 0;
  bool lowers_lambda = false;
  bool reads_high_index = !op.families().empty();
  for (const auto& [key, p] : op.families()) {
    drop_weight = std::max(drop_weight, -key.lambda);
    lowers_lambda = lowers_lambda || key.lambda < 0;
  }
  for (const auto& [m, c] : op.finite()) {
    const int dn = static_cast<int>(m.ts.size()) - static_cast<int>(m.ds.size());
    drop_weight = std::max(drop_weight, -(m.lambda + dn));
    lowers_lambda = lowers_lambda || m.lambda < 0;
    drop_degree = std::max(drop_degree, -dn);
    for (const auto& v : m.ds) {
      if (v.index > tr.max_descendent_index) reads_high_index = true;
    }
  }

  bool dropped_index = false;
  auto push = [&](const Monomial& key, const Rational& c) {
    if (!out.accumulate(key, c)) {
      const bool only_index = key.lambda <= tr.max_lambda_exponent() &&
                              key.t_degree() <= tr.max_t_degree &&
                              key.class_degree() <= tr.max_class_degree;
      if (only_index) dropped_index = true;
    }
  };

  for (const auto& [key, coeff] : z.terms()) {
    for (const auto& [fk, p] : op.families()) {
      std::size_t i = 0;
      while (i < key.t.size()) {
        std::size_t j = i;
        while (j < key.t.size() && key.t[j] == key.t[i]) ++j;
        const DescVar var = key.t[i];
        const int mult = static_cast<int>(j - i);
        const int m = var.index - fk.shift;
        if (m >= 0) {
          for (int a = 0; a < n; ++a) {
            if (p[a][var.basis].is_zero()) continue;
            const Rational val = p[a][var.basis](Rational(m));
            if (val == 0) continue;
            Monomial r = key;
            r.lambda += fk.lambda;
            r.t.erase(r.t.begin() + static_cast<std::ptrdiff_t>(i));
            r.t.insert(std::upper_bound(r.t.begin(), r.t.end(), DescVar{a, m}), DescVar{a, m});
            push(r, coeff * mult * val);
          }
        }
        i = j;
      }
    }
    for (const auto& [mono, c] : op.finite()) {
      Monomial r = key;
      Rational factor = c * coeff;
      bool vanishes = false;
      for (const auto& v : mono.ds) {
        auto pos = std::lower_bound(r.t.begin(), r.t.end(), v);
        if (pos == r.t.end() || *pos != v) {
          vanishes = true;
          break;
        }
        factor *= r.multiplicity(v);
        r.t.erase(pos);
      }
      if (vanishes) continue;
      for (const auto& v : mono.ts) r.t.insert(std::upper_bound(r.t.begin(), r.t.end(), v), v);
      r.lambda += mono.lambda;
      push(r, factor);
    }
  }
  out.prune();

  Validity v = z.validity();
  // Unstored terms above the lambda bound have weight >= 2G and come back
  // into range under a negative lambda shift.
  if (lowers_lambda) v.exact_weight = std::min(v.exact_weight, tr.max_lambda_exponent() + 1);
  if (v.exact_weight != Validity::kUnbounded) v.exact_weight -= drop_weight;
  // Terms of t-degree above D are never stored, yet d-d terms read them.
  if (drop_degree > 0) v.exact_t_degree = std::min(v.exact_t_degree, tr.max_t_degree) - drop_degree;
  if (!v.index_closed && reads_high_index) v.exact_weight = -1;
  v.index_closed = v.index_closed && !dropped_index;
  out.set_validity(v);
  return out;
}

std::string format_monomial(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << " ";
    first = false;
  };
  if (m.lambda != 0) {
    sep();
    os << "lambda^" << m.lambda;
  }
  for (std::size_t i = 0; i < m.q.size(); ++i) {
    if (m.q[i] == 0) continue;
    sep();
    os << "q" << i << "^" << m.q[i];
  }
  for (const auto& v : m.t) {
    sep();
    os << "t[" << v.basis << "," << v.index << "]";
  }
  if (first) os << "1";
  return os.str();
}

std::string ResidualReport::to_string() const {
  std::ostringstream os;
  os << "virasoro residual: k in [" << (ks.empty() ? 0 : ks.front()) << ", "
     << (ks.empty() ? -1 : ks.back()) << "] violations=" << violations.size() << " "
     << (passed() ? "PASS" : "FAIL") << "\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    auto bound = [](int b) { return b == Validity::kUnbounded ? std::string("inf") : std::to_string(b); };
    os << "L_" << ks[i] << ": exact region weight<=" << bound(regions[i].exact_weight)
       << " t-degree<=" << bound(regions[i].exact_t_degree) << "\n";
  }
  for (const auto& e : violations) {
    os << "L_" << e.k << " coefficient of " << format_monomial(e.key) << " = "
       << gwlab::to_string(e.value) << "\n";
  }
  return os.str();
}

ResidualReport residual(const TargetGeometry& target, const DescendentSeries& z, int k_min, int k_max) {
  if (static_cast<int>(target.size()) != z.basis_size()) {
    throw InputError("residual: series basis does not match the target");
  }
  ResidualReport report;
  for (int k = k_min; k <= k_max; ++k) report.ks.push_back(k);
  std::vector<DescendentSeries> results(report.ks.size());
  parallel_for(report.ks.size(), [&](std::size_t i) {
    results[i] = apply(build_virasoro(report.ks[i], target), z);
  });
  for (std::size_t i = 0; i < report.ks.size(); ++i) {
    const auto& r = results[i];
    report.regions.push_back(r.validity());
    for (const auto& [key, value] : r.terms()) {
      if (r.is_exact(key)) report.violations.push_back(ResidualEntry{report.ks[i], key, value});
    }
  }
  return report;
}

}  // namespace gwlab
