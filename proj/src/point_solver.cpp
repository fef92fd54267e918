#include "gwlab/point_solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"
#include "gwlab/target.hpp"

namespace gwlab {

bool PointKeyLess::operator()(const PointKey& a, const PointKey& b) const {
  if (a.genus != b.genus) return a.genus < b.genus;
  if (a.ks.size() != b.ks.size()) return a.ks.size() < b.ks.size();
  return a.ks < b.ks;
}

bool point_key_admissible(const PointKey& key) {
  const int n = key.points();
  if (key.genus < 0 || 2 * key.genus - 2 + n <= 0) return false;
  if (std::any_of(key.ks.begin(), key.ks.end(), [](int k) { return k < 0; })) return false;
  return std::accumulate(key.ks.begin(), key.ks.end(), 0) == 3 * key.genus - 3 + n;
}

namespace {

std::string render_key(const PointKey& key) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < key.ks.size(); ++i) os << (i ? " " : "") << "tau_" << key.ks[i];
  os << ">_" << key.genus;
  return os.str();
}

Integer aut(const std::vector<int>& sorted) {
  Integer a = 1;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    a *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return a;
}

std::vector<int> with(std::vector<int> v, std::initializer_list<int> extra) {
  v.insert(v.end(), extra.begin(), extra.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> without_one(const std::vector<int>& v, int x) {
  std::vector<int> out = v;
  out.erase(std::find(out.begin(), out.end(), x));
  return out;
}

// Sorted multisets of `size` non-negative integers summing to `total`, in
// lexicographic order.
void enumerate_multisets(int size, int total, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  auto rec = [&](auto& self, int remaining_size, int remaining_total, int min_value) -> void {
    if (remaining_size == 0) {
      if (remaining_total == 0) out.push_back(cur);
      return;
    }
    for (int v = min_value; v * remaining_size <= remaining_total; ++v) {
      cur.push_back(v);
      self(self, remaining_size - 1, remaining_total - v, v);
      cur.pop_back();
    }
  };
  rec(rec, size, total, 0);
}

}  // namespace

Rational IntersectionTable::value(const PointKey& key) const {
  if (!point_key_admissible(key)) return 0;
  if (!covers(key)) {
    throw TruncationError("correlator " + render_key(key) + " lies outside the table bounds (g <= " +
                          std::to_string(max_genus) + ", n <= " + std::to_string(max_points) + ")");
  }
  auto it = entries.find(key);
  return it == entries.end() ? Rational(0) : it->second;
}

Rational IntersectionTable::value(int genus, std::vector<int> ks) const {
  std::sort(ks.begin(), ks.end());
  return value(PointKey{genus, std::move(ks)});
}

std::string IntersectionTable::render() const {
  std::ostringstream os;
  for (const auto& [key, v] : entries) os << render_key(key) << " = " << to_string(v) << "\n";
  return os.str();
}

Rational genus0_closed(const std::vector<int>& ks) {
  const int n = static_cast<int>(ks.size());
  if (n < 3) return 0;
  if (std::any_of(ks.begin(), ks.end(), [](int k) { return k < 0; })) return 0;
  if (std::accumulate(ks.begin(), ks.end(), 0) != n - 3) return 0;
  Integer denom = 1;
  for (int k : ks) denom *= factorial(k);
  Rational out(factorial(n - 3), denom);
  out.canonicalize();
  return out;
}

LinearForm evaluate_constraint(const DiffOperator& op, int genus, const std::vector<int>& s,
                               const CorrelatorLookup& lookup) {
  if (op.basis_size() != 1) throw InputError("evaluate_constraint: point-target operators only");
  if (!std::is_sorted(s.begin(), s.end())) throw InputError("evaluate_constraint: S must be sorted");
  LinearForm out;
  const Integer aut_s = aut(s);

  auto single = [&](int g, std::vector<int> ks, const Rational& factor) {
    if (factor == 0 || g < 0) return;
    std::sort(ks.begin(), ks.end());
    PointKey key{g, std::move(ks)};
    if (!point_key_admissible(key)) return;
    const CorrelatorValue v = lookup(key);
    if (v.unknown) {
      out.coefficient += factor;
    } else {
      out.constant += factor * v.value;
    }
  };

  for (const auto& [fk, p] : op.families()) {
    if (fk.lambda % 2 != 0) continue;
    const int g = genus - fk.lambda / 2;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t j = i;
      while (j < s.size() && s[j] == s[i]) ++j;
      const int m = s[i];
      const int mult = static_cast<int>(j - i);
      if (m + fk.shift >= 0) {
        const Rational val = p[0][0](Rational(m));
        if (val != 0) single(g, with(without_one(s, m), {m + fk.shift}), val * mult);
      }
      i = j;
    }
  }

  for (const auto& [mono, c] : op.finite()) {
    if (mono.lambda % 2 != 0) continue;
    std::vector<int> rest = s;
    bool contained = true;
    for (const auto& v : mono.ts) {
      auto it = std::find(rest.begin(), rest.end(), v.index);
      if (it == rest.end()) {
        contained = false;
        break;
      }
      rest.erase(it);
    }
    if (!contained) continue;
    Rational ratio(aut_s, aut(rest));
    ratio.canonicalize();
    const Rational factor = c * ratio;
    const int g = genus - mono.lambda / 2;
    switch (mono.ds.size()) {
      case 0:
        if (rest.empty() && g == 1) out.constant += factor;
        break;
      case 1:
        single(g, with(rest, {mono.ds[0].index}), factor);
        break;
      case 2: {
        const int b1 = mono.ds[0].index;
        const int b2 = mono.ds[1].index;
        single(g, with(rest, {b1, b2}), factor);
        // d_{b1} F * d_{b2} F over ordered splits of the positions of rest.
        const std::size_t r = rest.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
          std::vector<int> left{b1};
          std::vector<int> right{b2};
          for (std::size_t pos = 0; pos < r; ++pos) ((mask >> pos) & 1U ? left : right).push_back(rest[pos]);
          std::sort(left.begin(), left.end());
          std::sort(right.begin(), right.end());
          for (int g1 = 0; g1 <= g + 1; ++g1) {
            PointKey kl{g1, left};
            PointKey kr{g + 1 - g1, right};
            if (!point_key_admissible(kl) || !point_key_admissible(kr)) continue;
            const CorrelatorValue vl = lookup(kl);
            const CorrelatorValue vr = lookup(kr);
            if ((!vl.unknown && vl.value == 0) || (!vr.unknown && vr.value == 0)) continue;
            if (vl.unknown || vr.unknown) {
              throw ConsistencyError("unknown correlator appears in a quadratic term");
            }
            out.constant += factor * vl.value * vr.value;
          }
        }
        break;
      }
      default:
        throw InputError("evaluate_constraint: operator term of order > 2");
    }
  }
  return out;
}

IntersectionTable solve_point(int max_genus, int max_points) {
  if (max_genus < 0) throw InputError("solve_point: max_genus must be >= 0");
  if (max_points < 1) throw InputError("solve_point: max_points must be >= 1");
  const TargetGeometry point = point_target();
  // Genus g - 1 equations reach one more marking than genus g ones.
  auto points_bound = [&](int g) { return max_points + (max_genus - g); };

  std::map<int, DiffOperator> operators;
  auto op_for = [&](int k) -> const DiffOperator& {
    auto it = operators.find(k);
    if (it == operators.end()) it = operators.emplace(k, build_virasoro(k, point)).first;
    return it->second;
  };

  std::map<PointKey, Rational, PointKeyLess> solved;
  for (int g = 0; g <= max_genus; ++g) {
    for (int n = 1; n <= points_bound(g); ++n) {
      if (2 * g - 2 + n <= 0) continue;
      std::vector<std::vector<int>> multisets;
      enumerate_multisets(n, 3 * g - 3 + n, multisets);
      for (const auto& ks : multisets) {
        const PointKey target{g, ks};
        const int top = ks.back();
        const std::vector<int> s = without_one(ks, top);
        auto lookup = [&](const PointKey& key) -> CorrelatorValue {
          if (key == target) return {Rational(0), true};
          if (auto it = solved.find(key); it != solved.end()) return {it->second, false};
          if (key.genus > max_genus || key.points() > points_bound(key.genus)) {
            throw TruncationError("solving " + render_key(target) + " needs " + render_key(key) +
                                  ", outside the solver bounds");
          }
          throw ConsistencyError("equation for " + render_key(target) + " references unsolved " +
                                 render_key(key));
        };
        const LinearForm eq = evaluate_constraint(op_for(top - 1), g, s, lookup);
        if (eq.coefficient == 0) {
          throw ConsistencyError("equation for " + render_key(target) + " does not contain it");
        }
        solved.emplace(target, -eq.constant / eq.coefficient);
      }
    }
  }

  IntersectionTable table;
  table.max_genus = max_genus;
  table.max_points = max_points;
  for (auto& [key, v] : solved) {
    if (key.points() <= max_points) table.entries.emplace(key, v);
  }
  return table;
}

EquationReport check_all_equations(const IntersectionTable& table) {
  const TargetGeometry point = point_target();
  std::map<int, DiffOperator> operators;
  auto lookup = [&](const PointKey& key) -> CorrelatorValue { return {table.value(key), false}; };
  EquationReport report;
  for (const auto& [key, v] : table.entries) {
    std::vector<int> distinct = key.ks;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int j : distinct) {
      const int k = j - 1;
      auto it = operators.find(k);
      if (it == operators.end()) it = operators.emplace(k, build_virasoro(k, point)).first;
      const std::vector<int> s = without_one(key.ks, j);
      try {
        const LinearForm eq = evaluate_constraint(it->second, key.genus, s, lookup);
        ++report.checked;
        if (eq.constant != 0) {
          report.failures.push_back("L_" + std::to_string(k) + " equation at " + render_key(key) +
                                    " evaluates to " + to_string(eq.constant));
        }
      } catch (const TruncationError&) {
        ++report.skipped_out_of_bounds;
      }
    }
  }
  return report;
}

EquationReport check_string_dilaton(const IntersectionTable& table) {
  EquationReport report;
  auto stable = [](int g, int n) { return 2 * g - 2 + n > 0; };
  for (const auto& [key, v] : table.entries) {
    const int g = key.genus;
    const int n = key.points();
    if (!point_key_admissible(key)) {
      report.failures.push_back("inadmissible key " + render_key(key) + " stored");
      continue;
    }
    if (key.ks.front() == 0 && stable(g, n - 1)) {
      const std::vector<int> rest = without_one(key.ks, 0);
      Rational rhs = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> reduced = rest;
        reduced[j] -= 1;
        rhs += table.value(g, reduced);
      }
      ++report.checked;
      if (rhs != v) {
        report.failures.push_back("string equation fails at " + render_key(key) + ": " + to_string(v) +
                                  " != " + to_string(rhs));
      }
    }
    if (std::find(key.ks.begin(), key.ks.end(), 1) != key.ks.end() && stable(g, n - 1)) {
      const std::vector<int> rest = without_one(key.ks, 1);
      const Rational rhs = Rational(2 * g - 2 + n - 1) * table.value(g, rest);
      ++report.checked;
      if (rhs != v) {
        report.failures.push_back("dilaton equation fails at " + render_key(key) + ": " + to_string(v) +
                                  " != " + to_string(rhs));
      }
    }
  }
  return report;
}

DescendentSeries point_free_energy(const IntersectionTable& table, const Truncation& trunc) {
  trunc.validate();
  if (table.entries.empty()) throw InputError("point_partition: intersection table is empty");
  if (table.max_genus < trunc.max_genus || table.max_points < trunc.max_t_degree) {
    throw TruncationError("point_partition: table (g <= " + std::to_string(table.max_genus) + ", n <= " +
                          std::to_string(table.max_points) + ") does not cover the truncation (g <= " +
                          std::to_string(trunc.max_genus) + ", n <= " + std::to_string(trunc.max_t_degree) + ")");
  }
  const int index_needed = 3 * trunc.max_genus - 3 + trunc.max_t_degree;
  if (trunc.max_descendent_index < index_needed) {
    throw TruncationError("point_partition: max_descendent_index must be >= " + std::to_string(index_needed));
  }
  DescendentSeries f(trunc, 1, 0);
  for (const auto& [key, v] : table.entries) {
    if (key.genus > trunc.max_genus || key.points() > trunc.max_t_degree) continue;
    std::vector<DescVar> t;
    for (int k : key.ks) t.push_back(DescVar{0, k});
    Monomial m = make_monomial(2 * key.genus - 2, std::move(t));
    f.accumulate(m, v / Rational(m.automorphisms()));
  }
  f.prune();
  Validity val;
  val.exact_weight = trunc.max_lambda_exponent() + 1;
  val.exact_t_degree = trunc.max_t_degree;
  val.index_closed = true;
  f.set_validity(val);
  return f;
}

DescendentSeries point_partition(const IntersectionTable& table, const Truncation& trunc) {
  return series_exp(point_free_energy(table, trunc));
}

}  // namespace gwlab
