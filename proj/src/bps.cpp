#include "gwlab/bps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"

namespace gwlab {

int TableKey::class_degree() const { return std::accumulate(curve_class.begin(), curve_class.end(), 0); }

bool TableKeyLess::operator()(const TableKey& a, const TableKey& b) const {
  const int da = a.class_degree();
  const int db = b.class_degree();
  if (da != db) return da < db;
  if (a.curve_class != b.curve_class) return a.curve_class < b.curve_class;
  if (a.insertions != b.insertions) return a.insertions < b.insertions;
  return a.genus < b.genus;
}

int InvariantTable::coverage() const {
  if (complete_through_genus) return *complete_through_genus;
  int g = -1;
  for (const auto& [k, v] : entries) g = std::max(g, k.genus);
  return g;
}

std::string format_key(const TableKey& key, const ThreefoldData* data) {
  std::ostringstream os;
  os << "(g=" << key.genus << ", class=[";
  for (std::size_t i = 0; i < key.curve_class.size(); ++i) os << (i ? "," : "") << key.curve_class[i];
  os << "], insertions={";
  for (std::size_t i = 0; i < key.insertions.size(); ++i) {
    os << (i ? "," : "");
    if (data) {
      os << data->base().basis().at(key.insertions[i]).name;
    } else {
      os << key.insertions[i];
    }
  }
  os << "})";
  return os.str();
}

bool dimension_filter(const ThreefoldData& data, const std::vector<int>& curve_class,
                      const std::vector<int>& insertions) {
  if (curve_class.size() != data.generators().size()) return false;
  if (std::any_of(curve_class.begin(), curve_class.end(), [](int d) { return d < 0; })) return false;
  if (std::all_of(curve_class.begin(), curve_class.end(), [](int d) { return d == 0; })) return false;
  const int c1 = data.c1_degree(curve_class);
  if (c1 < 0) return false;
  int codim = 0;
  for (int a : insertions) {
    if (a < 0 || a >= static_cast<int>(data.base().size())) return false;
    const int deg = data.base().basis()[a].degree();
    if (deg <= 2) return false;
    codim += deg / 2;
  }
  if (c1 == 0 && !insertions.empty()) return false;
  return codim == static_cast<int>(insertions.size()) + c1;
}

DescendentSeries constant_potential(const ThreefoldData& data, const Truncation& trunc) {
  const auto& base = data.base();
  const int n = static_cast<int>(base.size());
  const int rank = static_cast<int>(data.generators().size());
  DescendentSeries f(trunc, n, rank);
  const std::vector<int> zero_q(rank, 0);

  // lambda^{-2} sum_{a1,a2,a3} t t t / 3! int gamma gamma gamma, collected by multiset.
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        const Rational& v = data.triple(a, b, c);
        if (v == 0) continue;
        Monomial m = make_monomial(-2, {DescVar{a, 0}, DescVar{b, 0}, DescVar{c, 0}}, zero_q);
        f.accumulate(m, v / Rational(m.automorphisms()));
      }
    }
  }
  for (std::size_t a : data.divisor_classes()) {
    const Rational& c2 = data.c2_pairing()[a];
    if (c2 == 0) continue;
    f.accumulate(make_monomial(0, {DescVar{static_cast<int>(a), 0}}, zero_q), -c2 / 24);
  }
  const Rational chern_factor = base.chern_top() - base.chern_mixed();
  for (int g = 2; g <= trunc.max_genus; ++g) {
    const Rational sign = g % 2 == 0 ? Rational(1) : Rational(-1);
    f.accumulate(make_monomial(2 * g - 2, {}, zero_q), sign / 2 * chern_factor * hodge_lambda_cubed(g));
  }
  f.prune();
  Validity v;
  v.exact_weight = trunc.max_lambda_exponent() + 1;
  f.set_validity(v);
  return f;
}

DescendentSeries nonconstant_potential(const GWTable& gw, const ThreefoldData& data,
                                       const Truncation& trunc) {
  const int n = static_cast<int>(data.base().size());
  const int rank = static_cast<int>(data.generators().size());
  DescendentSeries f(trunc, n, rank);
  for (const auto& [key, value] : gw.entries) {
    if (!dimension_filter(data, key.curve_class, key.insertions)) {
      throw InputError("GW entry " + format_key(key, &data) + " violates the dimension constraint");
    }
    std::vector<DescVar> t;
    for (int a : key.insertions) t.push_back(DescVar{a, 0});
    Monomial m = make_monomial(2 * key.genus - 2, std::move(t), key.curve_class);
    f.accumulate(m, value / Rational(m.automorphisms()));
  }
  f.prune();
  Validity v;
  v.exact_weight = std::min(2 * gw.coverage() + 1, trunc.max_lambda_exponent() + 1);
  v.exact_t_degree = trunc.max_t_degree;
  f.set_validity(v);
  return f;
}

namespace {

class SineCache {
 public:
  explicit SineCache(int max_genus) : order_(2 * std::max(max_genus, 0)) {}
  /// Coefficient of lambda^{2j} in (sin(d lambda/2)/(lambda/2))^e.
  const Rational& coefficient(int d, int e, int j) {
    auto key = std::make_pair(d, e);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, sin_ratio_power(d, e, order_)).first;
    return it->second.coefficient(j);
  }

 private:
  int order_;
  std::map<std::pair<int, int>, EvenLambdaSeries> cache_;
};

int vector_gcd(const std::vector<int>& v) {
  int g = 0;
  for (int x : v) g = std::gcd(g, x);
  return g;
}

std::vector<int> divided(const std::vector<int>& v, int d) {
  std::vector<int> out(v);
  for (auto& x : out) x /= d;
  return out;
}

std::vector<int> multiplied(const std::vector<int>& v, int d) {
  std::vector<int> out(v);
  for (auto& x : out) x *= d;
  return out;
}

void check_key(const ThreefoldData& data, const TableKey& key, const char* what) {
  if (key.genus < 0) throw InputError(std::string(what) + " entry with negative genus");
  if (!std::is_sorted(key.insertions.begin(), key.insertions.end())) {
    throw InputError(std::string(what) + " entry " + format_key(key, &data) + " has unsorted insertions");
  }
  if (!dimension_filter(data, key.curve_class, key.insertions)) {
    throw InputError(std::string(what) + " entry " + format_key(key, &data) +
                     " violates the dimension constraint");
  }
}

void add_entry(InvariantTable& table, TableKey key, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = table.entries.try_emplace(std::move(key), v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) table.entries.erase(it);
  }
}

Rational lookup(const InvariantTable& table, const TableKey& key) {
  auto it = table.entries.find(key);
  return it == table.entries.end() ? Rational(0) : it->second;
}

}  // namespace

GWTable gw_from_bps(const BPSTable& bps, const ThreefoldData& data, const Truncation& trunc) {
  trunc.validate();
  const int max_genus = trunc.max_genus;
  SineCache sine(max_genus);
  GWTable gw;
  gw.complete_through_genus = max_genus;
  for (const auto& [key, value] : bps.entries) {
    check_key(data, key, "BPS");
    if (key.class_degree() > trunc.max_class_degree) {
      throw TruncationError("BPS entry " + format_key(key, &data) + " exceeds max_class_degree " +
                            std::to_string(trunc.max_class_degree));
    }
    const int h = key.genus;
    if (h > max_genus) continue;
    const int c1 = data.c1_degree(key.curve_class);
    if (c1 == 0) {
      for (int d = 1; d * key.class_degree() <= trunc.max_class_degree; ++d) {
        const auto cls = multiplied(key.curve_class, d);
        for (int g = h; g <= max_genus; ++g) {
          const Rational coef = sine.coefficient(d, 2 * h - 2, g - h) / d;
          add_entry(gw, TableKey{g, cls, {}}, value * coef);
        }
      }
    } else {
      for (int g = h; g <= max_genus; ++g) {
        add_entry(gw, TableKey{g, key.curve_class, key.insertions},
                  value * sine.coefficient(1, 2 * h - 2 + c1, g - h));
      }
    }
  }
  return gw;
}

BPSTable bps_from_gw(const GWTable& gw, const ThreefoldData& data, const Truncation& trunc) {
  trunc.validate();
  const int max_genus = trunc.max_genus;
  if (gw.coverage() < max_genus && !gw.entries.empty()) {
    throw TruncationError("requested genus " + std::to_string(max_genus) +
                          " exceeds the GW table coverage (genus " + std::to_string(gw.coverage()) + ")");
  }
  SineCache sine(max_genus);
  BPSTable bps;
  bps.complete_through_genus = max_genus;

  // Group keys by (class, insertions); CY classes also need every divisor class.
  std::set<std::pair<std::vector<int>, std::vector<int>>> fano;
  std::set<TableKey, TableKeyLess> cy_classes;
  for (const auto& [key, value] : gw.entries) {
    check_key(data, key, "GW");
    if (data.c1_degree(key.curve_class) == 0) {
      const int g = vector_gcd(key.curve_class);
      for (int d = 1; d <= g; ++d) {
        if (g % d == 0) cy_classes.insert(TableKey{0, divided(key.curve_class, d), {}});
      }
    } else {
      fano.emplace(key.curve_class, key.insertions);
    }
  }
  // A class whose GW invariants cancel entirely can still carry BPS numbers
  // when one of its divisors does, so every multiple in range is extracted.
  {
    std::vector<TableKey> bases(cy_classes.begin(), cy_classes.end());
    for (const auto& b : bases) {
      for (int d = 2; d * b.class_degree() <= trunc.max_class_degree; ++d) {
        cy_classes.insert(TableKey{0, multiplied(b.curve_class, d), {}});
      }
    }
  }

  for (const auto& [cls, ins] : fano) {
    const int c1 = data.c1_degree(cls);
    std::vector<Rational> n(max_genus + 1);
    for (int g = 0; g <= max_genus; ++g) {
      Rational v = lookup(gw, TableKey{g, cls, ins});
      for (int h = 0; h < g; ++h) {
        if (n[h] != 0) v -= n[h] * sine.coefficient(1, 2 * h - 2 + c1, g - h);
      }
      n[g] = v;
      add_entry(bps, TableKey{g, cls, ins}, v);
    }
  }

  // Ascending class degree: every beta/d is finished before beta.
  for (const auto& ckey : cy_classes) {
    const auto& cls = ckey.curve_class;
    const int gcd = vector_gcd(cls);
    for (int g = 0; g <= max_genus; ++g) {
      Rational v = lookup(gw, TableKey{g, cls, {}});
      for (int d = 1; d <= gcd; ++d) {
        if (gcd % d != 0) continue;
        const auto base = divided(cls, d);
        for (int h = 0; h <= g; ++h) {
          if (d == 1 && h == g) continue;
          const Rational nb = lookup(bps, TableKey{h, base, {}});
          if (nb != 0) v -= nb * sine.coefficient(d, 2 * h - 2, g - h) / d;
        }
      }
      // Leading coefficient at (d = 1, h = g) is 1.
      add_entry(bps, TableKey{g, cls, {}}, v);
    }
  }
  return bps;
}

IntegralityReport audit_integrality(const BPSTable& bps) {
  IntegralityReport r;
  for (const auto& [key, value] : bps.entries) {
    ++r.checked;
    if (!is_integer(value)) r.failures.emplace_back(key, value);
  }
  return r;
}

std::string GenusVanishingReport::summary() const {
  if (!support_max) return "support empty";
  return "support <= " + std::to_string(*support_max);
}

GenusVanishingReport audit_genus_vanishing(const BPSTable& bps, const std::vector<int>& curve_class) {
  GenusVanishingReport r;
  r.curve_class = curve_class;
  r.examined_through = bps.coverage();
  for (const auto& [key, value] : bps.entries) {
    if (key.curve_class != curve_class || value == 0) continue;
    r.support_max = std::max(r.support_max.value_or(key.genus), key.genus);
  }
  return r;
}

}  // namespace gwlab
