#include "gwlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gwlab/errors.hpp"

namespace gwlab {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw InputError(field + ": expected an integer");
  return j.get<int>();
}

const Json& array_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array");
  return j;
}

std::vector<int> int_list(const Json& j, const std::string& field) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array_from_json(j, field).size(); ++i) {
    out.push_back(int_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

RationalMatrix matrix_from_json(const Json& j, const std::string& field) {
  RationalMatrix m;
  for (std::size_t i = 0; i < array_from_json(j, field).size(); ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    RationalVector row;
    for (std::size_t k = 0; k < array_from_json(j[i], row_field).size(); ++k) {
      row.push_back(rational_from_json(j[i][k], row_field + "[" + std::to_string(k) + "]"));
    }
    m.push_back(std::move(row));
  }
  return m;
}

Json matrix_to_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rational_to_json(x));
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t basis_ref(const Json& j, const TargetGeometry& g, const std::string& field) {
  if (j.is_string()) {
    try {
      return g.index_of(j.get<std::string>());
    } catch (const InputError&) {
      throw InputError(field + ": unknown basis class '" + j.get<std::string>() + "'");
    }
  }
  const int i = int_from_json(j, field);
  if (i < 0 || static_cast<std::size_t>(i) >= g.size()) throw InputError(field + ": basis index out of range");
  return static_cast<std::size_t>(i);
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError(field + ": expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(field + ": " + e.what());
  }
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

TargetFile target_from_json(const Json& j) {
  const std::string where = "target";
  const int dim = int_from_json(require(j, "dim", where), "target.dim");
  std::vector<BasisClass> basis;
  const Json& jb = array_from_json(require(j, "basis", where), "target.basis");
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string f = "target.basis[" + std::to_string(i) + "]";
    const Json& name = require(jb[i], "name", f);
    if (!name.is_string()) throw InputError(f + ".name: expected a string");
    basis.push_back(BasisClass{name.get<std::string>(), int_from_json(require(jb[i], "p", f), f + ".p"),
                               int_from_json(require(jb[i], "q", f), f + ".q")});
  }
  const Json& chern = require(j, "chern", where);
  TargetGeometry geometry(dim, std::move(basis), matrix_from_json(require(j, "pairing", where), "target.pairing"),
                          matrix_from_json(require(j, "c1_action", where), "target.c1_action"),
                          rational_from_json(require(chern, "top", "target.chern"), "target.chern.top"),
                          rational_from_json(require(chern, "mixed", "target.chern"), "target.chern.mixed"));
  TargetFile out{geometry, std::nullopt};
  if (!j.contains("threefold")) return out;

  const Json& jt = j.at("threefold");
  const std::size_t n = geometry.size();
  std::vector<RationalMatrix> triple(n, zero_matrix(n, n));
  std::vector<std::vector<std::vector<bool>>> seen(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
  auto set_triple = [&](std::size_t a, std::size_t b, std::size_t c, const Rational& v, const std::string& f) {
    std::array<std::size_t, 3> idx{a, b, c};
    std::sort(idx.begin(), idx.end());
    do {
      auto& slot = triple[idx[0]][idx[1]][idx[2]];
      if (seen[idx[0]][idx[1]][idx[2]] && slot != v) throw InputError(f + ": conflicting triple intersection");
      slot = v;
      seen[idx[0]][idx[1]][idx[2]] = true;
    } while (std::next_permutation(idx.begin(), idx.end()));
  };
  const Json& entries = array_from_json(require(jt, "triple", "target.threefold"), "target.threefold.triple");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string f = "target.threefold.triple[" + std::to_string(i) + "]";
    if (!entries[i].is_array() || entries[i].size() != 4) throw InputError(f + ": expected [a, b, c, value]");
    set_triple(basis_ref(entries[i][0], geometry, f), basis_ref(entries[i][1], geometry, f),
               basis_ref(entries[i][2], geometry, f), rational_from_json(entries[i][3], f + "[3]"), f);
  }
  // Products with the unit are the pairing; fill any the file leaves out.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!seen[0][a][b]) set_triple(0, a, b, geometry.pairing()[a][b], "target.threefold.triple");
    }
  }
  const std::vector<std::size_t> divisors = [&] {
    std::vector<std::size_t> d;
    for (std::size_t a = 0; a < n; ++a) {
      if (geometry.basis()[a].degree() == 2) d.push_back(a);
    }
    return d;
  }();
  const Json& jc2 = array_from_json(require(jt, "c2_pairing", "target.threefold"), "target.threefold.c2_pairing");
  if (jc2.size() != divisors.size()) {
    throw InputError("target.threefold.c2_pairing: expected one value per divisor class (" +
                     std::to_string(divisors.size()) + ")");
  }
  RationalVector c2(n, Rational(0));
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    c2[divisors[i]] = rational_from_json(jc2[i], "target.threefold.c2_pairing[" + std::to_string(i) + "]");
  }
  std::vector<CurveGenerator> generators;
  const Json& jg =
      array_from_json(require(jt, "curve_generators", "target.threefold"), "target.threefold.curve_generators");
  for (std::size_t i = 0; i < jg.size(); ++i) {
    const std::string f = "target.threefold.curve_generators[" + std::to_string(i) + "]";
    const Json& name = require(jg[i], "name", f);
    if (!name.is_string()) throw InputError(f + ".name: expected a string");
    generators.push_back(CurveGenerator{name.get<std::string>(),
                                        int_from_json(require(jg[i], "c1_degree", f), f + ".c1_degree")});
  }
  out.threefold = ThreefoldData(geometry, std::move(triple), std::move(c2), std::move(generators));
  return out;
}

Json target_to_json(const TargetGeometry& geometry, const ThreefoldData* threefold) {
  Json j;
  j["dim"] = geometry.dim();
  Json basis = Json::array();
  for (const auto& b : geometry.basis()) basis.push_back({{"name", b.name}, {"p", b.p}, {"q", b.q}});
  j["basis"] = std::move(basis);
  j["pairing"] = matrix_to_json(geometry.pairing());
  j["c1_action"] = matrix_to_json(geometry.c1_action());
  j["chern"] = {{"top", rational_to_json(geometry.chern_top())}, {"mixed", rational_to_json(geometry.chern_mixed())}};
  if (threefold != nullptr) {
    const std::size_t n = geometry.size();
    Json triple = Json::array();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        for (std::size_t c = b; c < n; ++c) {
          if (threefold->triple(a, b, c) == 0) continue;
          triple.push_back({geometry.basis()[a].name, geometry.basis()[b].name, geometry.basis()[c].name,
                            rational_to_json(threefold->triple(a, b, c))});
        }
      }
    }
    Json c2 = Json::array();
    for (std::size_t a : threefold->divisor_classes()) c2.push_back(rational_to_json(threefold->c2_pairing()[a]));
    Json gens = Json::array();
    for (const auto& g : threefold->generators()) gens.push_back({{"name", g.name}, {"c1_degree", g.c1_degree}});
    j["threefold"] = {{"triple", std::move(triple)}, {"c2_pairing", std::move(c2)}, {"curve_generators", std::move(gens)}};
  }
  return j;
}

TargetFile load_target(const std::string& path) {
  try {
    return target_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

InvariantTable invariant_table_from_json(const Json& j, const ThreefoldData& data) {
  const std::string where = "table";
  const Json& jg = array_from_json(require(j, "generators", where), "table.generators");
  if (jg.size() != data.generators().size()) throw InputError("table.generators: count differs from the target's");
  for (std::size_t i = 0; i < jg.size(); ++i) {
    if (!jg[i].is_string() || jg[i].get<std::string>() != data.generators()[i].name) {
      throw InputError("table.generators[" + std::to_string(i) + "]: does not match target generator '" +
                       data.generators()[i].name + "'");
    }
  }
  InvariantTable table;
  const Json& entries = array_from_json(require(j, "entries", where), "table.entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string f = "table.entries[" + std::to_string(i) + "]";
    TableKey key;
    key.genus = int_from_json(require(entries[i], "genus", f), f + ".genus");
    if (key.genus < 0) throw InputError(f + ".genus: must be non-negative");
    key.curve_class = int_list(require(entries[i], "class", f), f + ".class");
    if (key.curve_class.size() != jg.size()) throw InputError(f + ".class: wrong number of generators");
    const Json& ins = array_from_json(require(entries[i], "insertions", f), f + ".insertions");
    for (std::size_t k = 0; k < ins.size(); ++k) {
      key.insertions.push_back(
          static_cast<int>(basis_ref(ins[k], data.base(), f + ".insertions[" + std::to_string(k) + "]")));
    }
    std::sort(key.insertions.begin(), key.insertions.end());
    const Rational v = rational_from_json(require(entries[i], "value", f), f + ".value");
    if (!table.entries.emplace(key, v).second) throw InputError(f + ": duplicate key " + format_key(key, &data));
  }
  if (j.contains("max_genus")) table.complete_through_genus = int_from_json(j.at("max_genus"), "table.max_genus");
  return table;
}

Json invariant_table_to_json(const InvariantTable& table, const ThreefoldData& data) {
  Json j;
  Json gens = Json::array();
  for (const auto& g : data.generators()) gens.push_back(g.name);
  j["generators"] = std::move(gens);
  Json entries = Json::array();
  for (const auto& [key, v] : table.entries) {
    Json ins = Json::array();
    for (int a : key.insertions) ins.push_back(data.base().basis()[a].name);
    entries.push_back({{"genus", key.genus}, {"class", key.curve_class}, {"insertions", std::move(ins)},
                       {"value", rational_to_json(v)}});
  }
  j["entries"] = std::move(entries);
  if (table.complete_through_genus) j["max_genus"] = *table.complete_through_genus;
  return j;
}

IntersectionTable intersection_table_from_json(const Json& j) {
  const std::string where = "intersection table";
  IntersectionTable t;
  t.max_genus = int_from_json(require(j, "max_genus", where), "max_genus");
  t.max_points = int_from_json(require(j, "max_n", where), "max_n");
  const Json& entries = array_from_json(require(j, "entries", where), "entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string f = "entries[" + std::to_string(i) + "]";
    PointKey key{int_from_json(require(entries[i], "genus", f), f + ".genus"),
                 int_list(require(entries[i], "ks", f), f + ".ks")};
    std::sort(key.ks.begin(), key.ks.end());
    if (!point_key_admissible(key)) throw InputError(f + ": key is not dimension-admissible");
    if (!t.covers(key)) throw InputError(f + ": key lies outside max_genus/max_n");
    t.entries[key] = rational_from_json(require(entries[i], "value", f), f + ".value");
  }
  return t;
}

Json intersection_table_to_json(const IntersectionTable& table) {
  Json entries = Json::array();
  for (const auto& [key, v] : table.entries) {
    entries.push_back({{"genus", key.genus}, {"ks", key.ks}, {"value", rational_to_json(v)}});
  }
  return {{"max_genus", table.max_genus}, {"max_n", table.max_points}, {"entries", std::move(entries)}};
}

GradedAlgebra algebra_from_json(const Json& j) {
  GradedAlgebra alg(int_list(require(j, "dims", "algebra"), "dims"));
  const Json& products = array_from_json(require(j, "products", "algebra"), "products");
  for (std::size_t i = 0; i < products.size(); ++i) {
    const std::string f = "products[" + std::to_string(i) + "]";
    const Json& p = products[i];
    GradedIndex a{int_from_json(require(p, "deg_a", f), f + ".deg_a"), int_from_json(require(p, "idx_a", f), f + ".idx_a")};
    GradedIndex b{int_from_json(require(p, "deg_b", f), f + ".deg_b"), int_from_json(require(p, "idx_b", f), f + ".idx_b")};
    RationalVector result;
    const Json& jr = array_from_json(require(p, "result", f), f + ".result");
    for (std::size_t k = 0; k < jr.size(); ++k) {
      result.push_back(rational_from_json(jr[k], f + ".result[" + std::to_string(k) + "]"));
    }
    try {
      alg.set_product(a, b, std::move(result));
    } catch (const InputError& e) {
      throw InputError(f + ": " + e.what());
    }
  }
  return alg;
}

Json algebra_to_json(const GradedAlgebra& alg) {
  Json products = Json::array();
  for (const auto& [key, v] : alg.listed_products()) {
    Json r = Json::array();
    for (const auto& x : v) r.push_back(rational_to_json(x));
    products.push_back({{"deg_a", key.first.degree}, {"idx_a", key.first.index}, {"deg_b", key.second.degree},
                        {"idx_b", key.second.index}, {"result", std::move(r)}});
  }
  return {{"dims", alg.dims()}, {"products", std::move(products)}};
}

Json series_to_json(const DescendentSeries& s) {
  auto bound = [](int b) -> Json {
    if (b == Validity::kUnbounded) return "inf";
    return b;
  };
  const Truncation& t = s.truncation();
  Json j;
  j["truncation"] = {{"max_genus", t.max_genus},
                     {"max_t_degree", t.max_t_degree},
                     {"max_descendent_index", t.max_descendent_index},
                     {"max_class_degree", t.max_class_degree}};
  j["validity"] = {{"exact_weight", bound(s.validity().exact_weight)},
                   {"exact_t_degree", bound(s.validity().exact_t_degree)},
                   {"index_closed", s.validity().index_closed}};
  j["basis_size"] = s.basis_size();
  j["class_rank"] = s.class_rank();
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json t_vars = Json::array();
    for (const auto& v : m.t) t_vars.push_back({v.basis, v.index});
    terms.push_back({{"lambda", m.lambda}, {"q", m.q}, {"t", std::move(t_vars)}, {"coefficient", rational_to_json(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

DescendentSeries series_from_json(const Json& j) {
  auto bound = [](const Json& b, const std::string& field) {
    if (b.is_string() && b.get<std::string>() == "inf") return Validity::kUnbounded;
    return int_from_json(b, field);
  };
  const Json& jt = require(j, "truncation", "series");
  Truncation t;
  t.max_genus = int_from_json(require(jt, "max_genus", "series.truncation"), "series.truncation.max_genus");
  t.max_t_degree = int_from_json(require(jt, "max_t_degree", "series.truncation"), "series.truncation.max_t_degree");
  t.max_descendent_index =
      int_from_json(require(jt, "max_descendent_index", "series.truncation"), "series.truncation.max_descendent_index");
  t.max_class_degree =
      int_from_json(require(jt, "max_class_degree", "series.truncation"), "series.truncation.max_class_degree");
  t.validate();
  DescendentSeries s(t, int_from_json(require(j, "basis_size", "series"), "series.basis_size"),
                     int_from_json(require(j, "class_rank", "series"), "series.class_rank"));
  const Json& terms = array_from_json(require(j, "terms", "series"), "series.terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string f = "series.terms[" + std::to_string(i) + "]";
    std::vector<DescVar> vars;
    const Json& jv = array_from_json(require(terms[i], "t", f), f + ".t");
    for (std::size_t k = 0; k < jv.size(); ++k) {
      const std::vector<int> pair = int_list(jv[k], f + ".t[" + std::to_string(k) + "]");
      if (pair.size() != 2) throw InputError(f + ".t[" + std::to_string(k) + "]: expected [basis, index]");
      vars.push_back(DescVar{pair[0], pair[1]});
    }
    Monomial m = make_monomial(int_from_json(require(terms[i], "lambda", f), f + ".lambda"), std::move(vars),
                               int_list(require(terms[i], "q", f), f + ".q"));
    try {
      s.add_term(std::move(m), rational_from_json(require(terms[i], "coefficient", f), f + ".coefficient"));
    } catch (const InputError& e) {
      throw InputError(f + ": " + e.what());
    }
  }
  s.prune();
  const Json& jv = require(j, "validity", "series");
  Validity v;
  v.exact_weight = bound(require(jv, "exact_weight", "series.validity"), "series.validity.exact_weight");
  v.exact_t_degree = bound(require(jv, "exact_t_degree", "series.validity"), "series.validity.exact_t_degree");
  const Json& closed = require(jv, "index_closed", "series.validity");
  if (!closed.is_boolean()) throw InputError("series.validity.index_closed: expected a boolean");
  v.index_closed = closed.get<bool>();
  s.set_validity(v);
  return s;
}

}  // namespace gwlab
