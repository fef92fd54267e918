#include "gwlab/gorenstein.hpp"

#include <sstream>

#include "gwlab/errors.hpp"
#include "gwlab/parallel.hpp"

namespace gwlab {

namespace {

std::string render(GradedIndex e) {
  return "e[" + std::to_string(e.degree) + "," + std::to_string(e.index) + "]";
}

std::string render(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

bool all_zero(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

RationalVector unit_vector(int n, int i) {
  RationalVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

GradedAlgebra::GradedAlgebra(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_[0] != 1) throw InputError("algebra: degree-0 piece must be one-dimensional");
  for (std::size_t r = 0; r < dims_.size(); ++r) {
    if (dims_[r] < 0) throw InputError("algebra: dims[" + std::to_string(r) + "] is negative");
  }
}

int GradedAlgebra::top_nonzero_degree() const {
  int top = 0;
  for (int r = 0; r <= top_degree(); ++r) {
    if (dims_[r] > 0) top = r;
  }
  return top;
}

int GradedAlgebra::dim(int degree) const {
  if (degree < 0 || degree > top_degree()) return 0;
  return dims_[degree];
}

void GradedAlgebra::set_product(GradedIndex a, GradedIndex b, RationalVector result) {
  for (const auto& e : {a, b}) {
    if (e.degree < 0 || e.degree > top_degree() || e.index < 0 || e.index >= dims_[e.degree]) {
      throw InputError("algebra product: no basis element " + render(e));
    }
  }
  const int target = a.degree + b.degree;
  const std::size_t expected = target > top_degree() ? 0 : static_cast<std::size_t>(dims_[target]);
  if (result.size() != expected) {
    throw InputError("algebra product " + render(a) + "*" + render(b) + ": result has " +
                     std::to_string(result.size()) + " entries, expected " + std::to_string(expected));
  }
  products_[{a, b}] = std::move(result);
}

RationalVector GradedAlgebra::product(GradedIndex a, GradedIndex b) const {
  if (auto it = products_.find({a, b}); it != products_.end()) return it->second;
  if (auto it = products_.find({b, a}); it != products_.end()) return it->second;
  const int target = a.degree + b.degree;
  if (target > top_degree()) return {};
  if (a.degree == 0) return unit_vector(dims_[target], b.index);
  if (b.degree == 0) return unit_vector(dims_[target], a.index);
  return RationalVector(dims_[target], Rational(0));
}

RationalVector GradedAlgebra::multiply(int ra, const RationalVector& x, int rb, const RationalVector& y) const {
  const int target = ra + rb;
  RationalVector out(target > top_degree() ? 0 : dims_[target], Rational(0));
  if (out.empty()) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      const RationalVector p = product({ra, static_cast<int>(i)}, {rb, static_cast<int>(j)});
      const Rational c = x[i] * y[j];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * p[k];
    }
  }
  return out;
}

AlgebraReport validate_algebra(const GradedAlgebra& alg) {
  AlgebraReport report;
  const int top = alg.top_degree();
  const GradedIndex unit{0, 0};
  for (int r = 0; r <= top; ++r) {
    for (int i = 0; i < alg.dim(r); ++i) {
      const GradedIndex e{r, i};
      const RationalVector expected = unit_vector(alg.dim(r), i);
      for (const auto& [a, b] : {std::pair{unit, e}, std::pair{e, unit}}) {
        if (auto it = alg.listed_products().find({a, b}); it != alg.listed_products().end() && it->second != expected) {
          report.failures.push_back("unit law fails: " + render(a) + "*" + render(b) + " = " + render(it->second) +
                                    ", expected " + render(expected));
        }
      }
    }
  }
  for (const auto& [key, v] : alg.listed_products()) {
    const auto& [a, b] = key;
    if (!(a < b)) continue;
    if (auto it = alg.listed_products().find({b, a}); it != alg.listed_products().end() && it->second != v) {
      report.failures.push_back("not commutative: " + render(a) + "*" + render(b) + " = " + render(v) + " but " +
                                render(b) + "*" + render(a) + " = " + render(it->second));
    }
  }
  for (int ra = 1; ra <= top; ++ra) {
    for (int rb = 1; ra + rb <= top; ++rb) {
      for (int rc = 1; ra + rb + rc <= top; ++rc) {
        for (int i = 0; i < alg.dim(ra); ++i) {
          for (int j = 0; j < alg.dim(rb); ++j) {
            for (int k = 0; k < alg.dim(rc); ++k) {
              const RationalVector x = unit_vector(alg.dim(ra), i);
              const RationalVector y = unit_vector(alg.dim(rb), j);
              const RationalVector z = unit_vector(alg.dim(rc), k);
              const RationalVector left = alg.multiply(ra + rb, alg.multiply(ra, x, rb, y), rc, z);
              const RationalVector right = alg.multiply(ra, x, rb + rc, alg.multiply(rb, y, rc, z));
              if (left != right) {
                report.failures.push_back("not associative on (" + render(GradedIndex{ra, i}) + ", " +
                                          render(GradedIndex{rb, j}) + ", " + render(GradedIndex{rc, k}) +
                                          "): " + render(left) + " != " + render(right));
              }
            }
          }
        }
      }
    }
  }
  return report;
}

RationalMatrix pairing_matrix(const GradedAlgebra& alg, int r, int s) {
  const int rows = alg.dim(r);
  const int cols = alg.dim(s - r);
  RationalMatrix m = zero_matrix(rows, cols);
  if (alg.dim(s) == 0) return m;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = alg.product({r, i}, {s - r, j})[0];
  }
  return m;
}

std::string GorensteinVerdict::to_string() const {
  std::ostringstream os;
  os << "socle: " << socle << "\n";
  os << "verdict: " << (gorenstein ? "Gorenstein" : "not Gorenstein") << "\n";
  if (!gorenstein) {
    os << "failed condition: " << failed_condition << " (degree " << failed_degree << ")\n";
    os << "reason: " << reason << "\n";
    os << "witness: degree " << witness_degree << " " << render(witness) << "\n";
  }
  return os.str();
}

GorensteinVerdict gorenstein_check(const GradedAlgebra& alg, std::optional<int> socle) {
  const int top = alg.top_nonzero_degree();
  const int s = socle.value_or(top);
  if (s < 0) throw InputError("gorenstein_check: socle must be non-negative");
  if (s > top) {
    throw InputError("gorenstein_check: socle " + std::to_string(s) + " exceeds the top nonzero degree " +
                     std::to_string(top));
  }
  GorensteinVerdict v;
  v.socle = s;

  if (alg.dim(s) != 1) {
    v.failed_condition = 'a';
    v.failed_degree = s;
    v.reason = "dim R^" + std::to_string(s) + " = " + std::to_string(alg.dim(s)) + " != 1";
    if (alg.dim(s) == 0) {
      // The unit pairs to zero with the zero piece.
      v.witness = {Rational(1)};
      v.witness_degree = 0;
    } else {
      v.witness = unit_vector(alg.dim(s), 1);
      v.witness_degree = s;
    }
    return v;
  }
  for (int r = s + 1; r <= alg.top_degree(); ++r) {
    if (alg.dim(r) > 0) {
      v.failed_condition = 'b';
      v.failed_degree = r;
      v.reason = "R^" + std::to_string(r) + " is nonzero above the socle degree";
      v.witness = unit_vector(alg.dim(r), 0);
      v.witness_degree = r;
      return v;
    }
  }

  std::vector<RationalMatrix> pairings(s + 1);
  std::vector<std::size_t> ranks(s + 1);
  parallel_for(static_cast<std::size_t>(s + 1), [&](std::size_t r) {
    pairings[r] = pairing_matrix(alg, static_cast<int>(r), s);
    ranks[r] = rank(pairings[r]);
  });
  for (int r = 0; r <= s; ++r) {
    const std::size_t rows = alg.dim(r);
    const std::size_t cols = alg.dim(s - r);
    if (ranks[r] == rows && ranks[r] == cols) continue;
    v.failed_condition = 'c';
    v.failed_degree = r;
    v.pairing_rank = ranks[r];
    v.reason = "pairing R^" + std::to_string(r) + " x R^" + std::to_string(s - r) + " has rank " +
               std::to_string(ranks[r]) + " (dims " + std::to_string(rows) + ", " + std::to_string(cols) + ")";
    if (ranks[r] < rows) {
      v.witness = kernel(transpose(pairings[r]), rows).front();
      v.witness_degree = r;
    } else {
      v.witness = kernel(pairings[r], cols).front();
      v.witness_degree = s - r;
    }
    return v;
  }
  v.gorenstein = true;
  return v;
}

bool witness_verifies(const GradedAlgebra& alg, const GorensteinVerdict& verdict) {
  if (verdict.gorenstein) return false;
  const int r = verdict.witness_degree;
  if (r < 0 || static_cast<int>(verdict.witness.size()) != alg.dim(r) || all_zero(verdict.witness)) return false;
  const int s = verdict.socle;
  const int complement = s - r;
  for (int j = 0; j < alg.dim(complement); ++j) {
    const RationalVector p = alg.multiply(r, verdict.witness, complement, unit_vector(alg.dim(complement), j));
    if (!p.empty() && p[0] != 0) return false;
  }
  return true;
}

GradedAlgebra change_basis(const GradedAlgebra& alg, const std::vector<RationalMatrix>& change) {
  const int top = alg.top_degree();
  if (static_cast<int>(change.size()) != top + 1) throw InputError("change_basis: one block per degree required");
  if (change[0] != RationalMatrix{{Rational(1)}}) throw InputError("change_basis: degree-0 block must fix the unit");
  std::vector<RationalMatrix> inverses(top + 1);
  for (int r = 0; r <= top; ++r) {
    if (change[r].size() != static_cast<std::size_t>(alg.dim(r))) throw InputError("change_basis: block size mismatch");
    if (alg.dim(r) == 0) continue;
    auto inv = inverse(change[r]);
    if (!inv) throw InputError("change_basis: block " + std::to_string(r) + " is singular");
    inverses[r] = *inv;
  }
  auto column = [](const RationalMatrix& m, int i) {
    RationalVector c;
    for (const auto& row : m) c.push_back(row[i]);
    return c;
  };
  GradedAlgebra out(alg.dims());
  for (int ra = 0; ra <= top; ++ra) {
    for (int rb = 0; rb <= top; ++rb) {
      for (int i = 0; i < alg.dim(ra); ++i) {
        for (int j = 0; j < alg.dim(rb); ++j) {
          const RationalVector p = alg.multiply(ra, column(change[ra], i), rb, column(change[rb], j));
          RationalVector q(p.size(), Rational(0));
          for (std::size_t k = 0; k < p.size(); ++k) {
            for (std::size_t l = 0; l < p.size(); ++l) q[k] += inverses[ra + rb][k][l] * p[l];
          }
          out.set_product({ra, i}, {rb, j}, std::move(q));
        }
      }
    }
  }
  return out;
}

}  // namespace gwlab
