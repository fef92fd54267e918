#include "gwlab/target.hpp"

#include "gwlab/errors.hpp"
#include "gwlab/exact_core.hpp"

namespace gwlab {

namespace {

std::string entry(const char* what, std::size_t a, std::size_t b) {
  return std::string(what) + "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
}

void require_square(const RationalMatrix& m, std::size_t n, const char* what) {
  if (m.size() != n) throw InputError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  for (const auto& row : m) {
    if (row.size() != n) throw InputError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

TargetGeometry::TargetGeometry(int dim, std::vector<BasisClass> basis, RationalMatrix pairing,
                               RationalMatrix c1_action, Rational chern_top, Rational chern_mixed)
    : dim_(dim),
      basis_(std::move(basis)),
      pairing_(std::move(pairing)),
      c1_action_(std::move(c1_action)),
      chern_top_(std::move(chern_top)),
      chern_mixed_(std::move(chern_mixed)) {
  validate();
  auto inv = inverse(pairing_);
  if (!inv) throw InputError("pairing matrix is singular");
  inverse_pairing_ = std::move(*inv);
}

void TargetGeometry::validate() const {
  if (dim_ < 0) throw InputError("target dimension must be non-negative");
  const std::size_t n = basis_.size();
  if (n == 0) throw InputError("target basis is empty");
  for (std::size_t a = 0; a < n; ++a) {
    const auto& c = basis_[a];
    if (c.p != c.q) {
      throw InputError("basis class '" + c.name + "' has bidegree (" + std::to_string(c.p) + "," +
                       std::to_string(c.q) + "); only (p,p) classes are supported");
    }
    if (c.p < 0 || c.p > dim_) throw InputError("basis class '" + c.name + "' has p outside [0, dim]");
  }
  if (basis_[0].p != 0) throw InputError("unit class must be at basis index 0 (p = q = 0)");
  require_square(pairing_, n, "pairing");
  require_square(c1_action_, n, "c1_action");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (pairing_[a][b] != pairing_[b][a]) throw InputError(entry("pairing is not symmetric at pairing", a, b));
      if (pairing_[a][b] != 0 && basis_[a].p + basis_[b].p != dim_) {
        throw InputError(entry("pairing pairs non-complementary bidegrees at pairing", a, b));
      }
      if (c1_action_[a][b] != 0 && basis_[b].p != basis_[a].p + 1) {
        throw InputError(entry("c1_action must raise bidegree by (1,1); violated at c1_action", a, b));
      }
    }
  }
  const auto lowered = mat_mul(c1_action_, pairing_);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (lowered[a][b] != lowered[b][a]) {
        throw InputError(entry("c1_action is not self-adjoint for the pairing at C", a, b));
      }
    }
  }
}

Rational TargetGeometry::hodge_shift(std::size_t a) const {
  return Rational(basis_.at(a).p) + make_rational(1 - dim_, 2);
}

std::size_t TargetGeometry::index_of(const std::string& name) const {
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    if (basis_[a].name == name) return a;
  }
  throw InputError("unknown basis class '" + name + "'");
}

RationalMatrix TargetGeometry::c1_power_raised(int i) const {
  return mat_mul(inverse_pairing_, c1_power(i));
}

RationalMatrix TargetGeometry::c1_power_lowered(int i) const {
  return mat_mul(c1_power(i), pairing_);
}

ThreefoldData::ThreefoldData(TargetGeometry base, std::vector<RationalMatrix> triple,
                             RationalVector c2_pairing, std::vector<CurveGenerator> generators)
    : base_(std::move(base)),
      triple_(std::move(triple)),
      c2_pairing_(std::move(c2_pairing)),
      generators_(std::move(generators)) {
  if (base_.dim() != 3) throw InputError("threefold data requires dim = 3");
  const std::size_t n = base_.size();
  if (triple_.size() != n) throw InputError("triple intersection tensor has wrong size");
  for (const auto& m : triple_) require_square(m, n, "triple intersection slice");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto& v = triple_[a][b][c];
        if (v != triple_[b][a][c] || v != triple_[a][c][b]) {
          throw InputError("triple intersection not symmetric at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
      if (triple_[0][a][b] != base_.pairing()[a][b]) {
        throw InputError("triple(0," + std::to_string(a) + "," + std::to_string(b) +
                         ") disagrees with the pairing");
      }
    }
  }
  if (c2_pairing_.size() != n) throw InputError("c2_pairing has wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (c2_pairing_[a] != 0 && base_.basis()[a].degree() != 2) {
      throw InputError("c2_pairing is nonzero on non-divisor class '" + base_.basis()[a].name + "'");
    }
  }
  for (const auto& g : generators_) {
    if (g.c1_degree < 0) {
      throw InputError("curve generator '" + g.name + "' has negative c1 degree");
    }
  }
}

std::vector<std::size_t> ThreefoldData::divisor_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < base_.size(); ++a) {
    if (base_.basis()[a].degree() == 2) out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> ThreefoldData::insertion_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < base_.size(); ++a) {
    if (base_.basis()[a].degree() > 2) out.push_back(a);
  }
  return out;
}

int ThreefoldData::c1_degree(const std::vector<int>& curve_class) const {
  if (curve_class.size() != generators_.size()) {
    throw InputError("curve class has " + std::to_string(curve_class.size()) + " entries, expected " +
                     std::to_string(generators_.size()));
  }
  int total = 0;
  for (std::size_t i = 0; i < curve_class.size(); ++i) total += curve_class[i] * generators_[i].c1_degree;
  return total;
}

TargetGeometry point_target() {
  return TargetGeometry(0, {BasisClass{"1", 0, 0}}, {{Rational(1)}}, {{Rational(0)}}, Rational(1),
                        Rational(0));
}

TargetGeometry projective_space(int n) {
  if (n < 1) throw InputError("projective_space: n must be >= 1");
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  std::vector<BasisClass> basis;
  for (int i = 0; i <= n; ++i) {
    basis.push_back(BasisClass{i == 0 ? "1" : (i == 1 ? "H" : "H^" + std::to_string(i)), i, i});
  }
  auto pairing = zero_matrix(size, size);
  auto c1 = zero_matrix(size, size);
  for (int i = 0; i <= n; ++i) {
    pairing[i][n - i] = 1;
    if (i < n) c1[i][i + 1] = n + 1;
  }
  // c(P^n) = (1+H)^{n+1}: int c_n = n+1, int c_1 c_{n-1} = (n+1) C(n+1, n-1).
  Rational top(n + 1);
  Rational mixed = Rational(n + 1) * Rational(binomial(n + 1, n - 1));
  return TargetGeometry(n, std::move(basis), std::move(pairing), std::move(c1), top, mixed);
}

ThreefoldData projective_threefold() {
  TargetGeometry base = projective_space(3);
  std::vector<RationalMatrix> triple(4, zero_matrix(4, 4));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int c = 3 - a - b;
      if (c >= 0) triple[a][b][c] = 1;
    }
  }
  RationalVector c2(4, Rational(0));
  c2[1] = 6;
  return ThreefoldData(std::move(base), std::move(triple), std::move(c2), {CurveGenerator{"line", 4}});
}

}  // namespace gwlab
