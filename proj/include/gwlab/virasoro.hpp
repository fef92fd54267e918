#ifndef GWLAB_VIRASORO_HPP
#define GWLAB_VIRASORO_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "gwlab/polynomial.hpp"
#include "gwlab/series.hpp"
#include "gwlab/target.hpp"

namespace gwlab {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// A single normal-ordered operator monomial lambda^e t...t d...d with
/// fixed indices. `ts` and `ds` are sorted multisets.
struct OpMonomial {
  int lambda = 0;
  std::vector<DescVar> ts;
  std::vector<DescVar> ds;

  int order() const { return static_cast<int>(ts.size() + ds.size()); }
  auto operator<=>(const OpMonomial&) const = default;
  bool operator==(const OpMonomial&) const = default;
};

/// Key of an infinite t-d family
///   lambda^e * sum_{m >= max(0, -shift)} sum_{a,b} P_ab(m) t^a_m d_{b, m+shift}.
struct FamilyKey {
  int lambda = 0;
  int shift = 0;
  auto operator<=>(const FamilyKey&) const = default;
};

/// Normal-ordered differential operator in the variables t^a_k.
///
/// Terms are either t-d families whose coefficients are matrices of
/// polynomials in the family index m, or finitely many fixed-index
/// monomials of order <= 2 (dd, tt, t-d corrections, linear, scalar). A
/// family with a nonzero polynomial has infinitely many nonzero terms, so
/// the representation is canonical and is_zero() is exact.
class DiffOperator {
 public:
  using Families = std::map<FamilyKey, PolyMatrix>;
  using Finite = std::map<OpMonomial, Rational>;

  DiffOperator() = default;
  explicit DiffOperator(int basis_size) : basis_size_(basis_size) {}

  int basis_size() const { return basis_size_; }
  const Families& families() const { return families_; }
  const Finite& finite() const { return finite_; }

  void add_family(FamilyKey key, const PolyMatrix& coefficients);
  void add_term(OpMonomial term, const Rational& c);

  bool is_zero() const { return families_.empty() && finite_.empty(); }
  /// Coefficient of the lambda^0 constant term.
  Rational scalar() const;

  DiffOperator& operator+=(const DiffOperator& other);
  DiffOperator& operator-=(const DiffOperator& other);
  DiffOperator& operator*=(const Rational& s);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(DiffOperator a, const Rational& s) { return a *= s; }

  /// Deterministic multi-line rendering, one term per line.
  std::string to_string() const;

 private:
  int basis_size_ = 1;
  Families families_;
  Finite finite_;
};

/// Single-variable helpers, mostly for tests.
DiffOperator op_t(int basis_size, int a, int k, const Rational& c = 1, int lambda = 0);
DiffOperator op_d(int basis_size, int a, int k, const Rational& c = 1, int lambda = 0);
DiffOperator op_scalar(int basis_size, const Rational& c, int lambda = 0);
/// Product of two fixed-index monomials, normal ordered.
DiffOperator op_product(const DiffOperator& a, const DiffOperator& b);

/// The operator L_k for the target (k >= -1), with hbar = lambda^2.
DiffOperator build_virasoro(int k, const TargetGeometry& target);

/// Exact symbolic commutator [A, B], normal ordered.
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

struct BracketDefect {
  int k = 0;
  int l = 0;
  /// [L_k, L_l] - (k - l) L_{k+l}
  DiffOperator defect;
};

struct BracketReport {
  int k_max = 0;
  int pairs_checked = 0;
  std::vector<BracketDefect> defects;
  bool passed() const { return defects.empty(); }
  std::string to_string() const;
};

/// Verifies [L_k, L_l] = (k - l) L_{k+l} for -1 <= k < l <= k_max.
BracketReport check_bracket(const TargetGeometry& target, int k_max);

/// Exact action of `op` on a series. Families are summed over every index
/// present in the series; the result's validity is narrowed by the largest
/// weight and t-degree drop among the operator's terms.
DescendentSeries apply(const DiffOperator& op, const DescendentSeries& z);

struct ResidualEntry {
  int k = 0;
  Monomial key;
  Rational value;
};

struct ResidualReport {
  std::vector<int> ks;
  /// Exact region of L_k(z) for each k (same order as ks).
  std::vector<Validity> regions;
  std::vector<ResidualEntry> violations;
  bool passed() const { return violations.empty(); }
  std::string to_string() const;
};

/// For each k in [k_min, k_max], lists exact-region monomials where
/// L_k(z) has a nonzero coefficient.
ResidualReport residual(const TargetGeometry& target, const DescendentSeries& z, int k_min,
                        int k_max);

std::string format_monomial(const Monomial& m);

}  // namespace gwlab

#endif  // GWLAB_VIRASORO_HPP
