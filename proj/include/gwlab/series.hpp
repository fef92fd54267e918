#ifndef GWLAB_SERIES_HPP
#define GWLAB_SERIES_HPP

#include <compare>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "gwlab/rational.hpp"

namespace gwlab {

/// Truncation bounds for a DescendentSeries.
///
/// Storage keeps monomials with lambda-exponent <= 2*max_genus - 2, total
/// t-degree <= max_t_degree, every descendent index <= max_descendent_index
/// and total q-degree <= max_class_degree.
struct Truncation {
  int max_genus = 0;
  int max_t_degree = 0;
  int max_descendent_index = 0;
  int max_class_degree = 0;

  int max_lambda_exponent() const { return 2 * max_genus - 2; }
  void validate() const;
  bool operator==(const Truncation&) const = default;
};

/// t^a_k is keyed by (basis index a, descendent index k).
struct DescVar {
  int basis = 0;
  int index = 0;
  auto operator<=>(const DescVar&) const = default;
};

/// lambda^lambda * q^q * prod t; `t` is a sorted multiset.
struct Monomial {
  int lambda = 0;
  std::vector<int> q;
  std::vector<DescVar> t;

  int t_degree() const { return static_cast<int>(t.size()); }
  int class_degree() const;
  /// lambda + t_degree + 2*class_degree. Every stable contribution to a
  /// free energy has weight >= 0 and weights add under multiplication, which
  /// is what makes truncation-exactness trackable.
  int weight() const { return lambda + t_degree() + 2 * class_degree(); }
  bool is_constant() const;
  /// Number of occurrences of v in t.
  int multiplicity(DescVar v) const;
  /// prod of multiplicity factorials of t.
  Integer automorphisms() const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

Monomial multiply(const Monomial& a, const Monomial& b);

/// Region in which the stored coefficients are exact.
struct Validity {
  static constexpr int kUnbounded = std::numeric_limits<int>::max();
  /// Coefficients of monomials with weight <= exact_weight are exact.
  int exact_weight = kUnbounded;
  /// Coefficients of monomials with t-degree <= exact_t_degree are exact.
  int exact_t_degree = kUnbounded;
  /// True when no monomial with an index beyond the truncation's
  /// max_descendent_index has a nonzero true coefficient inside the exact
  /// region. Operators that shift indices upward need this.
  bool index_closed = true;

  bool operator==(const Validity&) const = default;
};

struct CoefficientQuery {
  Rational value;
  bool exact = true;
};

/// Truncated formal series over Rational in t^a_k, lambda and q^beta.
class DescendentSeries {
 public:
  using TermMap = std::map<Monomial, Rational>;

  DescendentSeries() = default;
  DescendentSeries(Truncation trunc, int basis_size = 1, int class_rank = 0);

  static DescendentSeries constant(Truncation trunc, const Rational& c, int basis_size = 1,
                                   int class_rank = 0);

  const Truncation& truncation() const { return trunc_; }
  int basis_size() const { return basis_size_; }
  int class_rank() const { return class_rank_; }
  const TermMap& terms() const { return terms_; }
  const Validity& validity() const { return validity_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// True iff `key` lies inside the storage bounds.
  bool in_bounds(const Monomial& key) const;
  bool is_exact(const Monomial& key) const;
  /// Throws InputError if `key` lies outside the truncation.
  CoefficientQuery coefficient(const Monomial& key) const;

  /// Adds c to the coefficient of `key`; throws InputError if the key is
  /// outside the bounds or malformed.
  DescendentSeries& add_term(Monomial key, const Rational& c);
  /// Adds c if `key` is inside the bounds; returns false (and drops) if not.
  bool accumulate(const Monomial& key, const Rational& c);
  void set_validity(const Validity& v) { validity_ = v; }
  /// Removes zero coefficients left over from accumulate().
  void prune();

  DescendentSeries& operator*=(const Rational& s);

  bool same_terms(const DescendentSeries& other) const { return terms_ == other.terms_; }

 private:
  void check_key_shape(const Monomial& key) const;

  Truncation trunc_{};
  int basis_size_ = 1;
  int class_rank_ = 0;
  TermMap terms_;
  Validity validity_{};
};

Monomial make_monomial(int lambda, std::vector<DescVar> t, std::vector<int> q = {});

DescendentSeries series_add(const DescendentSeries& a, const DescendentSeries& b);
DescendentSeries series_sub(const DescendentSeries& a, const DescendentSeries& b);
DescendentSeries series_mul(const DescendentSeries& a, const DescendentSeries& b);
DescendentSeries series_exp(const DescendentSeries& f);
DescendentSeries series_log(const DescendentSeries& z);
DescendentSeries differentiate(const DescendentSeries& f, int basis, int index);

inline DescendentSeries operator+(const DescendentSeries& a, const DescendentSeries& b) {
  return series_add(a, b);
}
inline DescendentSeries operator-(const DescendentSeries& a, const DescendentSeries& b) {
  return series_sub(a, b);
}
inline DescendentSeries operator*(const DescendentSeries& a, const DescendentSeries& b) {
  return series_mul(a, b);
}

/// Coefficients of a and b agree on every monomial exact in both.
bool agree_on_exact_region(const DescendentSeries& a, const DescendentSeries& b);

}  // namespace gwlab

#endif  // GWLAB_SERIES_HPP
