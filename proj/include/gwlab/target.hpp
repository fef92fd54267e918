#ifndef GWLAB_TARGET_HPP
#define GWLAB_TARGET_HPP

#include <string>
#include <vector>

#include "gwlab/linalg.hpp"
#include "gwlab/rational.hpp"

namespace gwlab {

struct BasisClass {
  std::string name;
  int p = 0;
  int q = 0;
  /// Real cohomological degree p + q.
  int degree() const { return p + q; }
};

/// Cohomological input of a target variety: a homogeneous basis with Hodge
/// bidegrees, the Poincare pairing g_ab, the matrix C_a^b of cup product
/// with c_1 (C_a^b gamma_b = c_1 gamma_a) and the Chern numbers
/// int c_r and int c_1 c_{r-1}.
///
/// Only (p,p) classes are accepted. Construction validates every structural
/// invariant and throws InputError naming the offending entry.
class TargetGeometry {
 public:
  TargetGeometry() = default;
  TargetGeometry(int dim, std::vector<BasisClass> basis, RationalMatrix pairing,
                 RationalMatrix c1_action, Rational chern_top, Rational chern_mixed);

  int dim() const { return dim_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<BasisClass>& basis() const { return basis_; }
  const RationalMatrix& pairing() const { return pairing_; }
  const RationalMatrix& inverse_pairing() const { return inverse_pairing_; }
  const RationalMatrix& c1_action() const { return c1_action_; }
  const Rational& chern_top() const { return chern_top_; }
  const Rational& chern_mixed() const { return chern_mixed_; }

  /// b_a = p_a + (1 - r)/2.
  Rational hodge_shift(std::size_t a) const;
  /// Index of the basis class with this name; throws InputError if absent.
  std::size_t index_of(const std::string& name) const;

  /// (C^i)_a^b.
  RationalMatrix c1_power(int i) const { return mat_pow(c1_action_, i); }
  /// (C^i)^{ab} = g^{ac} (C^i)_c^b.
  RationalMatrix c1_power_raised(int i) const;
  /// (C^i)_{ab} = (C^i)_a^c g_{cb}.
  RationalMatrix c1_power_lowered(int i) const;

 private:
  void validate() const;

  int dim_ = 0;
  std::vector<BasisClass> basis_;
  RationalMatrix pairing_;
  RationalMatrix inverse_pairing_;
  RationalMatrix c1_action_;
  Rational chern_top_;
  Rational chern_mixed_;
};

struct CurveGenerator {
  std::string name;
  int c1_degree = 0;
};

/// Threefold extension: triple intersections, c_2 pairings with divisor
/// classes and the effective curve-class generators.
class ThreefoldData {
 public:
  ThreefoldData() = default;
  /// `triple` is a full symmetric n x n x n tensor; `c2_pairing` holds
  /// int gamma_a c_2 for every basis index (zero off the divisors).
  ThreefoldData(TargetGeometry base, std::vector<RationalMatrix> triple,
                RationalVector c2_pairing, std::vector<CurveGenerator> generators);

  const TargetGeometry& base() const { return base_; }
  const Rational& triple(std::size_t a, std::size_t b, std::size_t c) const {
    return triple_[a][b][c];
  }
  const RationalVector& c2_pairing() const { return c2_pairing_; }
  const std::vector<CurveGenerator>& generators() const { return generators_; }

  /// Basis indices of degree-2 classes, and of classes of degree > 2.
  std::vector<std::size_t> divisor_classes() const;
  std::vector<std::size_t> insertion_classes() const;

  /// int_beta c_1 for a class given over the generators.
  int c1_degree(const std::vector<int>& curve_class) const;

 private:
  TargetGeometry base_;
  std::vector<RationalMatrix> triple_;
  RationalVector c2_pairing_;
  std::vector<CurveGenerator> generators_;
};

/// The one-class target (r = 0, pairing [1], C = 0, int c_0 = 1).
TargetGeometry point_target();
/// Projective space P^n with H^i as basis; Chern data from (1+H)^{n+1}.
TargetGeometry projective_space(int n);
/// P^3 with its triple intersections, int H c_2 = 6 and the line class.
ThreefoldData projective_threefold();

}  // namespace gwlab

#endif  // GWLAB_TARGET_HPP
