#ifndef GWLAB_GORENSTEIN_HPP
#define GWLAB_GORENSTEIN_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gwlab/linalg.hpp"

namespace gwlab {

/// Basis element e^r_i of the degree-r piece.
struct GradedIndex {
  int degree = 0;
  int index = 0;
  auto operator<=>(const GradedIndex&) const = default;
};

/// Finite commutative graded algebra over Q given by structure constants.
///
/// Degree 0 must be one-dimensional, spanned by the unit e^0_0. A product
/// may be listed in either order; products with the unit that are not
/// listed default to the identity, and other unlisted products are zero.
class GradedAlgebra {
 public:
  using ProductKey = std::pair<GradedIndex, GradedIndex>;

  GradedAlgebra() = default;
  explicit GradedAlgebra(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  /// Highest degree with a nonzero piece.
  int top_nonzero_degree() const;
  int dim(int degree) const;

  /// Sets e_a * e_b; `result` lives in degree a.degree + b.degree and must be
  /// empty when that exceeds the top degree. Throws InputError on shape
  /// mismatch.
  void set_product(GradedIndex a, GradedIndex b, RationalVector result);
  const std::map<ProductKey, RationalVector>& listed_products() const { return products_; }

  /// e_a * e_b in degree a.degree + b.degree (empty above the top degree).
  RationalVector product(GradedIndex a, GradedIndex b) const;
  /// Bilinear extension to vectors in degrees ra and rb.
  RationalVector multiply(int ra, const RationalVector& x, int rb, const RationalVector& y) const;

 private:
  std::vector<int> dims_;
  std::map<ProductKey, RationalVector> products_;
};

struct AlgebraReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Unit law, commutativity of products listed in both orders, and
/// associativity on all basis triples.
AlgebraReport validate_algebra(const GradedAlgebra& alg);

struct GorensteinVerdict {
  bool gorenstein = false;
  int socle = 0;
  /// 'a': dim R^s != 1, 'b': R^r != 0 above s, 'c': degenerate pairing;
  /// 0 on a positive verdict.
  char failed_condition = 0;
  /// Degree r of the failing pairing (condition c) or piece (a, b).
  int failed_degree = -1;
  std::size_t pairing_rank = 0;
  /// Nonzero vector in degree witness_degree whose product with every basis
  /// element of degree socle - witness_degree has zero image under the
  /// evaluation R^s -> Q (first coordinate).
  RationalVector witness;
  int witness_degree = -1;
  std::string reason;

  std::string to_string() const;
};

/// Gorenstein test with socle s (default: top nonzero degree). Throws
/// InputError if the socle is negative or exceeds the top degree.
GorensteinVerdict gorenstein_check(const GradedAlgebra& alg, std::optional<int> socle = std::nullopt);

/// Pairing matrix M_ij = phi(e^r_i e^{s-r}_j), phi = first coordinate of R^s.
RationalMatrix pairing_matrix(const GradedAlgebra& alg, int r, int s);

/// Recomputes the witness products directly from the structure constants.
bool witness_verifies(const GradedAlgebra& alg, const GorensteinVerdict& verdict);

/// Algebra in the basis f^r_i = sum_k change[r][k][i] e^r_k. change[0] must
/// be [[1]] and every block invertible. All products are listed explicitly.
GradedAlgebra change_basis(const GradedAlgebra& alg, const std::vector<RationalMatrix>& change);

}  // namespace gwlab

#endif  // GWLAB_GORENSTEIN_HPP
