#ifndef GWLAB_LINALG_HPP
#define GWLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "gwlab/rational.hpp"

namespace gwlab {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

RationalMatrix zero_matrix(std::size_t rows, std::size_t cols);
RationalMatrix identity_matrix(std::size_t n);
RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix mat_pow(const RationalMatrix& a, int e);
bool is_zero(const RationalMatrix& a);

/// Exact inverse by Gauss-Jordan elimination; nullopt if singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

std::size_t rank(RationalMatrix a);

/// Basis of {x : A x = 0} for an A with `cols` columns (A may have no
/// rows). Empty if the kernel is trivial.
std::vector<RationalVector> kernel(const RationalMatrix& a, std::size_t cols);

}  // namespace gwlab

#endif  // GWLAB_LINALG_HPP
