#ifndef GWLAB_EXACT_CORE_HPP
#define GWLAB_EXACT_CORE_HPP

#include <span>
#include <vector>

#include "gwlab/rational.hpp"

namespace gwlab {

/// Bernoulli number B_n with B_1 = -1/2. Memoized; safe to call from
/// several threads.
Rational bernoulli(int n);

/// Elementary symmetric polynomial e_k of the given values. e_0 = 1 and
/// e_k = 0 for k > values.size().
Rational elem_symmetric(int k, std::span<const Rational> values);

/// [x]^k_i = e_{k+1-i}(x, x+1, ..., x+k). For k = -1 the progression is
/// empty and only i = 0 is admissible (value 1). Throws InputError unless
/// k >= -1 and 0 <= i <= k+1.
Rational bracket_factor(const Rational& x, int k, int i);

/// Coefficients of [x]^k_i as a polynomial in x, lowest degree first.
std::vector<Rational> bracket_factor_polynomial(int k, int i);

/// Integral of lambda_{g-1}^3 over the moduli space of genus-g curves:
/// |B_2g|/(2g) * |B_{2g-2}|/(2g-2) / (2g-2)!. Requires g >= 2.
Rational hodge_lambda_cubed(int g);

Integer factorial(int n);
Integer binomial(int n, int k);

/// A power series in lambda^2, truncated at lambda^order (order even).
/// coefficient(j) is the coefficient of lambda^{2j}.
class EvenLambdaSeries {
 public:
  EvenLambdaSeries() = default;
  explicit EvenLambdaSeries(int order);
  EvenLambdaSeries(int order, std::vector<Rational> coefficients);

  int order() const { return order_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rational& coefficient(int j) const;
  /// Coefficient of lambda^exponent; zero for odd or out-of-range exponents.
  Rational at_lambda_power(int exponent) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  EvenLambdaSeries operator*(const EvenLambdaSeries& other) const;
  /// Multiplicative inverse; requires a nonzero constant term.
  EvenLambdaSeries reciprocal() const;
  EvenLambdaSeries pow(int e) const;

  bool operator==(const EvenLambdaSeries& other) const = default;

 private:
  int order_ = 0;
  std::vector<Rational> coeffs_{Rational(0)};
};

/// (sin(d*lambda/2) / (lambda/2))^e through lambda^order.
EvenLambdaSeries sin_ratio_power(int d, int e, int order);

}  // namespace gwlab

#endif  // GWLAB_EXACT_CORE_HPP
