#ifndef GWLAB_POLYNOMIAL_HPP
#define GWLAB_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "gwlab/rational.hpp"

namespace gwlab {

/// Univariate polynomial with Rational coefficients, stored lowest degree
/// first with no trailing zeros. Used for operator coefficients that depend
/// on the descendent index m.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: implicit by intent
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial monomial(int degree, const Rational& coefficient = 1);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;
  /// p(m) -> p(m + shift)
  Polynomial shifted(const Rational& shift) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

  /// e.g. "1/2 + m" or "3/4 - m + m^2"; "0" for the zero polynomial.
  std::string to_string(const std::string& var = "m") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace gwlab

#endif  // GWLAB_POLYNOMIAL_HPP
