#include "gwlab/exact_core.hpp"

#include <mutex>
#include <string>

#include "gwlab/errors.hpp"

namespace gwlab {

Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

namespace {

std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_cache{Rational(1)};

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw InputError("bernoulli: negative index " + std::to_string(n));
  std::lock_guard lock(bernoulli_mutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  for (int m = static_cast<int>(bernoulli_cache.size()); m <= n; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * bernoulli_cache[j];
    Rational b = -acc / Rational(m + 1);
    bernoulli_cache.push_back(b);
  }
  return bernoulli_cache[n];
}

Rational elem_symmetric(int k, std::span<const Rational> values) {
  if (k < 0) return 0;
  if (k > static_cast<int>(values.size())) return 0;
  std::vector<Rational> e(k + 1, Rational(0));
  e[0] = 1;
  for (const auto& v : values) {
    for (int j = k; j >= 1; --j) e[j] += e[j - 1] * v;
  }
  return e[k];
}

Rational bracket_factor(const Rational& x, int k, int i) {
  if (k < -1 || i < 0 || i > k + 1) {
    throw InputError("bracket_factor: need k >= -1 and 0 <= i <= k+1 (k=" + std::to_string(k) +
                     ", i=" + std::to_string(i) + ")");
  }
  std::vector<Rational> progression;
  progression.reserve(k + 1);
  for (int j = 0; j <= k; ++j) progression.push_back(x + j);
  return elem_symmetric(k + 1 - i, progression);
}

std::vector<Rational> bracket_factor_polynomial(int k, int i) {
  if (k < -1 || i < 0 || i > k + 1) {
    throw InputError("bracket_factor_polynomial: need k >= -1 and 0 <= i <= k+1");
  }
  // e_j of the linear forms (x + c), c = 0..k, as polynomials in x.
  const int top = k + 1 - i;
  std::vector<std::vector<Rational>> e(top + 1);
  e[0] = {Rational(1)};
  for (int c = 0; c <= k; ++c) {
    for (int j = top; j >= 1; --j) {
      const auto& prev = e[j - 1];
      auto& cur = e[j];
      if (prev.empty()) continue;
      if (cur.size() < prev.size() + 1) cur.resize(prev.size() + 1, Rational(0));
      for (std::size_t d = 0; d < prev.size(); ++d) {
        cur[d] += prev[d] * c;
        cur[d + 1] += prev[d];
      }
    }
  }
  auto out = e[top];
  if (out.empty()) out.push_back(Rational(0));
  return out;
}

Rational hodge_lambda_cubed(int g) {
  if (g < 2) throw InputError("hodge_lambda_cubed: genus must be >= 2, got " + std::to_string(g));
  Rational b_top = abs(bernoulli(2 * g));
  Rational b_low = abs(bernoulli(2 * g - 2));
  return b_top / (2 * g) * b_low / (2 * g - 2) / Rational(factorial(2 * g - 2));
}

EvenLambdaSeries::EvenLambdaSeries(int order) : order_(order) {
  if (order < 0 || order % 2 != 0) {
    throw InputError("EvenLambdaSeries: order must be even and >= 0, got " + std::to_string(order));
  }
  coeffs_.assign(order / 2 + 1, Rational(0));
}

EvenLambdaSeries::EvenLambdaSeries(int order, std::vector<Rational> coefficients)
    : EvenLambdaSeries(order) {
  for (std::size_t j = 0; j < coefficients.size() && j < coeffs_.size(); ++j) {
    coeffs_[j] = coefficients[j];
  }
}

const Rational& EvenLambdaSeries::coefficient(int j) const { return coeffs_.at(j); }

Rational EvenLambdaSeries::at_lambda_power(int exponent) const {
  if (exponent < 0 || exponent % 2 != 0 || exponent > order_) return 0;
  return coeffs_[exponent / 2];
}

EvenLambdaSeries EvenLambdaSeries::operator*(const EvenLambdaSeries& other) const {
  if (order_ != other.order_) throw InputError("EvenLambdaSeries: mismatched orders");
  EvenLambdaSeries out(order_);
  const std::size_t n = coeffs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return out;
}

EvenLambdaSeries EvenLambdaSeries::reciprocal() const {
  if (coeffs_[0] == 0) throw InputError("EvenLambdaSeries: reciprocal of a non-unit series");
  EvenLambdaSeries out(order_);
  const std::size_t n = coeffs_.size();
  out.coeffs_[0] = 1 / coeffs_[0];
  for (std::size_t j = 1; j < n; ++j) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= j; ++i) acc += coeffs_[i] * out.coeffs_[j - i];
    out.coeffs_[j] = -acc / coeffs_[0];
  }
  return out;
}

EvenLambdaSeries EvenLambdaSeries::pow(int e) const {
  EvenLambdaSeries base = e < 0 ? reciprocal() : *this;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  EvenLambdaSeries result(order_);
  result.coeffs_[0] = 1;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

EvenLambdaSeries sin_ratio_power(int d, int e, int order) {
  if (d <= 0) throw InputError("sin_ratio_power: d must be positive");
  // sin(d x)/x with x = lambda/2: d * sum_j (-1)^j (d lambda / 2)^{2j} / (2j+1)!
  EvenLambdaSeries base(order);
  std::vector<Rational> coeffs(order / 2 + 1);
  Rational d_sq_quarter = make_rational(static_cast<long>(d) * d, 4);
  Rational power = d;
  for (int j = 0; j <= order / 2; ++j) {
    Rational term = power / Rational(factorial(2 * j + 1));
    coeffs[j] = (j % 2 == 0) ? term : Rational(-term);
    power *= d_sq_quarter;
  }
  return EvenLambdaSeries(order, std::move(coeffs)).pow(e);
}

}  // namespace gwlab
