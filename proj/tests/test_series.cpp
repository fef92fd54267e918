#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwlab/errors.hpp"
#include "gwlab/series.hpp"

using namespace gwlab;

namespace {

// Random series of non-negative weight and no constant term, inside `trunc`.
DescendentSeries random_series(std::mt19937& rng, const Truncation& trunc, int basis, int classes, int terms,
                               int min_lambda = -2) {
  DescendentSeries s(trunc, basis, classes);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> lam(min_lambda / 2, trunc.max_genus - 1);
  std::uniform_int_distribution<int> var(0, basis - 1);
  std::uniform_int_distribution<int> idx(0, trunc.max_descendent_index);
  std::uniform_int_distribution<int> qd(0, trunc.max_class_degree);
  for (int i = 0; i < terms; ++i) {
    const int lambda = 2 * lam(rng);
    std::vector<int> q(classes, 0);
    int qsum = 0;
    for (auto& x : q) {
      x = std::min(qd(rng), trunc.max_class_degree - qsum);
      qsum += x;
    }
    const int min_t = std::max(0, -lambda - 2 * qsum);
    if (min_t > trunc.max_t_degree) continue;
    std::uniform_int_distribution<int> tdeg(min_t, trunc.max_t_degree);
    std::vector<DescVar> t;
    for (int j = tdeg(rng); j > 0; --j) t.push_back(DescVar{var(rng), idx(rng)});
    Monomial m = make_monomial(lambda, std::move(t), q);
    if (m.is_constant()) continue;
    s.add_term(m, make_rational(coef(rng), den(rng)));
  }
  s.prune();
  return s;
}

bool all_terms_nonnegative_weight(const DescendentSeries& s) {
  for (const auto& [k, v] : s.terms()) {
    if (k.weight() < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("monomial bookkeeping") {
  const Monomial m = make_monomial(-2, {DescVar{0, 1}, DescVar{0, 0}, DescVar{0, 1}}, {2});
  CHECK(m.t_degree() == 3);
  CHECK(m.class_degree() == 2);
  CHECK(m.weight() == 5);
  CHECK(m.multiplicity(DescVar{0, 1}) == 2);
  CHECK(m.automorphisms() == 2);
  CHECK(m.t.front() == DescVar{0, 0});
  CHECK_FALSE(m.is_constant());
  CHECK(make_monomial(0, {}, {0, 0}).is_constant());
}

TEST_CASE("ring axioms on random series") {
  std::mt19937 rng(11);
  const Truncation tr{2, 4, 3, 2};
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_series(rng, tr, 2, 1, 6);
    const auto b = random_series(rng, tr, 2, 1, 6);
    const auto c = random_series(rng, tr, 2, 1, 6);
    CHECK((a * b).same_terms(b * a));
    CHECK(agree_on_exact_region((a * b) * c, a * (b * c)));
    CHECK(agree_on_exact_region(a * (b + c), a * b + a * c));
    CHECK((a + b).same_terms(b + a));
    CHECK((a - a).empty());
    CHECK((a * DescendentSeries::constant(tr, 1, 2, 1)).same_terms(a));
  }
}

TEST_CASE("log inverts exp on 100 random series") {
  std::mt19937 rng(7);
  const Truncation tr{2, 4, 2, 1};
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_series(rng, tr, 2, 1, 5);
    REQUIRE(all_terms_nonnegative_weight(f));
    const auto z = series_exp(f);
    const auto back = series_log(z);
    CHECK(agree_on_exact_region(back, f));
    // Every term of f inside the exact region is recovered.
    for (const auto& [k, v] : f.terms()) {
      if (!back.is_exact(k)) continue;
      CHECK(back.coefficient(k).value == v);
    }
    CHECK(back.validity().exact_weight >= tr.max_lambda_exponent() + 1);
  }
}

TEST_CASE("exp is a homomorphism on the exact region") {
  std::mt19937 rng(3);
  const Truncation tr{2, 3, 2, 0};
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_series(rng, tr, 1, 0, 4);
    const auto b = random_series(rng, tr, 1, 0, 4);
    CHECK(agree_on_exact_region(series_exp(a + b), series_exp(a) * series_exp(b)));
  }
}

TEST_CASE("partial derivatives commute and satisfy Leibniz") {
  std::mt19937 rng(5);
  const Truncation tr{2, 4, 3, 0};
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_series(rng, tr, 2, 0, 8, 0);
    const auto b = random_series(rng, tr, 2, 0, 8, 0);
    for (int x = 0; x < 2; ++x) {
      for (int k = 0; k <= 3; ++k) {
        CHECK(differentiate(differentiate(a, x, k), 1, 2).same_terms(differentiate(differentiate(a, 1, 2), x, k)));
        CHECK(agree_on_exact_region(differentiate(a * b, x, k),
                                    differentiate(a, x, k) * b + a * differentiate(b, x, k)));
      }
    }
  }
  const DescendentSeries f = DescendentSeries(tr).add_term(make_monomial(0, {DescVar{0, 1}, DescVar{0, 1}}), 3);
  const auto df = differentiate(f, 0, 1);
  CHECK(df.coefficient(make_monomial(0, {DescVar{0, 1}})).value == 6);
  CHECK_THROWS_AS(differentiate(f, 1, 0), InputError);
}

TEST_CASE("exactness regions agree with a larger truncation") {
  std::mt19937 rng(19);
  const Truncation small{2, 3, 2, 1};
  const Truncation large{3, 5, 2, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(rng, small, 1, 1, 5);
    DescendentSeries g(large, 1, 1);
    for (const auto& [k, v] : f.terms()) g.add_term(k, v);
    const auto zs = series_exp(f);
    const auto zl = series_exp(g);
    std::size_t compared = 0;
    for (const auto& [k, v] : zl.terms()) {
      if (!zs.in_bounds(k) || !zs.is_exact(k)) continue;
      ++compared;
      CHECK(zs.coefficient(k).value == v);
    }
    for (const auto& [k, v] : zs.terms()) {
      if (!zs.is_exact(k)) continue;
      CHECK(zl.coefficient(k).value == v);
    }
    CHECK(compared > 0);
  }
}

TEST_CASE("truncation violations and malformed operands are rejected") {
  const Truncation tr{1, 2, 1, 0};
  DescendentSeries s(tr);
  CHECK_THROWS_AS(s.add_term(make_monomial(2, {}), 1), InputError);
  CHECK_THROWS_AS(s.add_term(make_monomial(0, {DescVar{0, 2}}), 1), InputError);
  CHECK_THROWS_AS(s.add_term(make_monomial(0, {DescVar{1, 0}}), 1), InputError);
  CHECK_THROWS_AS(s.coefficient(make_monomial(0, {DescVar{0, 0}, DescVar{0, 0}, DescVar{0, 0}})), InputError);
  CHECK_FALSE(s.accumulate(make_monomial(4, {}), 1));

  DescendentSeries neg(tr);
  neg.add_term(make_monomial(-2, {DescVar{0, 0}}), 1);
  CHECK_THROWS_AS(neg * neg, InputError);
  CHECK_THROWS_AS(series_exp(neg), InputError);
  CHECK_THROWS_AS(series_exp(DescendentSeries::constant(tr, 2)), InputError);
  CHECK_THROWS_AS(series_log(DescendentSeries(tr)), InputError);
  CHECK_THROWS_AS(DescendentSeries(tr) + DescendentSeries(Truncation{2, 2, 1, 0}), InputError);
  CHECK_THROWS_AS(DescendentSeries(Truncation{-1, 0, 0, 0}), InputError);
}

TEST_CASE("exp of an unstable-free genus-0 cubic") {
  // F = lambda^-2 t^3 / 6 gives Z = sum_n lambda^{-2n} t^{3n} / (6^n n!).
  const Truncation tr{1, 6, 0, 0};
  DescendentSeries f(tr);
  f.add_term(make_monomial(-2, {DescVar{0, 0}, DescVar{0, 0}, DescVar{0, 0}}), make_rational(1, 6));
  const auto z = series_exp(f);
  CHECK(z.coefficient(make_monomial(-4, std::vector<DescVar>(6, DescVar{0, 0}))).value == make_rational(1, 72));
  CHECK(z.size() == 3);
}
