#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "gwlab/errors.hpp"
#include "gwlab/point_solver.hpp"
#include "oracles.hpp"

using namespace gwlab;

namespace {

const IntersectionTable& table38() {
  static const IntersectionTable t = solve_point(3, 8);
  return t;
}

// All sorted index multisets of length n summing to `total`.
std::vector<std::vector<int>> multisets(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int, int)> rec = [&](int left, int from, int slots) {
    if (slots == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int k = from; k * slots <= left; ++k) {
      cur.push_back(k);
      rec(left - k, k, slots - 1);
      cur.pop_back();
    }
  };
  rec(total, 0, n);
  return out;
}

}  // namespace

TEST_CASE("key ordering and admissibility") {
  CHECK(point_key_admissible({0, {0, 0, 0}}));
  CHECK(point_key_admissible({1, {1}}));
  CHECK_FALSE(point_key_admissible({0, {0, 0}}));
  CHECK_FALSE(point_key_admissible({1, {}}));
  CHECK_FALSE(point_key_admissible({1, {2}}));
  PointKeyLess less;
  CHECK(less({0, {0, 0, 1, 1}}, {1, {1}}));
  CHECK(less({1, {1}}, {1, {0, 2}}));
  CHECK(less({1, {0, 2}}, {1, {1, 1}}));
}

TEST_CASE("small table renders deterministically") {
  CHECK(solve_point(1, 3).render() ==
        "<tau_0 tau_0 tau_0>_0 = 1\n"
        "<tau_1>_1 = 1/24\n"
        "<tau_0 tau_2>_1 = 1/24\n"
        "<tau_1 tau_1>_1 = 1/24\n"
        "<tau_0 tau_0 tau_3>_1 = 1/24\n"
        "<tau_0 tau_1 tau_2>_1 = 1/12\n"
        "<tau_1 tau_1 tau_1>_1 = 1/12\n");
}

TEST_CASE("genus zero matches the multinomial formula") {
  const auto& t = table38();
  for (int n = 3; n <= 8; ++n) {
    for (const auto& ks : multisets(n, n - 3)) {
      CHECK(t.value(0, ks) == oracle::genus0(ks));
      CHECK(genus0_closed(ks) == oracle::genus0(ks));
    }
  }
  CHECK(genus0_closed({0, 0}) == 0);
  CHECK(genus0_closed({0, 0, 1}) == 0);
}

TEST_CASE("every entry through genus 3 and eight points matches the DVV recursion") {
  const auto& t = table38();
  oracle::DVV dvv;
  std::size_t admissible = 0;
  for (int g = 0; g <= 3; ++g) {
    for (int n = 1; n <= 8; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      for (const auto& ks : multisets(n, 3 * g - 3 + n)) {
        ++admissible;
        CHECK(t.value(g, ks) == dvv(g, ks));
      }
    }
  }
  CHECK(t.entries.size() == admissible);
  CHECK(t.value(1, {1}) == oracle::frac(1, 24));
  CHECK(t.value(2, {4}) == oracle::frac(1, 1152));
  CHECK(t.value(2, {2, 3}) == oracle::frac(29, 5760));
  CHECK(t.value(3, {7}) == oracle::frac(1, 82944));
}

TEST_CASE("value bounds") {
  const auto& t = table38();
  CHECK(t.value(2, {1, 1}) == 0);  // dimension mismatch
  CHECK(t.value(0, {0, 0}) == 0);  // unstable
  CHECK_THROWS_AS(t.value(4, {10}), TruncationError);
  CHECK_THROWS_AS(t.value(0, {0, 0, 0, 0, 0, 0, 0, 0, 6}), TruncationError);
  CHECK(t.value(0, std::vector<int>(9, 0)) == 0);  // inadmissible before out of bounds
  CHECK_THROWS_AS(solve_point(-1, 3), InputError);
  CHECK_THROWS_AS(solve_point(1, 0), InputError);
}

TEST_CASE("the solved table satisfies every constraint in range") {
  const auto& t = table38();
  const auto eq = check_all_equations(t);
  CHECK(eq.passed());
  CHECK(eq.checked > 1000);
  const auto sd = check_string_dilaton(t);
  CHECK(sd.passed());
  CHECK(sd.checked > 100);
}

TEST_CASE("a perturbed table is detected") {
  auto t = solve_point(2, 5);
  t.entries[PointKey{2, {1, 1, 4}}] += 1;
  const auto eq = check_all_equations(t);
  CHECK_FALSE(eq.passed());
  CHECK_FALSE(check_string_dilaton(t).passed());
  bool named = false;
  for (const auto& f : eq.failures) named = named || f.find("tau_") != std::string::npos;
  CHECK(named);
}

TEST_CASE("evaluate_constraint exposes the linear form") {
  const auto& t = table38();
  // L_0 at genus 1 with S empty: -(3/2)<tau_1>_1 + 1/16 = 0 gives <tau_1>_1 = 1/24.
  const auto lf = evaluate_constraint(build_virasoro(0, point_target()), 1, {}, [&](const PointKey& k) {
    if (k == PointKey{1, {1}}) return CorrelatorValue{0, true};
    return CorrelatorValue{t.value(k), false};
  });
  CHECK(lf.coefficient == make_rational(-3, 2));
  CHECK(lf.constant == make_rational(1, 16));
  CHECK_THROWS_AS(evaluate_constraint(build_virasoro(0, point_target()), 1, {2, 1},
                                      [&](const PointKey& k) { return CorrelatorValue{t.value(k), false}; }),
                  InputError);
  CHECK_THROWS_AS(evaluate_constraint(build_virasoro(0, projective_space(1)), 1, {},
                                      [&](const PointKey& k) { return CorrelatorValue{t.value(k), false}; }),
                  InputError);
}

TEST_CASE("the partition function satisfies L_k Z = 0 through genus 2") {
  const auto& t = table38();
  const Truncation tr{3, 4, 10, 0};
  const auto z = point_partition(t, tr);
  const auto rep = residual(point_target(), z, -1, 3);
  CHECK(rep.passed());
  for (const auto& v : rep.regions) {
    CHECK(v.exact_weight >= 4);
    CHECK(v.exact_t_degree >= 2);
  }
  // The residual is a real check: Z = 1 violates L_-1.
  CHECK_FALSE(residual(point_target(), DescendentSeries::constant(tr, 1), -1, 3).passed());

  auto bad = t;
  bad.entries[PointKey{1, {1}}] = make_rational(1, 23);
  const auto rep_bad = residual(point_target(), point_partition(bad, tr), 0, 0);
  CHECK_FALSE(rep_bad.passed());
  bool found = false;
  for (const auto& e : rep_bad.violations) {
    if (e.key == make_monomial(0, {})) {
      found = true;
      CHECK(e.value == make_rational(-3, 2) * make_rational(1, 23) + make_rational(1, 16));
    }
  }
  CHECK(found);
}

TEST_CASE("free energy and partition preconditions") {
  const auto& t = table38();
  const auto f = point_free_energy(t, Truncation{3, 4, 10, 0});
  CHECK(f.coefficient(make_monomial(-2, {{0, 0}, {0, 0}, {0, 0}})).value == oracle::frac(1, 6));
  CHECK(f.coefficient(make_monomial(2, {{0, 2}, {0, 3}})).value == oracle::frac(29, 5760));
  CHECK(f.coefficient(make_monomial(2, {{0, 1}, {0, 1}, {0, 3}})).value == t.value(2, {1, 1, 3}) / 2);
  CHECK_THROWS_AS(point_partition(t, Truncation{3, 4, 9, 0}), TruncationError);
  CHECK_THROWS_AS(point_partition(t, Truncation{4, 4, 13, 0}), TruncationError);
  CHECK_THROWS_AS(point_partition(IntersectionTable{}, Truncation{1, 1, 1, 0}), InputError);
}
