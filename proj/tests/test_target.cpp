#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "gwlab/errors.hpp"
#include "gwlab/target.hpp"
#include "oracles.hpp"

using namespace gwlab;

namespace {

// Coefficients of (1+H)^{n+1} by repeated convolution.
std::vector<long> chern_classes(int n) {
  std::vector<long> c{1};
  for (int i = 0; i <= n; ++i) {
    std::vector<long> next(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j];
      next[j + 1] += c[j];
    }
    c = next;
  }
  return c;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("projective spaces carry the expected cohomological data") {
  for (int n = 1; n <= 6; ++n) {
    const auto t = projective_space(n);
    const auto c = chern_classes(n);
    CHECK(t.dim() == n);
    CHECK(t.size() == static_cast<std::size_t>(n + 1));
    CHECK(t.chern_top() == c[n]);
    CHECK(t.chern_top() == static_cast<long>(t.size()));  // Euler characteristic
    CHECK(t.chern_mixed() == c[1] * c[n - 1]);
    for (std::size_t a = 0; a < t.size(); ++a) {
      CHECK(t.hodge_shift(a) == oracle::frac(2 * static_cast<long>(a) + 1 - n, 2));
      CHECK(t.basis()[a].degree() == 2 * static_cast<int>(a));
    }
    // C^{n+1} = 0 while C^n maps the unit to (n+1)^n times the point class.
    CHECK(mat_pow(t.c1_action(), n + 1) == zero_matrix(t.size(), t.size()));
    CHECK(t.c1_power(n)[0][n] == oracle::frac(ipow(n + 1, n), 1));
    // Raising then lowering returns C^i.
    for (int i = 0; i <= n; ++i) {
      CHECK(mat_mul(t.c1_power_raised(i), t.pairing()) == mat_mul(mat_mul(t.inverse_pairing(), t.c1_power(i)), t.pairing()));
      const auto low = t.c1_power_lowered(i);
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b) CHECK(low[a][b] == low[b][a]);
    }
    CHECK(t.index_of("1") == 0);
    CHECK(t.index_of("H") == 1);
  }
  CHECK_THROWS_AS(projective_space(0), InputError);
  CHECK_THROWS_AS(projective_space(2).index_of("E"), InputError);
}

TEST_CASE("the point target") {
  const auto p = point_target();
  CHECK(p.dim() == 0);
  CHECK(p.size() == 1);
  CHECK(p.hodge_shift(0) == oracle::frac(1, 2));
  CHECK(p.chern_top() == 1);
}

TEST_CASE("invalid targets are rejected with a reason") {
  const std::vector<BasisClass> basis{{"1", 0, 0}, {"H", 1, 1}};
  const RationalMatrix good_pairing{{0, 1}, {1, 0}};
  const RationalMatrix good_c1{{0, 2}, {0, 0}};
  CHECK_NOTHROW(TargetGeometry(1, basis, good_pairing, good_c1, 2, 0));

  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message([&] { TargetGeometry(1, {{"1", 0, 0}, {"A", 1, 0}}, good_pairing, good_c1, 2, 0); })
            .find("'A'") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, {{"H", 1, 1}, {"1", 0, 0}}, good_pairing, good_c1, 2, 0); })
            .find("unit") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, basis, {{0, 1}, {2, 0}}, good_c1, 2, 0); })
            .find("symmetric") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, basis, {{1, 1}, {1, 0}}, good_c1, 2, 0); })
            .find("non-complementary") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, basis, good_pairing, {{0, 0}, {2, 0}}, 2, 0); })
            .find("c1_action") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, basis, {{0, 0}, {0, 0}}, good_c1, 2, 0); })
            .find("singular") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, basis, {{0, 1}}, good_c1, 2, 0); }).find("pairing") != std::string::npos);
  CHECK(message([&] { TargetGeometry(1, {}, {}, {}, 2, 0); }).find("empty") != std::string::npos);
  CHECK(message([&] { TargetGeometry(-1, basis, good_pairing, good_c1, 2, 0); }).find("dimension") !=
        std::string::npos);

  // A c1 action that is not self-adjoint: P^2 with C mapping 1 -> H and H -> 2 H^2.
  const std::vector<BasisClass> p2{{"1", 0, 0}, {"H", 1, 1}, {"H^2", 2, 2}};
  const RationalMatrix p2_pair{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  CHECK(message([&] { TargetGeometry(2, p2, p2_pair, {{0, 1, 0}, {0, 0, 2}, {0, 0, 0}}, 3, 9); })
            .find("self-adjoint") != std::string::npos);
}

TEST_CASE("threefold data") {
  const auto p3 = projective_threefold();
  CHECK(p3.divisor_classes() == std::vector<std::size_t>{1});
  CHECK(p3.insertion_classes() == std::vector<std::size_t>{2, 3});
  CHECK(p3.triple(1, 1, 1) == 1);
  CHECK(p3.triple(0, 1, 2) == 1);
  CHECK(p3.triple(1, 1, 2) == 0);
  CHECK(p3.c2_pairing()[1] == 6);
  CHECK(p3.c1_degree({3}) == 12);
  CHECK_THROWS_AS(p3.c1_degree({1, 1}), InputError);

  const auto base = projective_space(3);
  std::vector<RationalMatrix> triple(4, zero_matrix(4, 4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (3 - a - b >= 0) triple[a][b][3 - a - b] = 1;
  RationalVector c2(4, Rational(0));
  c2[1] = 6;
  CHECK_NOTHROW(ThreefoldData(base, triple, c2, {{"line", 4}}));

  auto asym = triple;
  asym[1][2][0] = 5;
  CHECK_THROWS_AS(ThreefoldData(base, asym, c2, {{"line", 4}}), InputError);
  auto bad_unit = triple;
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) bad_unit[a][b][c] = 1;
  CHECK_THROWS_AS(ThreefoldData(base, bad_unit, c2, {{"line", 4}}), InputError);
  auto bad_c2 = c2;
  bad_c2[2] = 1;
  CHECK_THROWS_AS(ThreefoldData(base, triple, bad_c2, {{"line", 4}}), InputError);
  CHECK_THROWS_AS(ThreefoldData(base, triple, RationalVector(3, Rational(0)), {{"line", 4}}), InputError);
  CHECK_THROWS_AS(ThreefoldData(base, triple, c2, {{"line", -1}}), InputError);
  CHECK_THROWS_AS(ThreefoldData(projective_space(2), {}, {}, {}), InputError);
}
