#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "gwlab/errors.hpp"
#include "gwlab/gorenstein.hpp"

using namespace gwlab;

namespace {

GradedAlgebra load(const std::string& name) {
  return algebra_from_json(read_json_file(fixtures::data_path("algebras/" + name + ".json")));
}

// Brute-force rank over Q by fraction-carrying elimination on a copy.
std::size_t rank_oracle(std::vector<std::vector<oracle::Q>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const oracle::Q f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<RationalMatrix> random_change(std::mt19937& rng, const std::vector<int>& dims) {
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<RationalMatrix> change{{{1}}};
  for (std::size_t r = 1; r < dims.size(); ++r) {
    const std::size_t n = static_cast<std::size_t>(dims[r]);
    while (true) {
      RationalMatrix m(n, RationalVector(n));
      for (auto& row : m)
        for (auto& x : row) x = entry(rng);
      if (n == 0 || inverse(m)) {
        change.push_back(m);
        break;
      }
    }
  }
  return change;
}

void check_positive_symmetry(const GradedAlgebra& alg, const GorensteinVerdict& v) {
  if (!v.gorenstein) return;
  for (int r = 0; r <= v.socle; ++r) CHECK(alg.dim(r) == alg.dim(v.socle - r));
}

}  // namespace

TEST_CASE("verdicts on the bundled algebras") {
  const auto cubic = gorenstein_check(load("truncated_cubic"));
  CHECK(cubic.gorenstein);
  CHECK(cubic.socle == 3);
  for (int r = 0; r <= 3; ++r) CHECK(pairing_matrix(load("truncated_cubic"), r, 3) == RationalMatrix{{1}});

  const auto split = gorenstein_check(load("split_top"));
  CHECK_FALSE(split.gorenstein);
  CHECK(split.failed_condition == 'a');
  CHECK(split.failed_degree == 1);
  CHECK(witness_verifies(load("split_top"), split));

  const auto degen = gorenstein_check(load("degenerate_pairing"));
  CHECK_FALSE(degen.gorenstein);
  CHECK(degen.failed_condition == 'c');
  CHECK(degen.failed_degree == 1);
  CHECK(degen.pairing_rank == 1);
  CHECK(degen.witness_degree == 1);
  CHECK(degen.witness == RationalVector{1, 0});
  CHECK(witness_verifies(load("degenerate_pairing"), degen));
  CHECK(pairing_matrix(load("degenerate_pairing"), 1, 2) == RationalMatrix{{0, 0}, {0, 1}});

  const auto quadric = gorenstein_check(load("quadric"));
  CHECK(quadric.gorenstein);
  CHECK(quadric.socle == 2);
  CHECK(pairing_matrix(load("quadric"), 1, 2) == RationalMatrix{{0, 1}, {1, 0}});

  for (const auto* name : {"truncated_cubic", "split_top", "degenerate_pairing", "quadric"}) {
    const auto alg = load(name);
    CHECK(validate_algebra(alg).passed());
    check_positive_symmetry(alg, gorenstein_check(alg));
  }
}

TEST_CASE("pairing ranks agree with an independent elimination") {
  for (const auto* name : {"truncated_cubic", "degenerate_pairing", "quadric"}) {
    const auto alg = load(name);
    const int s = alg.top_nonzero_degree();
    for (int r = 0; r <= s; ++r) {
      const auto m = pairing_matrix(alg, r, s);
      std::vector<std::vector<oracle::Q>> copy(m.begin(), m.end());
      CHECK(rank(m) == rank_oracle(copy));
    }
  }
}

TEST_CASE("verdicts survive 20 random changes of basis") {
  std::mt19937 rng(77);
  for (const auto* name : {"truncated_cubic", "split_top", "degenerate_pairing", "quadric"}) {
    const auto alg = load(name);
    const auto base = gorenstein_check(alg);
    for (int trial = 0; trial < 20; ++trial) {
      const auto changed = change_basis(alg, random_change(rng, alg.dims()));
      REQUIRE(validate_algebra(changed).passed());
      const auto v = gorenstein_check(changed);
      CHECK(v.gorenstein == base.gorenstein);
      CHECK(v.socle == base.socle);
      CHECK(v.failed_condition == base.failed_condition);
      CHECK(v.failed_degree == base.failed_degree);
      if (!v.gorenstein) CHECK(witness_verifies(changed, v));
      check_positive_symmetry(changed, v);
    }
  }
  CHECK_THROWS_AS(change_basis(load("quadric"), {{{2}}, {{1, 0}, {0, 1}}, {{1}}}), InputError);
  CHECK_THROWS_AS(change_basis(load("quadric"), {{{1}}, {{1, 1}, {1, 1}}, {{1}}}), InputError);
  CHECK_THROWS_AS(change_basis(load("quadric"), {{{1}}}), InputError);
}

TEST_CASE("validation rejects a broken unit and non-associative data") {
  const auto bad_unit = validate_algebra(load("bad_unit"));
  CHECK_FALSE(bad_unit.passed());
  CHECK(bad_unit.failures.front().find("unit") != std::string::npos);
  const auto nonassoc = validate_algebra(load("nonassociative"));
  CHECK_FALSE(nonassoc.passed());
  CHECK(nonassoc.failures.front().find("associativ") != std::string::npos);

  GradedAlgebra noncomm({1, 2, 1});
  noncomm.set_product({1, 0}, {1, 1}, {1});
  noncomm.set_product({1, 1}, {1, 0}, {2});
  CHECK_FALSE(validate_algebra(noncomm).passed());

  GradedAlgebra shape({1, 2, 1});
  CHECK_THROWS_AS(shape.set_product({1, 0}, {1, 1}, {1, 2}), InputError);
  CHECK_THROWS_AS(shape.set_product({1, 2}, {1, 1}, {1}), InputError);
  CHECK_THROWS_AS(shape.set_product({2, 0}, {1, 0}, {1}), InputError);
  CHECK_THROWS_AS(GradedAlgebra({2, 1}), InputError);
}

TEST_CASE("explicit socle arguments") {
  const auto cubic = load("truncated_cubic");
  CHECK(gorenstein_check(cubic, 3).gorenstein);
  const auto low = gorenstein_check(cubic, 2);
  CHECK_FALSE(low.gorenstein);
  CHECK(low.failed_condition == 'b');
  CHECK(low.failed_degree == 3);
  CHECK(witness_verifies(cubic, low));
  CHECK_THROWS_AS(gorenstein_check(cubic, 4), InputError);
  CHECK_THROWS_AS(gorenstein_check(cubic, -1), InputError);

  // Point-like algebra: socle 0 is Gorenstein.
  GradedAlgebra point({1});
  const auto pv = gorenstein_check(point);
  CHECK(pv.gorenstein);
  CHECK(pv.socle == 0);
  // A zero top piece does not count as the socle: Q[x]/(x^2) padded by R^2 = 0.
  GradedAlgebra padded({1, 1, 0});
  CHECK(padded.top_nonzero_degree() == 1);
  CHECK(gorenstein_check(padded).gorenstein);
  CHECK(gorenstein_check(padded).socle == 1);
}

TEST_CASE("verdict rendering") {
  CHECK(gorenstein_check(load("quadric")).to_string().find("Gorenstein") != std::string::npos);
  const auto s = gorenstein_check(load("degenerate_pairing")).to_string();
  CHECK(s == "socle: 2\nverdict: not Gorenstein\nfailed condition: c (degree 1)\n"
             "reason: pairing R^1 x R^1 has rank 1 (dims 2, 2)\nwitness: degree 1 (1, 0)\n");
}
