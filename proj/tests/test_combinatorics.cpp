#include <doctest.h>

#include "oracles.hpp"
#include "sqaoa/combinatorics.hpp"
#include "sqaoa/model.hpp"
#include "sqaoa/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

using namespace sqaoa;

TEST_SUITE_BEGIN("combinatorics");

TEST_CASE("johnson enumeration on small registers") {
  const JohnsonBasis j31 = enumerate_johnson(3, 1);
  CHECK(j31.masks == std::vector<uint32_t>{0b001, 0b010, 0b100});
  const JohnsonBasis j32 = enumerate_johnson(3, 2);
  CHECK(j32.masks == std::vector<uint32_t>{0b011, 0b101, 0b110});
  CHECK(enumerate_johnson(4, 2).size() == 6);
  CHECK(enumerate_johnson(4, 0).masks == std::vector<uint32_t>{0});
  CHECK_THROWS_AS(enumerate_johnson(3, 4), std::domain_error);
  CHECK_THROWS_AS(enumerate_johnson(3, -1), std::domain_error);
}

TEST_CASE("johnson sizes match Pascal recursion up to m=8") {
  for (int m = 0; m <= 8; ++m) {
    for (int k = 0; k <= m; ++k) {
      const JohnsonBasis jb = enumerate_johnson(m, k);
      CHECK(jb.size() == oracles::pascal_binomial(m, k));
      CHECK(binomial(m, k) == oracles::pascal_binomial(m, k));
      CHECK(std::is_sorted(jb.masks.begin(), jb.masks.end()));
      CHECK(std::adjacent_find(jb.masks.begin(), jb.masks.end()) == jb.masks.end());
      for (uint32_t mask : jb.masks) CHECK(std::popcount(mask) == k);
      for (size_t r = 0; r < jb.size(); ++r) CHECK(jb.rank_mask(jb.masks[r]) == r);
    }
  }
}

TEST_CASE("product basis rank/unrank round trip") {
  const ProblemInstance inst = make_instance(3, 3, {{0, 1}}, {2, 1, 2});
  const ProductBasis basis = product_basis(inst);
  CHECK(basis.size() == 27);
  for (uint64_t r = 0; r < basis.size(); ++r) {
    const AllocationBits x = basis.unrank(r);
    CHECK(node_deviation(inst, x) == 0);
    CHECK(basis.rank(x) == r);
    CHECK(basis.contains(x));
  }
  CHECK_THROWS_AS(basis.rank(AllocationBits::parse("111|100|110")),
                  std::invalid_argument);
  CHECK_FALSE(basis.contains(AllocationBits::parse("111|100|110")));
  CHECK_THROWS_AS(basis.unrank(27), std::out_of_range);
}

TEST_CASE("product basis round trip on random instances") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int m = 1 + static_cast<int>(rng.below(4));
    std::vector<int> k(n);
    for (int i = 0; i < n; ++i) k[i] = static_cast<int>(rng.below(m + 1));
    const ProblemInstance inst = make_instance(n, m, {}, k);
    const ProductBasis basis = product_basis(inst);
    for (int probe = 0; probe < 50; ++probe) {
      const uint64_t r = rng.below(basis.size());
      CHECK(basis.rank(basis.unrank(r)) == r);
    }
  }
}

TEST_CASE("product basis colex-first unrank") {
  const ProblemInstance inst = make_instance(1, 3, {}, {1});
  const ProductBasis basis = product_basis(inst);
  CHECK(basis.unrank(0).word == 0b001); // channel 0 assigned
  CHECK(basis.unrank(2).word == 0b100);
}

TEST_CASE("canonical demand profile gives 6561 product states") {
  const ProblemInstance inst = make_instance(
      8, 3, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}},
      {2, 1, 2, 1, 1, 2, 1, 1});
  CHECK(product_basis(inst).size() == 6561);
}

TEST_CASE("dual basis tiny cases") {
  const ProblemInstance perm =
      make_instance(2, 2, {}, {1, 1}, std::vector<int>{1, 1});
  const DualBasis db = enumerate_dual_basis(perm);
  REQUIRE(db.size() == 2);
  std::set<std::string> got;
  for (size_t r = 0; r < db.size(); ++r) got.insert(db.at(r).to_string_grouped(2));
  CHECK(got == std::set<std::string>{"10|01", "01|10"});

  const ProblemInstance forced =
      make_instance(2, 2, {}, {1, 1}, std::vector<int>{2, 0});
  const DualBasis dbf = enumerate_dual_basis(forced);
  REQUIRE(dbf.size() == 1);
  CHECK(dbf.at(0).to_string_grouped(2) == "10|10");

  const ProblemInstance no_caps = make_instance(2, 2, {}, {1, 1});
  CHECK_THROWS_AS(enumerate_dual_basis(no_caps), std::logic_error);
}

TEST_CASE("dual basis equals the filtered product basis") {
  // canonical dual instance: ring + chords is irrelevant for membership
  const ProblemInstance inst = make_instance(
      8, 3, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}},
      {2, 1, 2, 1, 1, 2, 1, 1}, std::vector<int>{4, 4, 3});
  const DualBasis db = enumerate_dual_basis(inst);
  const ProductBasis pb = product_basis(inst);
  std::vector<uint64_t> filtered;
  for (uint64_t r = 0; r < pb.size(); ++r) {
    const AllocationBits x = pb.unrank(r);
    if (channel_feasible(inst, x)) filtered.push_back(x.word);
  }
  std::sort(filtered.begin(), filtered.end());
  CHECK(filtered == db.words);
  for (size_t r = 0; r < db.size(); ++r) {
    CHECK(node_deviation(inst, db.at(r)) == 0);
    CHECK(channel_feasible(inst, db.at(r)));
    CHECK(db.rank(db.at(r)) == r);
  }
}

TEST_CASE("greedy dual fill") {
  const ProblemInstance perm =
      make_instance(2, 2, {}, {1, 1}, std::vector<int>{1, 1});
  CHECK(greedy_dual_fill(perm).to_string_grouped(2) == "10|01");

  // canonical dual instance: row sums k, column sums L
  const ProblemInstance canon = make_instance(
      8, 3, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}},
      {2, 1, 2, 1, 1, 2, 1, 1}, std::vector<int>{4, 4, 3});
  const AllocationBits x0 = greedy_dual_fill(canon);
  CHECK(node_deviation(canon, x0) == 0);
  CHECK(channel_loads(canon, x0) == std::vector<int>{4, 4, 3});
  CHECK(enumerate_dual_basis(canon).find_word(x0.word).has_value());

  const ProblemInstance zeros =
      make_instance(2, 2, {}, {0, 0}, std::vector<int>{0, 0});
  CHECK(greedy_dual_fill(zeros).word == 0);

  // starved traversal: node 2 needs both channels but greedy exhausts c0
  const ProblemInstance starve =
      make_instance(3, 2, {}, {1, 1, 2}, std::vector<int>{2, 2});
  const AllocationBits fb = greedy_dual_fill(starve);
  CHECK(node_deviation(starve, fb) == 0);
  CHECK(channel_feasible(starve, fb));
  CHECK(fb == enumerate_dual_basis(starve).at(0));
}

TEST_CASE("dicke amplitudes") {
  const DickeVector d31 = dicke(3, 1);
  CHECK(d31.amplitude == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(d31.support_size == 3);

  const DickeVector d32 = dicke(3, 2);
  const std::vector<double> dense32 = d32.dense();
  for (uint32_t mask : {0b011u, 0b101u, 0b110u})
    CHECK(dense32[mask] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(dense32[0b001] == 0.0);

  // W state on two qubits
  const std::vector<double> w = dicke(2, 1).dense();
  CHECK(w[0b01] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(w[0b10] == doctest::Approx(1.0 / std::sqrt(2.0)));

  CHECK_THROWS_AS(dicke(3, 0), std::domain_error);
  CHECK_THROWS_AS(dicke(3, 4), std::domain_error);
}

TEST_CASE("dicke norm is 1 within 1e-12 across shapes") {
  for (int m = 1; m <= 8; ++m) {
    for (int k = 1; k <= m; ++k) {
      const std::vector<double> v = dicke(m, k).dense();
      double norm = 0.0;
      for (double a : v) norm += a * a;
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_SUITE_END();
