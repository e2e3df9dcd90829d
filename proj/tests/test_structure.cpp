#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sigcore/structure.hpp"
#include "test_util.hpp"

using namespace sigcore;
using namespace sigcore_test;

TEST_CASE("series and parallel boundaries") {
  const auto s3 = StructureFunction::series(3);
  CHECK(s3(0b111) == 1);
  CHECK(s3(0b011) == 0);
  CHECK(s3(0) == 0);
  const auto p2 = StructureFunction::parallel(2);
  CHECK(p2(0b01) == 1);
  CHECK(p2(0b10) == 1);
  CHECK(p2(0) == 0);
}

TEST_CASE("arity-checked evaluation") {
  const auto s3 = StructureFunction::series(3);
  const auto sub = SubsetMask::from_indices(3, {1, 2, 3});
  CHECK(evaluate(s3, sub) == 1);
  const auto wrong = SubsetMask::from_indices(4, {1, 2, 3});
  CHECK_THROWS_WITH_AS(evaluate(s3, wrong), doctest::Contains("arity mismatch"), error);
}

TEST_CASE("from_path_sets truth tables") {
  const auto par = StructureFunction::from_path_sets(
      PathSetSystem::create(2, {0b01, 0b10}));
  CHECK(par.table() == std::vector<std::uint8_t>{0, 1, 1, 1});
  const auto ser = StructureFunction::from_path_sets(PathSetSystem::create(2, {0b11}));
  CHECK(ser.table() == std::vector<std::uint8_t>{0, 0, 0, 1});
}

TEST_CASE("bridge evaluations match direct path containment") {
  const auto b = bridge();
  const auto paths = bridge_paths();
  CHECK(b(0b10101) == 1);  // {1,3,5} contains the path {1,3,5}
  CHECK(b(0b00011) == 0);  // {1,2}
  CHECK(b(0b01001) == 1);  // {1,4}
  CHECK(b(0b11100) == 0);  // {3,4,5}
  for (mask_t m = 0; m < table_size(5); ++m) {
    bool contains = false;
    for (mask_t p : paths.paths)
      if ((m & p) == p) contains = true;
    CHECK(b(m) == (contains ? 1 : 0));
  }
}

TEST_CASE("path set validation") {
  CHECK_THROWS_AS(PathSetSystem::create(3, {}), error);
  CHECK_THROWS_AS(PathSetSystem::create(3, {0b001, 0}), error);
  // {1} inside {1,2}: not an antichain
  CHECK_THROWS_AS(PathSetSystem::create(3, {0b001, 0b011}), error);
  CHECK_THROWS_AS(PathSetSystem::create(2, {0b100}), error);  // component 3 with n=2
}

TEST_CASE("is_semicoherent diagnostics") {
  CHECK(is_semicoherent(StructureFunction::series(4)).ok);
  const auto zeros = StructureFunction::from_table(2, {0, 0, 0, 0});
  const auto rz = is_semicoherent(zeros);
  CHECK_FALSE(rz.ok);
  CHECK(rz.violation.find("boundary") != std::string::npos);
  const auto bad_empty = StructureFunction::from_table(2, {1, 1, 1, 1});
  CHECK_FALSE(is_semicoherent(bad_empty).ok);
  // monotonicity violation: works with {1} but not with {1,2}
  const auto nonmono = StructureFunction::from_table(3, {0, 1, 0, 0, 0, 0, 0, 1});
  const auto rm = is_semicoherent(nonmono);
  CHECK_FALSE(rm.ok);
  CHECK(rm.violation.find("monotonicity") != std::string::npos);
}

TEST_CASE("k_out_of_n threshold semantics") {
  const auto two_of_three = StructureFunction::k_out_of_n(3, 2);
  CHECK(two_of_three(0b101) == 1);  // {1,3}
  CHECK(two_of_three(0b100) == 0);  // {3}
  CHECK_THROWS_AS(StructureFunction::k_out_of_n(3, 0), error);
  CHECK_THROWS_AS(StructureFunction::k_out_of_n(3, 4), error);
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto phi = StructureFunction::k_out_of_n(n, k);
      for (mask_t m = 0; m < table_size(n); ++m)
        CHECK(phi(m) == (cardinality(m) >= n - k + 1 ? 1 : 0));
    }
}

TEST_CASE("k_out_of_n equals the order statistic indicator") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(StructureFunction::k_out_of_n(n, k).table() ==
            OrderStatisticFunction(n, k).table());
  CHECK(OrderStatisticFunction(3, 0).table() == std::vector<std::uint8_t>(8, 0));
  CHECK(OrderStatisticFunction(3, 4).table() == std::vector<std::uint8_t>(8, 1));
}

TEST_CASE("minimal path sets of named designs") {
  const auto ser = minimal_path_sets(StructureFunction::series(3));
  CHECK(ser.paths == std::vector<mask_t>{0b111});
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto ps = minimal_path_sets(StructureFunction::k_out_of_n(n, k));
      CHECK(ps.paths.size() == static_cast<std::size_t>(binomial(n, n - k + 1)));
      for (mask_t p : ps.paths) CHECK(cardinality(p) == n - k + 1);
    }
  CHECK_THROWS_AS(minimal_path_sets(StructureFunction::from_table(2, {0, 1, 0, 0})), error);
}

TEST_CASE("bridge path round-trip") {
  auto found = minimal_path_sets(bridge()).paths;
  auto expected = bridge_paths().paths;
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  CHECK(found == expected);
}

TEST_CASE("path extraction round-trips every structure") {
  for (const auto& phi : all_semicoherent(3)) {
    const auto rebuilt = StructureFunction::from_path_sets(minimal_path_sets(phi));
    CHECK(rebuilt.table() == phi.table());
  }
  xoshiro256pp rng(2024);
  for (int n = 4; n <= 10; ++n) {
    for (int rep = 0; rep < (n <= 7 ? 20 : 6); ++rep) {
      const auto phi = random_semicoherent(rng, n);
      const auto rebuilt = StructureFunction::from_path_sets(minimal_path_sets(phi));
      CHECK(rebuilt.table() == phi.table());
    }
  }
}

TEST_CASE("random path systems are monotone everywhere") {
  xoshiro256pp rng(7);
  for (int n = 3; n <= 12; n += 3) {
    const auto phi = random_semicoherent(rng, n);
    for (mask_t m = 0; m < table_size(n); ++m)
      for (int i = 0; i < n; ++i)
        if (!(m & (mask_t{1} << i))) CHECK(phi(m) <= phi(m | (mask_t{1} << i)));
  }
}

TEST_CASE("there are 18 semicoherent structures on three components") {
  // The two constant functions are monotone but fail the boundary
  // conditions, so they are excluded.
  CHECK(all_semicoherent(3).size() == 18);
}

TEST_CASE("single-coordinate difference of a projection is constant one") {
  // f(x) = x_1 over n=2
  const std::vector<double> f = {0.0, 1.0, 0.0, 1.0};
  const auto d = s_difference(f, 2, 0b01);
  for (double v : d) CHECK(v == 1.0);
}

TEST_CASE("differences kill constants") {
  const std::vector<double> f(8, 3.25);
  for (mask_t s = 1; s < 8; ++s) {
    const auto d = s_difference(f, 3, s);
    for (double v : d) CHECK(v == 0.0);
  }
  // and the empty difference is the identity
  const auto id = s_difference(f, 3, 0);
  CHECK(id == f);
}

TEST_CASE("difference value matches the rate-reciprocal expansion") {
  // n=2, rates (1,2): -rate({1}) * (difference over {2} of 1/rate_sum)
  // at {1} equals 1 - 1/3 = 2/3.
  const std::vector<double> reciprocal = {0.0, 1.0 / 1.0, 1.0 / 2.0, 1.0 / 3.0};
  const auto d = s_difference(reciprocal, 2, 0b10);
  const double q1 = -1.0 * 1.0 * d[0b01];
  CHECK(q1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("pointwise difference agrees with the dense operator") {
  xoshiro256pp rng(11);
  const int n = 5;
  std::vector<double> f(table_size(n));
  for (double& v : f) v = rng.next_uniform() * 4.0 - 2.0;
  const auto fn = [&f](mask_t m) { return f[m]; };
  for (mask_t s = 0; s < table_size(n); ++s) {
    const auto dense = s_difference(f, n, s);
    for (mask_t x : {mask_t{0}, mask_t{0b10101}, full_mask(n), static_cast<mask_t>(s)})
      CHECK(s_difference_at(fn, s, x) == doctest::Approx(dense[x]).epsilon(1e-12));
  }
}

TEST_CASE("difference is independent of the elimination order") {
  xoshiro256pp rng(13);
  const int n = 5;
  std::vector<double> f(table_size(n));
  for (double& v : f) v = rng.next_uniform() * 2.0 - 1.0;
  // every subset with |S| <= 4, every elimination order, via composition
  // of singleton differences
  for (mask_t s = 1; s < table_size(n); ++s) {
    if (cardinality(s) > 4) continue;
    auto elems = bit_positions(s);
    std::sort(elems.begin(), elems.end());
    const auto reference = s_difference(f, n, s);
    do {
      std::vector<double> g = f;
      for (int i : elems) g = s_difference(g, n, mask_t{1} << i);
      for (mask_t m = 0; m < table_size(n); ++m)
        CHECK(g[m] == doctest::Approx(reference[m]).epsilon(1e-12));
    } while (std::next_permutation(elems.begin(), elems.end()));
  }
}

TEST_CASE("pointwise difference refuses the empty-set pole") {
  const auto poisoned = [](mask_t m) -> double {
    if (m == 0) throw_numeric("queried at the empty set");
    return 1.0;
  };
  // x = {} with K = {1}: the expansion must touch the empty set
  CHECK_THROWS_AS(s_difference_at(poisoned, 0b01, 0), error);
  // x = {2}, K = {1}: base {2} stays off the pole
  CHECK_NOTHROW(s_difference_at(poisoned, 0b01, 0b10));
}

TEST_CASE("component count caps") {
  CHECK_THROWS_AS(StructureFunction::series(0), error);
  CHECK_THROWS_AS(StructureFunction::series(21), error);
  CHECK_NOTHROW(StructureFunction::series(20));
}
