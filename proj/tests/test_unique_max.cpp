#include <cmath>

#include "doctest.h"
#include "rrscore/errors.hpp"
#include "rrscore/unique_max.hpp"

using namespace rrscore;

TEST_CASE("unique-max counts for small tournaments") {
  // n = 3: eight tournaments, the two 3-cycles tie at 1-1-1
  auto r3 = unique_max(3);
  CHECK(r3.favorable == 6);
  CHECK(r3.total == 8);
  CHECK(r3.r == Rat(3, 4));

  auto r4 = unique_max(4);
  CHECK(r4.favorable == 32);
  CHECK(r4.total == 64);
  CHECK(r4.r == Rat(1, 2));

  auto r5 = unique_max(5);
  CHECK(r5.favorable == 600);
  CHECK(r5.total == 1024);

  auto r6 = unique_max(6);
  CHECK(r6.favorable == 20544);
  CHECK(r6.total == 32768);
}

TEST_CASE("unique-max is thread-count independent") {
  auto a = unique_max(6, 1);
  auto b = unique_max(6, 3);
  CHECK(a.favorable == b.favorable);
  CHECK(a.r_value == b.r_value);
}

TEST_CASE("unique-max rejects out-of-range n") {
  CHECK_THROWS_AS(unique_max(2), ValidationError);
  CHECK_THROWS_AS(unique_max(9), ValidationError);
}

TEST_CASE("Monte Carlo unique-max brackets the exact value") {
  auto exact = unique_max(5);
  auto mc = unique_max_mc(5, 40000, 2024);
  CHECK(mc.trials == 40000);
  CHECK(mc.hits > 0);
  double err = std::abs(mc.estimate - exact.r_value);
  CHECK(err <= 5.0 * mc.std_error);

  auto again = unique_max_mc(5, 40000, 2024);
  CHECK(again.hits == mc.hits);
  auto threaded = unique_max_mc(5, 40000, 2024, 4);
  CHECK(threaded.hits == mc.hits);
  auto other_seed = unique_max_mc(5, 40000, 2025);
  CHECK(other_seed.hits != mc.hits);

  CHECK_THROWS_AS(unique_max_mc(2, 100, 1), ValidationError);
  CHECK_THROWS_AS(unique_max_mc(5, 0, 1), ValidationError);
}
