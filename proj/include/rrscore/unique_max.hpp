#pragma once

#include <cstdint>

#include "rrscore/rational.hpp"

namespace rrscore {

// r_n for the fair binary model: exact count of n-player tournaments
// (2^C(n,2) equally likely) whose maximum score is attained once.
struct UniqueMaxReport {
  int n = 0;
  BigInt favorable;
  BigInt total;
  Rat r;
  double r_value = 0;
};

UniqueMaxReport unique_max(int n, int threads = 0);

struct UniqueMaxMcReport {
  int n = 0;
  long long trials = 0;
  long long hits = 0;
  double estimate = 0;
  double std_error = 0;
};

UniqueMaxMcReport unique_max_mc(int n, long long trials, std::uint64_t seed,
                                int threads = 0);

}  // namespace rrscore
