#include "rrscore/unique_max.hpp"

#include <cmath>
#include <vector>

#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"
#include "rrscore/rng.hpp"

namespace rrscore {

namespace {

// Scores of all n players packed one per byte; n <= 8 and scores <= 7 keep
// every lane carry-free.
inline bool unique_max_lanes(std::uint64_t packed, int n) {
  int best = -1, ties = 0;
  for (int i = 0; i < n; ++i) {
    int s = static_cast<int>((packed >> (8 * i)) & 0xff);
    if (s > best) {
      best = s;
      ties = 1;
    } else if (s == best) {
      ++ties;
    }
  }
  return ties == 1;
}

}  // namespace

UniqueMaxReport unique_max(int n, int threads) {
  if (n < 3 || n > 8) {
    throw ValidationError("exact unique-max supports 3 <= n <= 8; use the Monte Carlo mode");
  }
  int pairs = n * (n - 1) / 2;
  // delta[t] credits the winner of pair t in its byte lane
  std::vector<std::uint64_t> win(pairs), lose(pairs);
  {
    int t = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++t) {
        win[t] = 1ull << (8 * i);
        lose[t] = 1ull << (8 * j);
      }
    }
  }

  int low_bits = std::min(pairs, 16);
  int high_bits = pairs - low_bits;
  std::vector<std::uint64_t> low_score(1ull << low_bits);
  for (std::uint64_t mask = 0; mask < low_score.size(); ++mask) {
    std::uint64_t packed = 0;
    for (int t = 0; t < low_bits; ++t) packed += (mask >> t) & 1 ? win[t] : lose[t];
    low_score[mask] = packed;
  }

  std::uint64_t high_count = 1ull << high_bits;
  std::vector<long long> counts(high_count, 0);
  parallel_chunks(high_count, effective_threads(threads), [&](std::uint64_t hi) {
    std::uint64_t base = 0;
    for (int t = 0; t < high_bits; ++t) {
      base += (hi >> t) & 1 ? win[low_bits + t] : lose[low_bits + t];
    }
    long long local = 0;
    for (std::uint64_t packed : low_score) {
      if (unique_max_lanes(base + packed, n)) ++local;
    }
    counts[hi] = local;
  });

  UniqueMaxReport rep;
  rep.n = n;
  rep.favorable = 0;
  for (long long c : counts) rep.favorable += c;
  rep.total = BigInt(1) << pairs;
  rep.r = Rat(rep.favorable, rep.total);
  rep.r_value = to_double(rep.r);
  return rep;
}

UniqueMaxMcReport unique_max_mc(int n, long long trials, std::uint64_t seed,
                                int threads) {
  if (n < 3) throw ValidationError("unique-max needs n >= 3");
  if (trials < 1) throw ValidationError("trials must be >= 1");

  std::uint64_t chunk_count = std::min<long long>(trials, 256);
  std::vector<long long> hits(chunk_count, 0);
  parallel_chunks(chunk_count, effective_threads(threads), [&](std::uint64_t c) {
    long long begin = trials * c / chunk_count;
    long long end = trials * (c + 1) / chunk_count;
    std::vector<int> scores(n);
    long long local = 0;
    for (long long trial = begin; trial < end; ++trial) {
      SplitMix64 rng(derive_stream_key(seed, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(trial)));
      std::fill(scores.begin(), scores.end(), 0);
      std::uint64_t word = 0;
      int left = 0;
      int t = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++t) {
          if (left == 0) {
            word = rng();
            left = 64;
          }
          if (word & 1) {
            ++scores[i];
          } else {
            ++scores[j];
          }
          word >>= 1;
          --left;
        }
      }
      int best = -1, ties = 0;
      for (int s : scores) {
        if (s > best) {
          best = s;
          ties = 1;
        } else if (s == best) {
          ++ties;
        }
      }
      if (ties == 1) ++local;
    }
    hits[c] = local;
  });

  UniqueMaxMcReport rep;
  rep.n = n;
  rep.trials = trials;
  for (long long h : hits) rep.hits += h;
  rep.estimate = static_cast<double>(rep.hits) / static_cast<double>(trials);
  rep.std_error =
      std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(trials));
  return rep;
}

}  // namespace rrscore
