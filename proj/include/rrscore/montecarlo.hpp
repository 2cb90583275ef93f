#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rrscore/model.hpp"
#include "rrscore/rng.hpp"

namespace rrscore {

struct TrialOutcome {
  std::vector<long> scores;
  long max_score = 0;
  double normalized_max = 0;  // max over i of (s_i - E s_i) / sigma_i(n-1)
};

// Precomputes per-pair sampling tables and the exact moments used for
// normalization; immutable afterwards, safe to share across workers.
class TournamentSampler {
 public:
  explicit TournamentSampler(const TournamentModel& model);

  // Consumes exactly one unit draw per pair, pairs in lexicographic order.
  TrialOutcome sample(SplitMix64& stream) const;

  const TournamentModel& model() const { return *model_; }
  const Moments& moments() const { return moments_; }
  bool normalizable() const { return normalizable_; }

 private:
  const TournamentModel* model_;
  Moments moments_;
  std::vector<double> sigma_;
  bool normalizable_ = true;
  std::vector<std::vector<double>> tables_;  // cumulative PMFs, deduplicated
  std::vector<std::uint32_t> pair_table_;    // unordered pair -> table index
};

TrialOutcome sample_tournament(const TournamentModel& model, SplitMix64& stream);

struct SimulationReport {
  int n = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
  double epsilon = 1.0;
  bool uniform_moments = true;  // false marks per-player normalization
  double mean_dev = 0;          // mean of s* - sqrt(2 log(n-1))
  double abs_dev_mean = 0;      // mean of |s* - sqrt(2 log(n-1))|
  std::vector<std::pair<double, double>> quantiles;  // (prob, s* quantile)
  std::optional<double> coverage;  // fraction with s* in (x+, x-]
  double unique_max_fraction = 0;
  std::vector<double> s_star;          // per trial, in trial order
  std::vector<double> sorted_abs_dev;  // |s* - sqrt(2 log(n-1))| ascending
};

SimulationReport run_simulation(const TournamentModel& model, long long trials,
                                double epsilon, std::uint64_t seed, int threads = 0);

// One report per grid entry; invalid n values are rounded up to the nearest
// the preset supports.
std::vector<SimulationReport> run_convergence(const PresetSpec& preset,
                                              const std::vector<int>& n_grid,
                                              long long trials, double epsilon,
                                              std::uint64_t seed, int threads = 0);

// Empirical P(|s* - sqrt(2 log(n-1))| > delta).
double deviation_cdf(const SimulationReport& report, double delta);

}  // namespace rrscore
