#include "rrscore/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "rrscore/asymptotics.hpp"
#include "rrscore/errors.hpp"
#include "rrscore/exact.hpp"
#include "rrscore/numeric.hpp"

namespace rrscore {

TournamentSampler::TournamentSampler(const TournamentModel& model)
    : model_(&model), moments_(model_moments(model)) {
  int n = model.player_count();
  sigma_.resize(n);
  for (int i = 0; i < n; ++i) {
    sigma_[i] = std::sqrt(moments_.variance[i]);
    if (!(sigma_[i] > 0)) normalizable_ = false;
  }
  // cumulative table per distinct PMF; pairs point into the table list
  pair_table_.resize(model.pair_count());
  std::map<std::vector<double>, std::uint32_t> seen;
  int t = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++t) {
      const auto& probs = model.pair_pmf(i, j).probs();
      auto [it, fresh] = seen.try_emplace(probs, static_cast<std::uint32_t>(tables_.size()));
      if (fresh) {
        std::vector<double> cum(probs.size());
        NeumaierSum run;
        for (size_t u = 0; u < probs.size(); ++u) {
          run.add(probs[u]);
          cum[u] = run.value();
        }
        cum.back() = 1.0;
        tables_.push_back(std::move(cum));
      }
      pair_table_[t] = it->second;
    }
  }
}

TrialOutcome TournamentSampler::sample(SplitMix64& stream) const {
  int n = model_->player_count();
  TrialOutcome out;
  out.scores.assign(n, 0);
  int t = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++t) {
      const std::vector<double>& cum = tables_[pair_table_[t]];
      double u = stream.next_unit();
      int points = 0;
      while (u >= cum[points]) ++points;  // cum.back() == 1 > u bounds the walk
      out.scores[i] += points;
      out.scores[j] += static_cast<long>(cum.size()) - 1 - points;
    }
  }
  out.max_score = *std::max_element(out.scores.begin(), out.scores.end());
  if (normalizable_) {
    double best = (out.scores[0] - moments_.mean[0]) / sigma_[0];
    for (int i = 1; i < n; ++i) {
      best = std::max(best, (out.scores[i] - moments_.mean[i]) / sigma_[i]);
    }
    out.normalized_max = best;
  } else {
    out.normalized_max = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

TrialOutcome sample_tournament(const TournamentModel& model, SplitMix64& stream) {
  return TournamentSampler(model).sample(stream);
}

SimulationReport run_simulation(const TournamentModel& model, long long trials,
                                double epsilon, std::uint64_t seed, int threads) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  TournamentSampler sampler(model);
  if (!sampler.normalizable()) {
    throw ValidationError("normalized scores need positive variance for every player");
  }
  int n = model.player_count();
  long long expected_total = model.total_points();
  double target = std::sqrt(2.0 * std::log(static_cast<double>(n - 1)));

  SimulationReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.epsilon = epsilon;
  rep.uniform_moments = sampler.moments().uniform_across_players;
  rep.s_star.resize(trials);

  std::uint64_t chunk_count = static_cast<std::uint64_t>(std::min<long long>(trials, 256));
  std::vector<long long> unique_counts(chunk_count, 0);
  std::vector<std::string> failures(chunk_count);
  parallel_chunks(chunk_count, effective_threads(threads), [&](std::uint64_t c) {
    long long begin = trials * static_cast<long long>(c) / chunk_count;
    long long end = trials * (static_cast<long long>(c) + 1) / chunk_count;
    for (long long trial = begin; trial < end; ++trial) {
      SplitMix64 stream(derive_stream_key(seed, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(trial)));
      TrialOutcome out = sampler.sample(stream);
      long long total = 0;
      for (long s : out.scores) total += s;
      if (total != expected_total) {
        failures[c] = "trial " + std::to_string(trial) + ": total score " +
                      std::to_string(total) + " != " + std::to_string(expected_total);
        return;
      }
      if (trial % 100 == 0) {
        SubsetCheckResult check = subset_score_bound_check(out.scores, model);
        if (!check.ok) {
          failures[c] = "trial " + std::to_string(trial) + ": " + check.message;
          return;
        }
      }
      long ties = static_cast<long>(
          std::count(out.scores.begin(), out.scores.end(), out.max_score));
      if (ties == 1) unique_counts[c] += 1;
      rep.s_star[trial] = out.normalized_max;
    }
  });
  for (const std::string& f : failures) {
    if (!f.empty()) throw PropertyError(f);
  }

  NeumaierSum dev_sum, abs_sum;
  rep.sorted_abs_dev.resize(trials);
  for (long long trial = 0; trial < trials; ++trial) {
    double dev = rep.s_star[trial] - target;
    dev_sum.add(dev);
    abs_sum.add(std::abs(dev));
    rep.sorted_abs_dev[trial] = std::abs(dev);
  }
  std::sort(rep.sorted_abs_dev.begin(), rep.sorted_abs_dev.end());
  rep.mean_dev = dev_sum.value() / static_cast<double>(trials);
  rep.abs_dev_mean = abs_sum.value() / static_cast<double>(trials);

  long long unique_total = 0;
  for (long long u : unique_counts) unique_total += u;
  rep.unique_max_fraction = static_cast<double>(unique_total) / static_cast<double>(trials);

  std::vector<double> sorted(rep.s_star);
  std::sort(sorted.begin(), sorted.end());
  for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) {
    long long rank = static_cast<long long>(std::ceil(p * static_cast<double>(trials))) - 1;
    rank = std::clamp<long long>(rank, 0, trials - 1);
    rep.quantiles.emplace_back(p, sorted[rank]);
  }

  if (n >= 4) {
    try {
      ThresholdPair band = thresholds(n, epsilon);
      long long inside = 0;
      for (double s : rep.s_star) {
        if (s > band.x_plus && s <= band.x_minus) ++inside;
      }
      rep.coverage = static_cast<double>(inside) / static_cast<double>(trials);
    } catch (const ValidationError&) {
      // band undefined for this (n, epsilon); leave coverage empty
    }
  }
  return rep;
}

std::vector<SimulationReport> run_convergence(const PresetSpec& preset,
                                              const std::vector<int>& n_grid,
                                              long long trials, double epsilon,
                                              std::uint64_t seed, int threads) {
  if (n_grid.empty()) throw ValidationError("n grid must be nonempty");
  std::vector<SimulationReport> reports;
  reports.reserve(n_grid.size());
  for (int n : n_grid) {
    TournamentModel model = preset.instantiate(preset.nearest_valid_n(n));
    reports.push_back(run_simulation(model, trials, epsilon, seed, threads));
  }
  return reports;
}

double deviation_cdf(const SimulationReport& report, double delta) {
  const auto& devs = report.sorted_abs_dev;
  auto it = std::upper_bound(devs.begin(), devs.end(), delta);
  return static_cast<double>(devs.end() - it) / static_cast<double>(report.trials);
}

}  // namespace rrscore
