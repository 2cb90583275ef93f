#include "rrscore/asymptotics.hpp"

#include <cmath>

#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"
#include "rrscore/score_pmf.hpp"

namespace rrscore {

namespace {

constexpr double kInvSqrt4Pi = 0.28209479177387814;  // 1/sqrt(4 pi)
constexpr double kSqrt2Pi = 2.5066282746310005;

double upper_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

MillsRatioReport mills_ratio_check(double x) {
  if (!(x > 0)) throw ValidationError("Mills ratio check needs x > 0");
  MillsRatioReport rep;
  rep.x = x;
  rep.tail = upper_tail(x);
  rep.approx = normal_pdf(x) / x;
  rep.rel_err = std::abs(rep.tail / rep.approx - 1.0);
  return rep;
}

ThresholdPair thresholds(int n, double epsilon) {
  if (n < 4) throw ValidationError("thresholds need n >= 4 so log(log(n-1)) > 0");
  if (epsilon < 0) throw ValidationError("epsilon must be >= 0");
  double loglog = std::log(std::log(static_cast<double>(n - 1)));
  double two_log = 2.0 * std::log(static_cast<double>(n - 1));
  double minus_sq = two_log - (1.0 - epsilon) * loglog;
  double plus_sq = two_log - (1.0 + epsilon) * loglog;
  if (minus_sq < 0 || plus_sq < 0) {
    throw ValidationError("negative radicand: epsilon too large for this n");
  }
  ThresholdPair t;
  t.n = n;
  t.epsilon = epsilon;
  t.x_minus = std::sqrt(minus_sq);
  t.x_plus = std::sqrt(plus_sq);
  return t;
}

BoundConstants::BoundConstants(double c_prime_in, double c_double_prime_in)
    : c_prime(c_prime_in), c_double_prime(c_double_prime_in) {
  if (!(c_double_prime < kInvSqrt4Pi && kInvSqrt4Pi < c_prime)) {
    throw ValidationError("constants must satisfy c'' < 1/sqrt(4 pi) < c'");
  }
  if (c_double_prime <= 0) throw ValidationError("c'' must be positive");
}

TailBounds tail_bounds(int n, double epsilon, const BoundConstants& constants) {
  if (n < 4) throw ValidationError("tail bounds need n >= 4");
  double logn1 = std::log(static_cast<double>(n - 1));
  TailBounds b;
  b.lhs_bound = n * constants.c_prime * std::pow(logn1, -epsilon / 2.0) / (n - 1);
  b.rhs_bound = std::exp(-constants.c_double_prime * n * std::pow(logn1, epsilon / 2.0) /
                         (n - 1));
  return b;
}

CenteringPrediction predicted_center(const PresetSpec& preset, int n) {
  if (n < 2) throw ValidationError("centering needs n >= 2");
  double logn1 = std::log(static_cast<double>(n - 1));
  double games = n - 1;

  // per-game mean and variance in display units, by the preset's closed form
  double mean_game = 0, var_total = 0;
  switch (preset.id) {
    case ExampleId::kUniform:
      mean_game = preset.m / 2.0;
      var_total = games * preset.m * (preset.m + 2) / 12.0;
      break;
    case ExampleId::kSymmetricBinomial:
      if (preset.binary_alias && preset.p != Rat(1, 2)) {
        throw ValidationError("centering needs the equal-moment case p = 1/2");
      }
      mean_game = preset.m / 2.0;
      var_total = games * preset.m / 4.0;
      break;
    case ExampleId::kChess: {
      double p = to_double(preset.p);
      mean_game = 0.5;
      var_total = games * (1.0 - p) / 4.0;
      break;
    }
    case ExampleId::kCircular: {
      int k = n / 2;
      bool even = n % 2 == 0;
      int needed = even ? k - 1 : k;
      std::vector<Rat> probs = preset.dist_probs;
      if (probs.empty()) {
        for (int d = 1; d <= k; ++d) probs.emplace_back(d, k + 1);
      }
      if (static_cast<int>(probs.size()) < needed) {
        throw ValidationError("circular centering needs p_1..p_" + std::to_string(needed));
      }
      mean_game = preset.m / 2.0;
      double vsum = 0;
      for (int d = 0; d < needed; ++d) {
        double pd = to_double(probs[d]);
        vsum += pd * (1.0 - pd);  // v_d
      }
      var_total = 2.0 * preset.m * vsum;
      if (even) var_total += preset.m / 4.0;  // diametric fair binomial
      break;
    }
    case ExampleId::kThreeClass: {
      if (n % 3 != 0) throw ValidationError("three-class centering needs n = 3k");
      int k = n / 3;
      double p = to_double(preset.p);
      double q = to_double(preset.q);
      mean_game = ((k - 1) * preset.m_within / 2.0 + k * preset.m_between) / games;
      var_total = (k - 1) * preset.m_within / 4.0 + 2.0 * k * preset.m_between * p * q;
      break;
    }
    case ExampleId::kTriangular:
      mean_game = preset.m / 2.0;
      var_total = games * preset.m * (preset.m + 4) / 24.0;
      break;
    case ExampleId::kGeometricWeights: {
      double L = geometric_weight_root();
      mean_game = 2.0;
      var_total = games * 2.0 * (L * L + 4.0 * L * L * L);
      break;
    }
  }
  if (var_total <= 0) throw ValidationError("centering needs positive variance");

  CenteringPrediction c;
  c.example = preset.id;
  c.n = n;
  c.mean_term = games * mean_game;
  c.fluct_term = std::sqrt(2.0 * logn1 * var_total);
  c.center = c.mean_term + c.fluct_term;
  return c;
}

std::vector<CramerRow> cramer_tail_table(const TournamentModel& model,
                                         const std::vector<double>& xs) {
  Moments mom = model_moments(model);
  if (!mom.uniform_across_players) {
    throw ValidationError("tail table needs equal moments across players");
  }
  double mu = mom.mean[0];
  double sigma = std::sqrt(mom.variance[0]);
  if (!(sigma > 0)) throw ValidationError("tail table needs positive variance");
  DensePmf<double> pmf = marginal_score_pmf(model, 0);

  std::vector<CramerRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0)) throw ValidationError("tail table needs x > 0");
    CramerRow row;
    row.x = x;
    double cut = mu + x * sigma;  // strict tail: scores above cut
    NeumaierSum tail;
    for (long v = static_cast<long>(pmf.size()) - 1; v >= 0; --v) {
      if (static_cast<double>(v) <= cut) break;
      tail.add(pmf[v]);
    }
    row.exact_tail = tail.value();
    row.normal_tail = upper_tail(x);
    row.ratio = row.exact_tail / row.normal_tail;
    row.cube_ratio = std::cbrt(sigma) / x;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rrscore
