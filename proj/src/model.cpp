#include "rrscore/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"

namespace rrscore {

const char* example_name(ExampleId id) {
  switch (id) {
    case ExampleId::kUniform: return "uniform";
    case ExampleId::kSymmetricBinomial: return "binomial";
    case ExampleId::kChess: return "chess";
    case ExampleId::kCircular: return "circular";
    case ExampleId::kThreeClass: return "classes";
    case ExampleId::kTriangular: return "triangular";
    case ExampleId::kGeometricWeights: return "geometric";
  }
  return "?";
}

std::optional<ExampleId> example_from_name(const std::string& name) {
  if (name == "uniform") return ExampleId::kUniform;
  if (name == "binomial" || name == "binary") return ExampleId::kSymmetricBinomial;
  if (name == "chess") return ExampleId::kChess;
  if (name == "circular") return ExampleId::kCircular;
  if (name == "classes") return ExampleId::kThreeClass;
  if (name == "triangular") return ExampleId::kTriangular;
  if (name == "geometric") return ExampleId::kGeometricWeights;
  return std::nullopt;
}

int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

TournamentModel::TournamentModel(int n, std::vector<OutcomePmf> pairs, Rat score_unit,
                                 bool shared)
    : n_(n),
      pairs_(std::move(pairs)),
      score_unit_(std::move(score_unit)),
      score_unit_value_(to_double(score_unit_)),
      shared_(shared) {
  if (n_ < 2) throw ValidationError("tournament needs n >= 2 players");
  if (static_cast<int>(pairs_.size()) != pair_count()) {
    throw ValidationError("expected one PMF per unordered pair");
  }
  if (score_unit_ <= 0) throw ValidationError("score_unit must be positive");
  exact_ = std::all_of(pairs_.begin(), pairs_.end(),
                       [](const OutcomePmf& p) { return p.exact(); });
}

TournamentModel TournamentModel::shared_pmf(int n, OutcomePmf pmf, Rat score_unit) {
  if (n < 2) throw ValidationError("tournament needs n >= 2 players");
  std::vector<OutcomePmf> pairs(static_cast<size_t>(n) * (n - 1) / 2, pmf);
  return TournamentModel(n, std::move(pairs), std::move(score_unit), true);
}

TournamentModel TournamentModel::from_pairs(int n, std::vector<OutcomePmf> pairs,
                                            Rat score_unit) {
  return TournamentModel(n, std::move(pairs), std::move(score_unit), false);
}

const OutcomePmf& TournamentModel::pair_pmf(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw ValidationError("invalid pair of players");
  }
  return pairs_[pair_index(i, j, n_)];
}

OutcomePmf TournamentModel::oriented_pmf(int i, int j) const {
  const OutcomePmf& stored = pair_pmf(i, j);
  return i < j ? stored : stored.reversed();
}

long TournamentModel::max_score(int player) const {
  long total = 0;
  for (int j = 0; j < n_; ++j) {
    if (j != player) total += pair_max_points(player, j);
  }
  return total;
}

long TournamentModel::total_points() const {
  long total = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) total += pair_max_points(i, j);
  }
  return total;
}

Moments model_moments(const TournamentModel& model) {
  int n = model.player_count();
  Moments out;
  out.mean.resize(n);
  out.variance.resize(n);
  for (int i = 0; i < n; ++i) {
    NeumaierSum mean, var;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      PmfMoments pm = pmf_moments(model.oriented_pmf(i, j));
      mean.add(pm.mean);
      var.add(pm.variance);
    }
    out.mean[i] = mean.value();
    out.variance[i] = var.value();
  }
  out.uniform_across_players = true;
  for (int i = 1; i < n; ++i) {
    if (std::abs(out.mean[i] - out.mean[0]) > 1e-12 ||
        std::abs(out.variance[i] - out.variance[0]) > 1e-12) {
      out.uniform_across_players = false;
      break;
    }
  }
  return out;
}

MomentsExact model_moments_exact(const TournamentModel& model) {
  if (!model.exact()) throw ValidationError("model has no exact probabilities");
  int n = model.player_count();
  MomentsExact out;
  out.mean.assign(n, Rat(0));
  out.variance.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      PmfMomentsExact pm = pmf_moments_exact(model.oriented_pmf(i, j));
      out.mean[i] += pm.mean;
      out.variance[i] += pm.variance;
    }
  }
  return out;
}

// --- Outcome PMFs ---------------------------------------------------------

OutcomePmf uniform_outcome_pmf(int m) {
  if (m < 1) throw ValidationError("uniform PMF needs m >= 1");
  std::vector<Rat> probs(m + 1, Rat(1, m + 1));
  return OutcomePmf::from_rationals(std::move(probs));
}

namespace {

std::vector<BigInt> pascal_row(int m) {
  std::vector<BigInt> row(m + 1);
  row[0] = 1;
  for (int u = 1; u <= m; ++u) row[u] = row[u - 1] * (m - u + 1) / u;
  return row;
}

}  // namespace

OutcomePmf binomial_outcome_pmf(int m, const Rat& p) {
  if (m < 1) throw ValidationError("binomial PMF needs m >= 1");
  if (p < 0 || p > 1) throw ValidationError("binomial success probability outside [0, 1]");
  Rat q = Rat(1) - p;
  auto coeff = pascal_row(m);
  std::vector<Rat> probs(m + 1);
  Rat pu = 1;
  for (int u = 0; u <= m; ++u) {
    Rat qv = 1;
    for (int v = 0; v < m - u; ++v) qv *= q;
    probs[u] = Rat(coeff[u]) * pu * qv;
    pu *= p;
  }
  return OutcomePmf::from_rationals(std::move(probs));
}

OutcomePmf binomial_outcome_pmf(int m, double p) {
  if (m < 1) throw ValidationError("binomial PMF needs m >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binomial success probability outside [0, 1]");
  auto coeff = pascal_row(m);
  std::vector<double> probs(m + 1);
  for (int u = 0; u <= m; ++u) {
    probs[u] = coeff[u].convert_to<double>() * std::pow(p, u) * std::pow(1.0 - p, m - u);
  }
  // renormalize rounding residue so the validator's 1e-12 gate is meaningful
  double sum = 0;
  for (double v : probs) sum += v;
  for (double& v : probs) v /= sum;
  return OutcomePmf::from_doubles(std::move(probs));
}

OutcomePmf chess_outcome_pmf(const Rat& draw_prob) {
  if (draw_prob < 0 || draw_prob >= 1) {
    throw ValidationError("chess draw probability must lie in [0, 1)");
  }
  Rat half = (Rat(1) - draw_prob) / 2;
  return OutcomePmf::from_rationals({half, draw_prob, half});
}

OutcomePmf triangular_outcome_pmf(int m) {
  if (m < 2 || m % 2 != 0) throw ValidationError("triangular PMF needs even m >= 2");
  int k = m / 2;
  std::vector<Rat> probs(m + 1);
  Rat den((k + 1) * (k + 1));
  for (int u = 0; u <= k; ++u) {
    probs[u] = Rat(u + 1) / den;
    probs[m - u] = probs[u];
  }
  return OutcomePmf::from_rationals(std::move(probs));
}

double geometric_weight_root() {
  static const double root = [] {
    double lo = 0.0, hi = 1.0;
    auto f = [](double t) { return t + 2 * t * t + 2 * t * t * t - 1.0; };
    while (hi - lo > 1e-14) {
      double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    if (std::abs(r - 0.4406197) > 1e-6) {
      throw std::logic_error("geometric weight root drifted from 0.4406197");
    }
    return r;
  }();
  return root;
}

OutcomePmf geometric_outcome_pmf() {
  double L = geometric_weight_root();
  double L2 = L * L, L3 = L2 * L;
  return OutcomePmf::from_doubles({L3, L2, L, L2, L3});
}

// --- Models ---------------------------------------------------------------

TournamentModel make_uniform_model(int n, int m) {
  auto model = TournamentModel::shared_pmf(n, uniform_outcome_pmf(m));
  model.tag_example(ExampleId::kUniform);
  return model;
}

TournamentModel make_binomial_model(int n, int m) {
  auto model = TournamentModel::shared_pmf(n, binomial_outcome_pmf(m, Rat(1, 2)));
  model.tag_example(ExampleId::kSymmetricBinomial);
  return model;
}

TournamentModel make_binary_model(int n, const Rat& win_prob) {
  if (win_prob <= 0 || win_prob >= 1) {
    throw ValidationError("binary win probability must lie in (0, 1)");
  }
  auto model = TournamentModel::shared_pmf(
      n, OutcomePmf::from_rationals({Rat(1) - win_prob, win_prob}));
  if (win_prob == Rat(1, 2)) model.tag_example(ExampleId::kSymmetricBinomial);
  return model;
}

TournamentModel make_chess_model(int n, const Rat& draw_prob) {
  auto model = TournamentModel::shared_pmf(n, chess_outcome_pmf(draw_prob), Rat(1, 2));
  model.tag_example(ExampleId::kChess);
  return model;
}

TournamentModel make_circular_model(int n, int m, std::vector<Rat> dist_probs) {
  if (n < 3) throw ValidationError("circular model needs n >= 3");
  int k = n / 2;                      // max circular distance
  bool even = n % 2 == 0;
  int needed = even ? k - 1 : k;      // even n handles distance k diametrically
  if (static_cast<int>(dist_probs.size()) < needed) {
    throw ValidationError("circular model needs p_1..p_" + std::to_string(needed));
  }
  for (int d = 0; d < needed; ++d) {
    if (dist_probs[d] <= 0 || dist_probs[d] >= 1) {
      throw ValidationError("circular probabilities must lie in (0, 1)");
    }
  }
  std::vector<OutcomePmf> by_distance;  // index d-1 => Bin(m, p_d)
  by_distance.reserve(needed);
  for (int d = 0; d < needed; ++d) by_distance.push_back(binomial_outcome_pmf(m, dist_probs[d]));
  OutcomePmf diametric = binomial_outcome_pmf(m, Rat(1, 2));

  std::vector<OutcomePmf> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int diff = j - i;  // steps ahead of i on the circle
      if (even && diff == k) {
        pairs.push_back(diametric);
      } else if (diff < k || (!even && diff == k)) {
        pairs.push_back(by_distance[diff - 1]);  // X_ij ~ Bin(m, p_diff)
      } else {
        int d = n - diff;  // i is d steps ahead of j
        pairs.push_back(by_distance[d - 1].reversed());
      }
    }
  }
  auto model = TournamentModel::from_pairs(n, std::move(pairs));
  model.tag_example(ExampleId::kCircular);
  return model;
}

TournamentModel make_three_class_model(int class_size, int m_within, int m_between,
                                       const Rat& p, const Rat& q) {
  if (class_size < 1) throw ValidationError("three-class model needs class size >= 1");
  if (!(q > 0 && q < p && p < 1)) {
    throw ValidationError("three-class model needs 0 < q < p < 1");
  }
  if (p + q != 1) {
    throw ValidationError("three-class probabilities must satisfy p + q = 1");
  }
  if (m_within < 1 || m_between < 1) throw ValidationError("m_w and m_b must be >= 1");
  int n = 3 * class_size;
  if (n < 2) throw ValidationError("three-class model needs n >= 2");
  OutcomePmf within = binomial_outcome_pmf(m_within, Rat(1, 2));
  OutcomePmf forward = binomial_outcome_pmf(m_between, p);   // class h vs class h+1
  OutcomePmf backward = forward.reversed();                  // class h vs class h-1

  std::vector<OutcomePmf> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int ci = i / class_size, cj = j / class_size;
      if (ci == cj) {
        pairs.push_back(within);
      } else if (cj == (ci + 1) % 3) {
        pairs.push_back(forward);
      } else {
        pairs.push_back(backward);
      }
    }
  }
  auto model = TournamentModel::from_pairs(n, std::move(pairs));
  model.tag_example(ExampleId::kThreeClass);
  return model;
}

TournamentModel make_triangular_model(int n, int m) {
  auto model = TournamentModel::shared_pmf(n, triangular_outcome_pmf(m));
  model.tag_example(ExampleId::kTriangular);
  return model;
}

TournamentModel make_geometric_model(int n) {
  auto model = TournamentModel::shared_pmf(n, geometric_outcome_pmf());
  model.tag_example(ExampleId::kGeometricWeights);
  return model;
}

// --- PresetSpec -----------------------------------------------------------

int PresetSpec::nearest_valid_n(int n) const {
  if (n < 2) n = 2;
  switch (id) {
    case ExampleId::kThreeClass:
      return 3 * ((n + 2) / 3);
    case ExampleId::kCircular:
      return n < 3 ? 3 : n;
    default:
      return n;
  }
}

TournamentModel PresetSpec::instantiate(int n) const {
  switch (id) {
    case ExampleId::kUniform:
      return make_uniform_model(n, m);
    case ExampleId::kSymmetricBinomial:
      if (binary_alias) return make_binary_model(n, p);
      return make_binomial_model(n, m);
    case ExampleId::kChess:
      return make_chess_model(n, p);
    case ExampleId::kCircular: {
      std::vector<Rat> probs = dist_probs;
      if (probs.empty()) {
        int k = n / 2;
        for (int d = 1; d <= k; ++d) probs.emplace_back(d, k + 1);
      }
      return make_circular_model(n, m, std::move(probs));
    }
    case ExampleId::kThreeClass: {
      if (n % 3 != 0) throw ValidationError("three-class model needs n divisible by 3");
      return make_three_class_model(n / 3, m_within, m_between, p, q);
    }
    case ExampleId::kTriangular:
      return make_triangular_model(n, m);
    case ExampleId::kGeometricWeights:
      return make_geometric_model(n);
  }
  throw ValidationError("unknown preset");
}

std::string PresetSpec::describe() const {
  std::string out = binary_alias ? "binary" : example_name(id);
  switch (id) {
    case ExampleId::kUniform:
    case ExampleId::kTriangular:
      out += "(m=" + std::to_string(m) + ")";
      break;
    case ExampleId::kSymmetricBinomial:
      out += binary_alias ? "(p=" + format_rational(p) + ")" : "(m=" + std::to_string(m) + ")";
      break;
    case ExampleId::kChess:
      out += "(p=" + format_rational(p) + ")";
      break;
    case ExampleId::kCircular:
      out += "(m=" + std::to_string(m) + ")";
      break;
    case ExampleId::kThreeClass:
      out += "(m_w=" + std::to_string(m_within) + ",m_b=" + std::to_string(m_between) +
             ",p=" + format_rational(p) + ",q=" + format_rational(q) + ")";
      break;
    case ExampleId::kGeometricWeights:
      break;
  }
  return out;
}

}  // namespace rrscore
