#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrscore/pmf.hpp"
#include "rrscore/rational.hpp"

namespace rrscore {

// The seven worked examples. Binary tournaments are SymmetricBinomial with
// m = 1 when fair; the binary preset also admits a common win probability.
enum class ExampleId {
  kUniform = 1,           // p_u = 1/(m+1)
  kSymmetricBinomial = 2, // Bin(m, 1/2)
  kChess = 3,             // win/draw/loss on {0,1,2} half-point lattice
  kCircular = 4,          // circle layout, Bin(m, p_d) by circular distance
  kThreeClass = 5,        // three classes, m_w within and m_b between
  kTriangular = 6,        // p_u = p_{m-u} = (u+1)/(k+1)^2, m = 2k
  kGeometricWeights = 7,  // m = 4, probabilities L, L^2, L^3
};

const char* example_name(ExampleId id);
std::optional<ExampleId> example_from_name(const std::string& name);

// Lexicographic index of unordered pair {i, j} (0-based players, i < j).
int pair_index(int i, int j, int n);

// n players, one PMF per unordered pair stored in the (i < j) orientation;
// the (j, i) orientation is the reversed vector, which together with
// independence across pairs is exactly the generalized symmetry condition.
// Immutable after construction.
class TournamentModel {
 public:
  // Every pair shares `pmf`.
  static TournamentModel shared_pmf(int n, OutcomePmf pmf, Rat score_unit = Rat(1));
  // pairs[t] is the PMF of the t-th pair in lexicographic order, orientation i < j.
  static TournamentModel from_pairs(int n, std::vector<OutcomePmf> pairs,
                                    Rat score_unit = Rat(1));

  int player_count() const { return n_; }
  int pair_count() const { return n_ * (n_ - 1) / 2; }

  // Stored orientation (i < j in player order).
  const OutcomePmf& pair_pmf(int i, int j) const;
  // Distribution of X_ij for any ordered pair; reversed when i > j.
  OutcomePmf oriented_pmf(int i, int j) const;
  const OutcomePmf& pair_pmf_by_index(int t) const { return pairs_[t]; }

  int pair_max_points(int i, int j) const { return pair_pmf(i, j).max_points(); }
  // Maximum attainable total score of one player, sum_j m_ij.
  long max_score(int player) const;
  // Total points exchanged in the whole tournament, sum over pairs of m_ij.
  long total_points() const;

  const Rat& score_unit() const { return score_unit_; }
  double score_unit_value() const { return score_unit_value_; }

  bool exact() const { return exact_; }
  bool shared_pairs() const { return shared_; }

  std::optional<ExampleId> example() const { return example_; }
  void tag_example(ExampleId id) { example_ = id; }

 private:
  TournamentModel(int n, std::vector<OutcomePmf> pairs, Rat score_unit, bool shared);
  int n_;
  std::vector<OutcomePmf> pairs_;
  Rat score_unit_;
  double score_unit_value_;
  bool exact_;
  bool shared_;
  std::optional<ExampleId> example_;
};

// Per-player mean and variance of the total score s_i, in lattice units.
// variance[i] is sigma_i^2(n-1) = sum_{j != i} Var(X_ij).
struct Moments {
  std::vector<double> mean;
  std::vector<double> variance;
  bool uniform_across_players = false;  // Corollary hypothesis
};
Moments model_moments(const TournamentModel& model);

struct MomentsExact {
  std::vector<Rat> mean;
  std::vector<Rat> variance;
};
MomentsExact model_moments_exact(const TournamentModel& model);

// --- Preset constructors -------------------------------------------------

OutcomePmf uniform_outcome_pmf(int m);
OutcomePmf binomial_outcome_pmf(int m, const Rat& p);
OutcomePmf binomial_outcome_pmf(int m, double p);
OutcomePmf chess_outcome_pmf(const Rat& draw_prob);
OutcomePmf triangular_outcome_pmf(int m);
OutcomePmf geometric_outcome_pmf();

// Positive root of L + 2L^2 + 2L^3 = 1, by bisection to 1e-14.
double geometric_weight_root();

TournamentModel make_uniform_model(int n, int m);
TournamentModel make_binomial_model(int n, int m);
TournamentModel make_binary_model(int n, const Rat& win_prob = Rat(1, 2));
TournamentModel make_chess_model(int n, const Rat& draw_prob);
// dist_probs holds p_1..p_k by circular distance; k = floor(n/2). For even n
// only p_1..p_{k-1} are used and the diametric pair is the fair binomial.
TournamentModel make_circular_model(int n, int m, std::vector<Rat> dist_probs);
TournamentModel make_three_class_model(int class_size, int m_within, int m_between,
                                       const Rat& p, const Rat& q);
TournamentModel make_triangular_model(int n, int m);
TournamentModel make_geometric_model(int n);

// Parameterized family handle: builds the model for a given n, used by the
// simulation gridding, the CLI, and the predicted-center evaluators.
struct PresetSpec {
  ExampleId id = ExampleId::kSymmetricBinomial;
  int m = 1;                    // Ex.1/2/4/6; Ex.3 and Ex.7 fix their own m
  Rat p = Rat(1, 2);            // chess draw prob, three-class p, binary win prob
  Rat q = Rat(1, 2);            // three-class q
  std::vector<Rat> dist_probs;  // Ex.4 p_1..p_k; autofilled with d/(k+1) when empty
  int m_within = 1;             // Ex.5
  int m_between = 1;            // Ex.5
  bool binary_alias = false;    // preset named "binary": Ex.2 with m = 1 and win prob p

  // Smallest valid player count >= requested (Ex.5 needs n = 3k).
  int nearest_valid_n(int n) const;
  TournamentModel instantiate(int n) const;
  std::string describe() const;
};

}  // namespace rrscore
