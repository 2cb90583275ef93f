#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rrscore/model.hpp"
#include "rrscore/rational.hpp"

namespace rrscore {

enum class NumericMode { kDouble, kRational };

struct EnumerationOptions {
  long long budget = 100000000;  // weighted outcome vectors (or lattice cells)
  int threads = 0;               // 0 = one worker per hardware thread
  NumericMode mode = NumericMode::kDouble;
};

inline constexpr double kNlodTolerance = 1e-12;

// F(k) next to the product of marginal tails. In rational mode the *_exact
// fields are set and the doubles are their projections.
struct JointCdfReport {
  std::vector<long> k;
  bool strict = false;
  double joint = 0;
  double product = 0;
  bool inequality_holds = false;  // joint <= product + kNlodTolerance
  std::vector<double> chain;      // F_0..F_{n(n-1)/2}, filled by decoupling_chain
  std::optional<Rat> joint_exact;
  std::optional<Rat> product_exact;
  std::vector<Rat> chain_exact;
};

// Literal weighted enumeration of every pair-outcome vector.
JointCdfReport joint_cdf_enumerate(const TournamentModel& model,
                                   const std::vector<long>& k, bool strict = false,
                                   const EnumerationOptions& opts = {});

// F_t for t = 0..n(n-1)/2, decoupling unordered pairs in lexicographic order.
JointCdfReport decoupling_chain(const TournamentModel& model,
                                const std::vector<long>& k,
                                const EnumerationOptions& opts = {});

struct Assertion1Result {
  double lhs = 0;  // F_1 - F with only the first pair decoupled
  double rhs = 0;  // sum over g,h of R(g,h) W(g,h)
  std::optional<Rat> lhs_exact;
  std::optional<Rat> rhs_exact;
};

// Thresholds k1, k2 constrain players 1 and 2; the rest are left free.
Assertion1Result assertion1_check(const TournamentModel& model, long k1, long k2,
                                  const EnumerationOptions& opts = {});

// Dense law of the whole score vector; player 0 owns the slowest axis.
struct JointScoreTable {
  std::vector<long> dims;  // max_score(i) + 1
  std::vector<long long> strides;
  std::vector<double> probs;
  double at(const std::vector<long>& scores) const;
};

JointScoreTable build_joint_score_table(const TournamentModel& model,
                                        const EnumerationOptions& opts = {});

// In-place prefix sums along every axis: probs becomes P(s <= k).
void cumulative_in_place(JointScoreTable& table);

using ScanSink =
    std::function<void(const std::vector<long>& k, double joint, double product)>;

struct NlodScanResult {
  long long checked = 0;
  long long violations = 0;  // margin below -kNlodTolerance
  double worst_margin = 0;   // min over the scan of product - joint
  std::vector<long> worst_k;
  double worst_joint = 0;
  double worst_product = 0;
};

// Every threshold vector in [0, max_score(i)] per player.
NlodScanResult nlod_scan_full_grid(const TournamentModel& model, bool strict = false,
                                   const EnumerationOptions& opts = {},
                                   const ScanSink& sink = nullptr);

// count random threshold vectors, each k_i uniform on [-1, max_score(i)].
NlodScanResult nlod_scan_random(const TournamentModel& model, long long count,
                                std::uint64_t seed, bool strict = false,
                                const EnumerationOptions& opts = {},
                                const ScanSink& sink = nullptr);

// Landau-type lower bounds: any subset's scores sum to at least the points
// exchanged inside it, with equality for all n players. subset holds 0-based
// player indices of the first violation.
struct SubsetCheckResult {
  bool ok = true;
  std::vector<int> subset;
  long long score_sum = 0;
  long long required = 0;
  std::string message;
};

SubsetCheckResult subset_score_bound_check(const std::vector<long>& scores,
                                           const TournamentModel& model,
                                           int exhaustive_cap = 12);

}  // namespace rrscore
