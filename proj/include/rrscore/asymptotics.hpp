#pragma once

#include <vector>

#include "rrscore/model.hpp"

namespace rrscore {

double normal_cdf(double x);
double normal_pdf(double x);

struct MillsRatioReport {
  double x = 0;
  double tail = 0;    // 1 - Phi(x)
  double approx = 0;  // phi(x)/x
  double rel_err = 0; // |tail/approx - 1|
};

MillsRatioReport mills_ratio_check(double x);

// x = [2 log(n-1) - (1 +- eps) log(log(n-1))]^(1/2)
struct ThresholdPair {
  int n = 0;
  double epsilon = 0;
  double x_minus = 0;
  double x_plus = 0;
};

ThresholdPair thresholds(int n, double epsilon);

// c_double_prime < 1/sqrt(4 pi) < c_prime
struct BoundConstants {
  double c_prime;
  double c_double_prime;
  explicit BoundConstants(double c_prime_in = 0.3, double c_double_prime_in = 0.25);
};

struct TailBounds {
  double lhs_bound = 0;  // n c' (log(n-1))^(-eps/2) / (n-1)
  double rhs_bound = 0;  // exp(-c'' n (log(n-1))^(eps/2) / (n-1))
};

TailBounds tail_bounds(int n, double epsilon, const BoundConstants& constants = BoundConstants());

// The deterministic sequence subtracted from s_(n), in display units:
// E(s_1) plus sqrt(2 log(n-1) Var(s_1)), each from the preset's closed form.
struct CenteringPrediction {
  ExampleId example = ExampleId::kUniform;
  int n = 0;
  double mean_term = 0;
  double fluct_term = 0;
  double center = 0;
};

CenteringPrediction predicted_center(const PresetSpec& preset, int n);

// Exact marginal tail of a normalized score next to the normal tail.
struct CramerRow {
  double x = 0;
  double exact_tail = 0;   // P(s_1* > x) by convolution
  double normal_tail = 0;  // 1 - Phi(x)
  double ratio = 0;
  double cube_ratio = 0;   // sigma_1(n-1)^(1/3) / x, the validity gauge
};

std::vector<CramerRow> cramer_tail_table(const TournamentModel& model,
                                         const std::vector<double>& xs);

}  // namespace rrscore
