#pragma once

#include <optional>
#include <vector>

#include "rrscore/rational.hpp"

namespace rrscore {

struct PmfMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Point distribution of one pairing's outcome on the lattice {0,...,m}.
// Probabilities given as rationals are kept exactly alongside the double
// projection; the exact vector is what the rational-mode computations use.
class OutcomePmf {
 public:
  static OutcomePmf from_doubles(std::vector<double> probs);
  static OutcomePmf from_rationals(std::vector<Rat> probs);

  int max_points() const { return static_cast<int>(probs_.size()) - 1; }
  const std::vector<double>& probs() const { return probs_; }

  bool exact() const { return exact_.has_value(); }
  const std::vector<Rat>& exact_probs() const;

  // Distribution of the reverse orientation: entry u becomes p_{m-u}.
  OutcomePmf reversed() const;

  bool degenerate() const;  // point mass

  template <class S>
  const std::vector<S>& values() const;

 private:
  OutcomePmf() = default;
  std::vector<double> probs_;
  std::optional<std::vector<Rat>> exact_;
};

PmfMoments pmf_moments(const OutcomePmf& pmf);

struct PmfMomentsExact {
  Rat mean;
  Rat variance;
};
PmfMomentsExact pmf_moments_exact(const OutcomePmf& pmf);

inline OutcomePmf reverse_pmf(const OutcomePmf& pmf) { return pmf.reversed(); }

template <>
inline const std::vector<double>& OutcomePmf::values<double>() const {
  return probs_;
}
template <>
inline const std::vector<Rat>& OutcomePmf::values<Rat>() const {
  return exact_probs();
}

}  // namespace rrscore
