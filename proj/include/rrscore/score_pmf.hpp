#pragma once

#include <vector>

#include "rrscore/model.hpp"

namespace rrscore {

// Dense distribution over lattice scores {0, 1, ..., size()-1}.
template <typename S>
using DensePmf = std::vector<S>;

template <typename S>
DensePmf<S> convolve(const DensePmf<S>& a, const DensePmf<S>& b);

// PMF of one player's total score: convolution of its n-1 oriented game PMFs.
DensePmf<double> marginal_score_pmf(const TournamentModel& model, int player);
DensePmf<Rat> marginal_score_pmf_exact(const TournamentModel& model, int player);

// Running P(score <= k); last entry is the total mass.
template <typename S>
DensePmf<S> cdf_from_pmf(const DensePmf<S>& pmf);

}  // namespace rrscore
