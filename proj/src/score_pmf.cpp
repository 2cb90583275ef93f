#include "rrscore/score_pmf.hpp"

#include "rrscore/numeric.hpp"

namespace rrscore {

template <typename S>
DensePmf<S> convolve(const DensePmf<S>& a, const DensePmf<S>& b) {
  DensePmf<S> out(a.size() + b.size() - 1, S(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == S(0)) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template DensePmf<double> convolve(const DensePmf<double>&, const DensePmf<double>&);
template DensePmf<Rat> convolve(const DensePmf<Rat>&, const DensePmf<Rat>&);

namespace {

template <typename S>
DensePmf<S> marginal_impl(const TournamentModel& model, int player) {
  DensePmf<S> acc{S(1)};
  for (int j = 0; j < model.player_count(); ++j) {
    if (j == player) continue;
    acc = convolve(acc, model.oriented_pmf(player, j).template values<S>());
  }
  return acc;
}

}  // namespace

DensePmf<double> marginal_score_pmf(const TournamentModel& model, int player) {
  return marginal_impl<double>(model, player);
}

DensePmf<Rat> marginal_score_pmf_exact(const TournamentModel& model, int player) {
  return marginal_impl<Rat>(model, player);
}

template <typename S>
DensePmf<S> cdf_from_pmf(const DensePmf<S>& pmf) {
  DensePmf<S> out(pmf.size());
  Accumulator<S> run;
  for (size_t k = 0; k < pmf.size(); ++k) {
    run.add(pmf[k]);
    out[k] = run.value();
  }
  return out;
}

template DensePmf<double> cdf_from_pmf(const DensePmf<double>&);
template DensePmf<Rat> cdf_from_pmf(const DensePmf<Rat>&);

}  // namespace rrscore
