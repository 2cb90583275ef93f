#include "rrscore/pmf.hpp"

#include <algorithm>
#include <cmath>

#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"

namespace rrscore {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_shape(size_t entries) {
  if (entries < 2) {
    throw ValidationError("outcome PMF needs m >= 1, i.e. at least two entries");
  }
}

}  // namespace

OutcomePmf OutcomePmf::from_doubles(std::vector<double> probs) {
  check_shape(probs.size());
  NeumaierSum sum;
  for (double p : probs) {
    if (!(p >= 0.0) || p > 1.0 + kSumTolerance) {
      throw ValidationError("PMF entry outside [0, 1]");
    }
    sum.add(p);
  }
  if (std::abs(sum.value() - 1.0) > kSumTolerance) {
    throw ValidationError("PMF entries must sum to 1 within 1e-12");
  }
  OutcomePmf pmf;
  pmf.probs_ = std::move(probs);
  return pmf;
}

OutcomePmf OutcomePmf::from_rationals(std::vector<Rat> probs) {
  check_shape(probs.size());
  Rat sum = 0;
  for (const Rat& p : probs) {
    if (p < 0 || p > 1) throw ValidationError("PMF entry outside [0, 1]");
    sum += p;
  }
  if (sum != 1) throw ValidationError("PMF entries must sum to exactly 1 in rational mode");
  OutcomePmf pmf;
  pmf.probs_.reserve(probs.size());
  for (const Rat& p : probs) pmf.probs_.push_back(to_double(p));
  pmf.exact_ = std::move(probs);
  return pmf;
}

const std::vector<Rat>& OutcomePmf::exact_probs() const {
  if (!exact_) throw ValidationError("PMF has no exact representation");
  return *exact_;
}

OutcomePmf OutcomePmf::reversed() const {
  OutcomePmf out;
  out.probs_.assign(probs_.rbegin(), probs_.rend());
  if (exact_) out.exact_ = std::vector<Rat>(exact_->rbegin(), exact_->rend());
  return out;
}

bool OutcomePmf::degenerate() const {
  if (exact_) {
    return std::count_if(exact_->begin(), exact_->end(),
                         [](const Rat& p) { return p != 0; }) == 1;
  }
  return std::count_if(probs_.begin(), probs_.end(),
                       [](double p) { return p != 0.0; }) == 1;
}

PmfMoments pmf_moments(const OutcomePmf& pmf) {
  NeumaierSum mean, second;
  const auto& p = pmf.probs();
  for (size_t u = 0; u < p.size(); ++u) {
    mean.add(static_cast<double>(u) * p[u]);
    second.add(static_cast<double>(u) * static_cast<double>(u) * p[u]);
  }
  double m = mean.value();
  return {m, second.value() - m * m};
}

PmfMomentsExact pmf_moments_exact(const OutcomePmf& pmf) {
  Rat mean = 0, second = 0;
  const auto& p = pmf.exact_probs();
  for (size_t u = 0; u < p.size(); ++u) {
    mean += Rat(static_cast<long>(u)) * p[u];
    second += Rat(static_cast<long>(u) * static_cast<long>(u)) * p[u];
  }
  return {mean, second - mean * mean};
}

}  // namespace rrscore
