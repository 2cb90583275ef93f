#include "rrscore/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "rrscore/decoupling.hpp"
#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"
#include "rrscore/rng.hpp"
#include "rrscore/score_pmf.hpp"

namespace rrscore {

namespace {

void check_budget(const BigInt& required, long long budget) {
  if (budget < 0 || required > budget) {
    const auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t req = required > cap ? cap : required.convert_to<std::uint64_t>();
    throw BudgetError(req, budget < 0 ? 0 : static_cast<std::uint64_t>(budget));
  }
}

BigInt pmf_denominator(const OutcomePmf& pmf) {
  BigInt d = 1;
  for (const Rat& r : pmf.exact_probs()) d = lcm(d, BigInt(denominator(r)));
  return d;
}

std::vector<BigInt> scaled_numerators(const OutcomePmf& pmf, const BigInt& den) {
  std::vector<BigInt> out;
  out.reserve(pmf.probs().size());
  for (const Rat& r : pmf.exact_probs()) {
    out.push_back(BigInt(numerator(r)) * (den / BigInt(denominator(r))));
  }
  return out;
}

// One pair's contribution to the outcome space: every joint value (u points
// to i, v points to j) with its probability. Zero-probability entries are
// dropped; full_size still reflects the nominal weighted count.
struct SlotOutcome {
  int di, dj;
  double prob;
  BigInt num;
};

struct Slot {
  int i = 0, j = 0;
  long full_size = 1;
  BigInt den = 1;
  std::vector<SlotOutcome> outcomes;
};

Slot make_coupled(const TournamentModel& model, int i, int j, bool rational) {
  const OutcomePmf& pmf = model.pair_pmf(i, j);
  int m = pmf.max_points();
  Slot s;
  s.i = i;
  s.j = j;
  s.full_size = m + 1;
  std::vector<BigInt> nums;
  if (rational) {
    s.den = pmf_denominator(pmf);
    nums = scaled_numerators(pmf, s.den);
  }
  for (int u = 0; u <= m; ++u) {
    if (rational ? nums[u] == 0 : pmf.probs()[u] == 0.0) continue;
    s.outcomes.push_back({u, m - u, pmf.probs()[u], rational ? nums[u] : BigInt(1)});
  }
  return s;
}

Slot make_decoupled(const TournamentModel& model, int i, int j, bool rational) {
  const OutcomePmf& pmf = model.pair_pmf(i, j);
  int m = pmf.max_points();
  Slot s;
  s.i = i;
  s.j = j;
  s.full_size = static_cast<long>(m + 1) * (m + 1);
  std::vector<BigInt> nums;
  if (rational) {
    BigInt d = pmf_denominator(pmf);
    s.den = d * d;
    nums = scaled_numerators(pmf, d);
  }
  const auto& probs = pmf.probs();
  for (int u = 0; u <= m; ++u) {
    if (rational ? nums[u] == 0 : probs[u] == 0.0) continue;
    for (int v = 0; v <= m; ++v) {
      // P(Y_ij = u) = p_u, P(Y_ji = v) = p_{m-v}, independently
      if (rational ? nums[m - v] == 0 : probs[m - v] == 0.0) continue;
      s.outcomes.push_back(
          {u, v, probs[u] * probs[m - v], rational ? BigInt(nums[u] * nums[m - v]) : BigInt(1)});
    }
  }
  return s;
}

struct EnumProblem {
  std::vector<Slot> slots;
  std::vector<long> keff;
  int n = 0;
  bool rational = false;
};

struct EnumPartial {
  double value = 0;
  BigInt num = 0;
};

void enum_rest(const EnumProblem& pb, size_t t, std::vector<long>& scores, double prob,
               const BigInt& num, NeumaierSum& acc, BigInt& acc_num) {
  if (t == pb.slots.size()) {
    acc.add(prob);
    if (pb.rational) acc_num += num;
    return;
  }
  const Slot& s = pb.slots[t];
  for (const SlotOutcome& o : s.outcomes) {
    long si = scores[s.i] + o.di;
    if (si > pb.keff[s.i]) continue;
    long sj = scores[s.j] + o.dj;
    if (sj > pb.keff[s.j]) continue;
    scores[s.i] = si;
    scores[s.j] = sj;
    if (pb.rational) {
      BigInt next = num * o.num;
      enum_rest(pb, t + 1, scores, prob * o.prob, next, acc, acc_num);
    } else {
      enum_rest(pb, t + 1, scores, prob * o.prob, num, acc, acc_num);
    }
    scores[s.i] -= o.di;
    scores[s.j] -= o.dj;
  }
}

// Splits the outcome space over a fixed slot prefix; the chunk layout depends
// only on the problem, so any worker count folds to the same result.
EnumPartial enumerate_weighted(const EnumProblem& pb, int threads) {
  size_t prefix = 0;
  std::uint64_t chunks = 1;
  while (prefix < pb.slots.size() && chunks < 256) {
    chunks *= pb.slots[prefix].outcomes.size();
    ++prefix;
  }
  std::vector<NeumaierSum> sums(chunks);
  std::vector<BigInt> nums(pb.rational ? chunks : 0);
  parallel_chunks(chunks, effective_threads(threads), [&](std::uint64_t c) {
    std::vector<long> scores(pb.n, 0);
    double prob = 1;
    BigInt num = 1;
    std::uint64_t rem = c;
    for (size_t t = prefix; t-- > 0;) {
      const Slot& s = pb.slots[t];
      const SlotOutcome& o = s.outcomes[rem % s.outcomes.size()];
      rem /= s.outcomes.size();
      long si = scores[s.i] + o.di;
      long sj = scores[s.j] + o.dj;
      if (si > pb.keff[s.i] || sj > pb.keff[s.j]) return;
      scores[s.i] = si;
      scores[s.j] = sj;
      prob *= o.prob;
      if (pb.rational) num *= o.num;
    }
    NeumaierSum acc;
    BigInt acc_num = 0;
    enum_rest(pb, prefix, scores, prob, num, acc, acc_num);
    sums[c] = acc;
    if (pb.rational) nums[c] = acc_num;
  });
  EnumPartial out;
  NeumaierSum fold;
  for (std::uint64_t c = 0; c < chunks; ++c) fold.add(sums[c].value());
  out.value = fold.value();
  for (const BigInt& x : nums) out.num += x;
  return out;
}

BigInt coupled_space(const TournamentModel& model) {
  BigInt space = 1;
  int n = model.player_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) space *= model.pair_max_points(i, j) + 1;
  }
  return space;
}

struct MarginalProduct {
  double value = 1;
  Rat exact = 1;
};

MarginalProduct marginal_product(const TournamentModel& model,
                                 const std::vector<long>& keff, bool rational) {
  MarginalProduct out;
  int n = model.player_count();
  for (int i = 0; i < n; ++i) {
    long kk = std::min(keff[i], model.max_score(i));
    if (kk < 0) {
      out.value = 0;
      out.exact = 0;
      return out;
    }
    if (rational) {
      out.exact *= cdf_from_pmf(marginal_score_pmf_exact(model, i))[kk];
    } else {
      out.value *= cdf_from_pmf(marginal_score_pmf(model, i))[kk];
    }
  }
  if (rational) out.value = to_double(out.exact);
  return out;
}

// F with the first `decoupled` pairs (lexicographic order) made independent.
void enumerate_into(const TournamentModel& model, const std::vector<long>& keff,
                    int decoupled, const EnumerationOptions& opts, double& value,
                    Rat& exact) {
  bool rational = opts.mode == NumericMode::kRational;
  int n = model.player_count();
  EnumProblem pb;
  pb.n = n;
  pb.keff = keff;
  pb.rational = rational;
  int t = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++t) {
      pb.slots.push_back(t < decoupled ? make_decoupled(model, i, j, rational)
                                       : make_coupled(model, i, j, rational));
    }
  }
  if (std::any_of(keff.begin(), keff.end(), [](long v) { return v < 0; })) {
    value = 0;
    exact = 0;
    return;
  }
  EnumPartial part = enumerate_weighted(pb, opts.threads);
  if (rational) {
    BigInt den = 1;
    for (const Slot& s : pb.slots) den *= s.den;
    exact = Rat(part.num, den);
    value = to_double(exact);
  } else {
    value = part.value;
  }
}

std::vector<long> effective_thresholds(const std::vector<long>& k, bool strict) {
  std::vector<long> keff(k);
  if (strict) {
    for (long& v : keff) v -= 1;
  }
  return keff;
}

}  // namespace

JointCdfReport joint_cdf_enumerate(const TournamentModel& model,
                                   const std::vector<long>& k, bool strict,
                                   const EnumerationOptions& opts) {
  int n = model.player_count();
  if (static_cast<int>(k.size()) != n) {
    throw ValidationError("threshold vector length must equal player count");
  }
  bool rational = opts.mode == NumericMode::kRational;
  if (rational && !model.exact()) {
    throw ValidationError("rational mode requires exact probabilities");
  }
  check_budget(coupled_space(model), opts.budget);

  JointCdfReport rep;
  rep.k = k;
  rep.strict = strict;
  std::vector<long> keff = effective_thresholds(k, strict);

  MarginalProduct prod = marginal_product(model, keff, rational);
  rep.product = prod.value;

  double joint = 0;
  Rat joint_exact = 0;
  enumerate_into(model, keff, 0, opts, joint, joint_exact);
  rep.joint = joint;
  if (rational) {
    rep.joint_exact = joint_exact;
    rep.product_exact = prod.exact;
    rep.inequality_holds = joint_exact <= prod.exact;
  } else {
    rep.inequality_holds = rep.joint <= rep.product + kNlodTolerance;
  }
  return rep;
}

JointCdfReport decoupling_chain(const TournamentModel& model,
                                const std::vector<long>& k,
                                const EnumerationOptions& opts) {
  int n = model.player_count();
  if (static_cast<int>(k.size()) != n) {
    throw ValidationError("threshold vector length must equal player count");
  }
  bool rational = opts.mode == NumericMode::kRational;
  if (rational && !model.exact()) {
    throw ValidationError("rational mode requires exact probabilities");
  }
  BigInt space = coupled_space(model);
  check_budget(space * space, opts.budget);  // the fully decoupled step

  JointCdfReport rep;
  rep.k = k;
  std::vector<long> keff = effective_thresholds(k, false);

  MarginalProduct prod = marginal_product(model, keff, rational);
  rep.product = prod.value;
  if (rational) rep.product_exact = prod.exact;

  int pair_total = model.pair_count();
  for (int t = 0; t <= pair_total; ++t) {
    double value = 0;
    Rat exact = 0;
    enumerate_into(model, keff, t, opts, value, exact);
    rep.chain.push_back(value);
    if (rational) rep.chain_exact.push_back(exact);
  }
  rep.joint = rep.chain.front();
  if (rational) {
    rep.joint_exact = rep.chain_exact.front();
    rep.inequality_holds = *rep.joint_exact <= prod.exact;
  } else {
    rep.inequality_holds = rep.joint <= rep.product + kNlodTolerance;
  }
  return rep;
}

Assertion1Result assertion1_check(const TournamentModel& model, long k1, long k2,
                                  const EnumerationOptions& opts) {
  if (k1 < 0 || k2 < 0) throw ValidationError("thresholds k1, k2 must be >= 0");
  bool rational = opts.mode == NumericMode::kRational;
  if (rational && !model.exact()) {
    throw ValidationError("rational mode requires exact probabilities");
  }
  int n = model.player_count();
  BigInt space = coupled_space(model);
  int m01 = model.pair_max_points(0, 1);
  check_budget(space * (m01 + 1), opts.budget);  // F_1 costs one extra factor

  std::vector<long> keff(n);
  keff[0] = k1;
  keff[1] = k2;
  for (int i = 2; i < n; ++i) keff[i] = model.max_score(i);

  Assertion1Result res;
  double f0 = 0, f1 = 0;
  Rat f0x = 0, f1x = 0;
  enumerate_into(model, keff, 0, opts, f0, f0x);
  enumerate_into(model, keff, 1, opts, f1, f1x);
  res.lhs = f1 - f0;
  if (rational) res.lhs_exact = f1x - f0x;

  // R(g,h) = P(s'_1 = k1-g) P(s'_2 = k2-h): the residual scores live on
  // disjoint pair sets, so their joint law is the product of two convolutions.
  auto residual = [&](int player) {
    DensePmf<double> acc{1.0};
    for (int j = 2; j < n; ++j) acc = convolve(acc, model.oriented_pmf(player, j).values<double>());
    return acc;
  };
  auto residual_exact = [&](int player) {
    DensePmf<Rat> acc{Rat(1)};
    for (int j = 2; j < n; ++j) acc = convolve(acc, model.oriented_pmf(player, j).values<Rat>());
    return acc;
  };

  int g_hi = static_cast<int>(std::min<long>(k1, m01));
  int h_hi = static_cast<int>(std::min<long>(k2, m01));
  const OutcomePmf& pmf01 = model.pair_pmf(0, 1);
  if (rational) {
    auto s1p = residual_exact(0);
    auto s2p = residual_exact(1);
    auto wt = w_table_exact(pmf01, g_hi, h_hi);
    Rat rhs = 0;
    for (int g = 0; g <= g_hi; ++g) {
      long a = k1 - g;
      if (a < 0 || a >= static_cast<long>(s1p.size())) continue;
      for (int h = 0; h <= h_hi; ++h) {
        long b = k2 - h;
        if (b < 0 || b >= static_cast<long>(s2p.size())) continue;
        rhs += s1p[a] * s2p[b] * wt.w[g][h];
      }
    }
    res.rhs_exact = rhs;
    res.rhs = to_double(rhs);
    res.lhs = to_double(*res.lhs_exact);
  } else {
    auto s1p = residual(0);
    auto s2p = residual(1);
    auto wt = w_table(pmf01, g_hi, h_hi);
    NeumaierSum rhs;
    for (int g = 0; g <= g_hi; ++g) {
      long a = k1 - g;
      if (a < 0 || a >= static_cast<long>(s1p.size())) continue;
      for (int h = 0; h <= h_hi; ++h) {
        long b = k2 - h;
        if (b < 0 || b >= static_cast<long>(s2p.size())) continue;
        rhs.add(s1p[a] * s2p[b] * wt.w[g][h]);
      }
    }
    res.rhs = rhs.value();
  }
  return res;
}

double JointScoreTable::at(const std::vector<long>& scores) const {
  long long idx = 0;
  for (size_t i = 0; i < dims.size(); ++i) idx += scores[i] * strides[i];
  return probs[idx];
}

JointScoreTable build_joint_score_table(const TournamentModel& model,
                                        const EnumerationOptions& opts) {
  int n = model.player_count();
  JointScoreTable t;
  t.dims.resize(n);
  BigInt cells = 1;
  for (int i = 0; i < n; ++i) {
    t.dims[i] = model.max_score(i) + 1;
    cells *= t.dims[i];
  }
  check_budget(cells, opts.budget);
  long long total = cells.convert_to<long long>();
  t.strides.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) t.strides[i] = t.strides[i + 1] * t.dims[i + 1];
  t.probs.assign(total, 0.0);
  t.probs[0] = 1.0;
  std::vector<double> next(total);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const OutcomePmf& pmf = model.pair_pmf(i, j);
      int m = pmf.max_points();
      std::fill(next.begin(), next.end(), 0.0);
      for (long long idx = 0; idx < total; ++idx) {
        double pr = t.probs[idx];
        if (pr == 0.0) continue;
        for (int u = 0; u <= m; ++u) {
          double w = pmf.probs()[u];
          if (w == 0.0) continue;
          next[idx + u * t.strides[i] + (m - u) * t.strides[j]] += pr * w;
        }
      }
      t.probs.swap(next);
    }
  }
  return t;
}

void cumulative_in_place(JointScoreTable& table) {
  long long total = static_cast<long long>(table.probs.size());
  for (size_t a = 0; a < table.dims.size(); ++a) {
    long long stride = table.strides[a];
    long dim = table.dims[a];
    for (long long idx = 0; idx < total; ++idx) {
      if ((idx / stride) % dim > 0) table.probs[idx] += table.probs[idx - stride];
    }
  }
}

namespace {

struct ScanContext {
  JointScoreTable cdf;
  std::vector<std::vector<double>> marg;  // per-player CDF of s_i
};

ScanContext make_scan_context(const TournamentModel& model,
                              const EnumerationOptions& opts) {
  ScanContext ctx;
  ctx.cdf = build_joint_score_table(model, opts);
  cumulative_in_place(ctx.cdf);
  int n = model.player_count();
  ctx.marg.resize(n);
  for (int i = 0; i < n; ++i) ctx.marg[i] = cdf_from_pmf(marginal_score_pmf(model, i));
  return ctx;
}

// Weak-form F and marginal product at thresholds keff (entries may be < 0).
void evaluate_point(const ScanContext& ctx, const std::vector<long>& keff,
                    double& joint, double& product) {
  joint = 1;
  product = 1;
  long long idx = 0;
  for (size_t i = 0; i < keff.size(); ++i) {
    if (keff[i] < 0) {
      joint = 0;
      product = 0;
      return;
    }
    long kk = std::min(keff[i], ctx.cdf.dims[i] - 1);
    idx += kk * ctx.cdf.strides[i];
    product *= ctx.marg[i][kk];
  }
  joint = ctx.cdf.probs[idx];
}

void record(NlodScanResult& res, const std::vector<long>& k, double joint,
            double product, const ScanSink& sink) {
  double margin = product - joint;
  res.checked += 1;
  if (margin < -kNlodTolerance) res.violations += 1;
  if (res.checked == 1 || margin < res.worst_margin) {
    res.worst_margin = margin;
    res.worst_k = k;
    res.worst_joint = joint;
    res.worst_product = product;
  }
  if (sink) sink(k, joint, product);
}

}  // namespace

NlodScanResult nlod_scan_full_grid(const TournamentModel& model, bool strict,
                                   const EnumerationOptions& opts,
                                   const ScanSink& sink) {
  ScanContext ctx = make_scan_context(model, opts);
  int n = model.player_count();
  NlodScanResult res;
  std::vector<long> k(n, 0);
  for (;;) {
    std::vector<long> keff = effective_thresholds(k, strict);
    double joint = 0, product = 0;
    evaluate_point(ctx, keff, joint, product);
    record(res, k, joint, product, sink);
    int axis = n - 1;
    while (axis >= 0 && k[axis] + 1 == ctx.cdf.dims[axis]) k[axis--] = 0;
    if (axis < 0) break;
    k[axis] += 1;
  }
  return res;
}

NlodScanResult nlod_scan_random(const TournamentModel& model, long long count,
                                std::uint64_t seed, bool strict,
                                const EnumerationOptions& opts,
                                const ScanSink& sink) {
  if (count < 1) throw ValidationError("random scan needs count >= 1");
  ScanContext ctx = make_scan_context(model, opts);
  int n = model.player_count();
  NlodScanResult res;
  SplitMix64 rng(seed);
  std::vector<long> k(n);
  for (long long trial = 0; trial < count; ++trial) {
    for (int i = 0; i < n; ++i) {
      long span = ctx.cdf.dims[i] + 1;  // thresholds -1..max
      long v = static_cast<long>(rng.next_unit() * span) - 1;
      k[i] = std::clamp(v, -1L, ctx.cdf.dims[i] - 1);
    }
    std::vector<long> keff = effective_thresholds(k, strict);
    double joint = 0, product = 0;
    evaluate_point(ctx, keff, joint, product);
    record(res, k, joint, product, sink);
  }
  return res;
}

SubsetCheckResult subset_score_bound_check(const std::vector<long>& scores,
                                           const TournamentModel& model,
                                           int exhaustive_cap) {
  int n = model.player_count();
  if (static_cast<int>(scores.size()) != n) {
    throw ValidationError("score vector length must equal player count");
  }
  SubsetCheckResult res;
  long long total = 0;
  for (long s : scores) total += s;
  if (total != model.total_points()) {
    res.ok = false;
    res.score_sum = total;
    res.required = model.total_points();
    res.message = "total score " + std::to_string(total) + " != " +
                  std::to_string(res.required);
    return res;
  }

  auto fail = [&](std::vector<int> subset, long long ssum, long long need) {
    res.ok = false;
    res.subset = std::move(subset);
    res.score_sum = ssum;
    res.required = need;
    std::string who;
    for (int p : res.subset) who += (who.empty() ? "" : ",") + std::to_string(p + 1);
    res.message = "players {" + who + "}: score sum " + std::to_string(ssum) +
                  " below internal points " + std::to_string(need);
  };

  if (n <= exhaustive_cap && n <= 20) {
    unsigned full = 1u << n;
    std::vector<long long> within(full, 0), ssum(full, 0);
    for (unsigned mask = 1; mask < full; ++mask) {
      int low = std::countr_zero(mask);
      unsigned rest = mask & (mask - 1);
      long long w = within[rest];
      for (unsigned r = rest; r != 0; r &= r - 1) {
        w += model.pair_max_points(low, std::countr_zero(r));
      }
      within[mask] = w;
      ssum[mask] = ssum[rest] + scores[low];
      if (ssum[mask] < w) {
        std::vector<int> subset;
        for (unsigned r = mask; r != 0; r &= r - 1) subset.push_back(std::countr_zero(r));
        fail(std::move(subset), ssum[mask], w);
        return res;
      }
    }
  } else {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return scores[a] != scores[b] ? scores[a] < scores[b] : a < b;
    });
    long long ssum = 0, within = 0;
    for (int t = 0; t < n; ++t) {
      for (int q = 0; q < t; ++q) within += model.pair_max_points(order[t], order[q]);
      ssum += scores[order[t]];
      if (ssum < within) {
        fail(std::vector<int>(order.begin(), order.begin() + t + 1), ssum, within);
        return res;
      }
    }
  }
  return res;
}

}  // namespace rrscore
