#include "rrscore/decoupling.hpp"

#include "rrscore/errors.hpp"
#include "rrscore/numeric.hpp"

namespace rrscore {

namespace {

template <typename S>
DecouplingTable<S> base_table(const OutcomePmf& pmf) {
  auto probs = pmf.values<S>();
  int m = pmf.max_points();
  DecouplingTable<S> t;
  t.m = m;
  t.q.resize(m + 1);
  Accumulator<S> run;
  for (int u = 0; u <= m; ++u) {
    run.add(probs[u]);
    t.q[u] = run.value();
  }
  t.p.assign(m + 1, std::vector<S>(m + 1));
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= m; ++v) {
      t.p[u][v] = probs[u] * probs[m - v];
      if (u + v == m) t.p[u][v] -= probs[u];
    }
  }
  return t;
}

template <typename S>
void fill_w(DecouplingTable<S>& t, int k1, int k2) {
  if (k1 < 0 || k2 < 0) throw ValidationError("W table needs k1, k2 >= 0");
  t.w.assign(k1 + 1, std::vector<S>(k2 + 1));
  for (int g = 0; g <= k1; ++g) {
    for (int h = 0; h <= k2; ++h) {
      Accumulator<S> sum;
      for (int u = 0; u <= std::min(t.m, g); ++u) {
        for (int v = 0; v <= std::min(t.m, h); ++v) sum.add(t.p[u][v]);
      }
      t.w[g][h] = sum.value();
    }
  }
}

template <typename S>
S closed_form(const OutcomePmf& pmf, int g, int h) {
  if (g < 0 || h < 0) throw ValidationError("W closed form needs g, h >= 0");
  int m = pmf.max_points();
  if (g > m || h > m) return S(0);
  DecouplingTable<S> t = base_table<S>(pmf);
  auto q = [&](int u) { return u < 0 ? S(0) : t.q[u]; };
  if (g + h < m) return q(g) * (S(1) - q(m - h - 1));
  return q(m - h - 1) * (S(1) - q(g));
}

}  // namespace

DecouplingTable<double> p_uv_table(const OutcomePmf& pmf) {
  return base_table<double>(pmf);
}

DecouplingTable<Rat> p_uv_table_exact(const OutcomePmf& pmf) {
  return base_table<Rat>(pmf);
}

DecouplingTable<double> w_table(const OutcomePmf& pmf, int k1, int k2) {
  auto t = base_table<double>(pmf);
  fill_w(t, k1, k2);
  return t;
}

DecouplingTable<Rat> w_table_exact(const OutcomePmf& pmf, int k1, int k2) {
  auto t = base_table<Rat>(pmf);
  fill_w(t, k1, k2);
  return t;
}

double w_closed_form(const OutcomePmf& pmf, int g, int h) {
  return closed_form<double>(pmf, g, h);
}

Rat w_closed_form_exact(const OutcomePmf& pmf, int g, int h) {
  return closed_form<Rat>(pmf, g, h);
}

}  // namespace rrscore
