#pragma once

#include <vector>

#include "rrscore/pmf.hpp"
#include "rrscore/rational.hpp"

namespace rrscore {

// One pair's decoupling data: the signed difference table
//   p(u,v) = P(Y=u)P(Y'=v) - P(X=u, X'=v),
// its prefix sums Q_u, and (after w_table) the partial sums W(g,h).
template <typename S>
struct DecouplingTable {
  int m = 0;
  std::vector<std::vector<S>> p;  // (m+1) x (m+1)
  std::vector<S> q;               // Q_u = p_0 + ... + p_u
  std::vector<std::vector<S>> w;  // (k1+1) x (k2+1), filled by w_table
};

DecouplingTable<double> p_uv_table(const OutcomePmf& pmf);
DecouplingTable<Rat> p_uv_table_exact(const OutcomePmf& pmf);

// W(g,h) for 0 <= g <= k1, 0 <= h <= k2 by direct summation of p(u,v).
DecouplingTable<double> w_table(const OutcomePmf& pmf, int k1, int k2);
DecouplingTable<Rat> w_table_exact(const OutcomePmf& pmf, int k1, int k2);

// Case analysis: Q_g(1-Q_{m-h-1}) when g+h < m, Q_{m-h-1}(1-Q_g) when
// g+h >= m (g,h <= m), 0 once g or h passes m.
double w_closed_form(const OutcomePmf& pmf, int g, int h);
Rat w_closed_form_exact(const OutcomePmf& pmf, int g, int h);

}  // namespace rrscore
