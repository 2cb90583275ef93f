#include <cmath>

#include "doctest.h"
#include "rrscore/errors.hpp"
#include "rrscore/exact.hpp"
#include "rrscore/model_json.hpp"
#include "rrscore/score_pmf.hpp"

using namespace rrscore;

namespace {

EnumerationOptions rational_opts() {
  EnumerationOptions opts;
  opts.mode = NumericMode::kRational;
  return opts;
}

}  // namespace

TEST_CASE("marginal score PMF: chess with three players") {
  auto model = make_chess_model(3, Rat(1, 2));
  auto pmf = marginal_score_pmf_exact(model, 0);
  CHECK(pmf == std::vector<Rat>{Rat(1, 16), Rat(1, 4), Rat(3, 8), Rat(1, 4), Rat(1, 16)});
  auto approx = marginal_score_pmf(model, 0);
  for (size_t k = 0; k < pmf.size(); ++k) {
    CHECK(std::abs(approx[k] - to_double(pmf[k])) <= 1e-15);
  }
  auto cdf = cdf_from_pmf(pmf);
  CHECK(cdf.back() == Rat(1));
  CHECK(cdf[1] == Rat(5, 16));
}

TEST_CASE("joint CDF by literal enumeration: fair binary n = 3") {
  auto model = make_binary_model(3);
  auto rep = joint_cdf_enumerate(model, {1, 1, 1}, false, rational_opts());
  CHECK(*rep.joint_exact == Rat(1, 4));     // no 2-0-1 score; excluded are the two sweeps
  CHECK(*rep.product_exact == Rat(27, 64)); // (3/4)^3
  CHECK(rep.inequality_holds);
  CHECK(rep.joint == to_double(Rat(1, 4)));

  auto strict = joint_cdf_enumerate(model, {2, 2, 2}, true, rational_opts());
  CHECK(*strict.joint_exact == *rep.joint_exact);  // strict(k) = weak(k-1)
  CHECK(*strict.product_exact == *rep.product_exact);

  auto zero = joint_cdf_enumerate(model, {-1, 2, 2}, false, rational_opts());
  CHECK(*zero.joint_exact == Rat(0));
  CHECK(*zero.product_exact == Rat(0));
}

TEST_CASE("joint CDF at the top of the lattice is one") {
  auto model = make_uniform_model(3, 2);
  auto rep = joint_cdf_enumerate(model, {4, 4, 4}, false, rational_opts());
  CHECK(*rep.joint_exact == Rat(1));
  CHECK(*rep.product_exact == Rat(1));
}

TEST_CASE("decoupling chain: fair binary n = 3 at k = (1,1,1)") {
  auto model = make_binary_model(3);
  auto rep = decoupling_chain(model, {1, 1, 1}, rational_opts());
  REQUIRE(rep.chain_exact.size() == 4);
  CHECK(rep.chain_exact[0] == Rat(1, 4));
  CHECK(rep.chain_exact[1] == Rat(5, 16));
  CHECK(rep.chain_exact[2] == Rat(3, 8));
  CHECK(rep.chain_exact[3] == Rat(27, 64));
  CHECK(rep.chain_exact.back() == *rep.product_exact);
  for (size_t t = 0; t + 1 < rep.chain_exact.size(); ++t) {
    CHECK(rep.chain_exact[t] <= rep.chain_exact[t + 1]);
  }
}

TEST_CASE("assertion identity: F_1 - F matches the R x W sum") {
  auto model = make_binary_model(3);
  auto res = assertion1_check(model, 1, 1, rational_opts());
  CHECK(*res.lhs_exact == Rat(1, 16));
  CHECK(*res.rhs_exact == Rat(1, 16));

  auto chess = make_chess_model(4, Rat(1, 2));
  for (long k1 : {0L, 1L, 2L, 3L}) {
    for (long k2 : {0L, 2L, 5L}) {
      auto r = assertion1_check(chess, k1, k2, rational_opts());
      CHECK(*r.lhs_exact == *r.rhs_exact);
      auto d = assertion1_check(chess, k1, k2, {});
      CHECK(std::abs(d.lhs - d.rhs) <= 1e-12);
    }
  }

  // two players: the residual scores collapse to zero and R is a point mass
  auto pair_model = make_uniform_model(2, 3);
  auto two = assertion1_check(pair_model, 2, 1, rational_opts());
  CHECK(*two.lhs_exact == *two.rhs_exact);
  CHECK_THROWS_AS(assertion1_check(pair_model, -1, 0, rational_opts()), ValidationError);
}

TEST_CASE("joint score table agrees with literal enumeration") {
  auto docs = {
      make_chess_model(4, Rat(1, 3)),
      make_uniform_model(4, 2),
      make_circular_model(5, 1, {Rat(1, 3), Rat(2, 3)}),
      make_three_class_model(1, 1, 2, Rat(2, 3), Rat(1, 3)),
  };
  for (const auto& model : docs) {
    int n = model.player_count();
    JointScoreTable table = build_joint_score_table(model);
    double mass = 0;
    for (double p : table.probs) mass += p;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    cumulative_in_place(table);

    std::vector<long> k(n);
    // a handful of interior points, every corner handled by the scan tests
    for (long probe = 0; probe < 8; ++probe) {
      for (int i = 0; i < n; ++i) k[i] = (probe + i) % (model.max_score(i) + 1);
      auto rep = joint_cdf_enumerate(model, k, false, rational_opts());
      CHECK(std::abs(table.at(k) - rep.joint) <= 1e-12);
    }
  }
}

TEST_CASE("full-grid scan finds no violation on a fair binary tournament") {
  auto model = make_binary_model(4);
  long long points = 0;
  ScanSink sink = [&](const std::vector<long>&, double joint, double product) {
    ++points;
    CHECK(joint <= product + kNlodTolerance);
  };
  auto res = nlod_scan_full_grid(model, false, {}, sink);
  CHECK(res.checked == 4L * 4 * 4 * 4);
  CHECK(res.checked == points);
  CHECK(res.violations == 0);
  CHECK(res.worst_margin >= -kNlodTolerance);

  auto strict = nlod_scan_full_grid(model, true, {});
  CHECK(strict.violations == 0);
}

TEST_CASE("random scan is reproducible and respects the seed") {
  auto model = make_chess_model(4, Rat(1, 2));
  auto a = nlod_scan_random(model, 500, 99, false, {});
  auto b = nlod_scan_random(model, 500, 99, false, {});
  CHECK(a.checked == 500);
  CHECK(a.violations == 0);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_k == b.worst_k);
  auto c = nlod_scan_random(model, 500, 100, false, {});
  CHECK((c.worst_k != a.worst_k || c.worst_margin != a.worst_margin));
  CHECK_THROWS_AS(nlod_scan_random(model, 0, 1, false, {}), ValidationError);
}

TEST_CASE("budget guard reports the required weight count") {
  auto model = make_uniform_model(5, 4);  // 5^10 outcomes
  EnumerationOptions opts;
  opts.budget = 1000;
  try {
    joint_cdf_enumerate(model, {20, 20, 20, 20, 20}, false, opts);
    FAIL("budget was not enforced");
  } catch (const BudgetError& e) {
    CHECK(e.required == 9765625);
    CHECK(e.budget == 1000);
  }
}

TEST_CASE("rational mode requires exact inputs") {
  auto geo = make_geometric_model(3);
  CHECK_THROWS_AS(joint_cdf_enumerate(geo, {8, 8, 8}, false, rational_opts()),
                  ValidationError);
  auto rep = joint_cdf_enumerate(geo, {8, 8, 8}, false, {});
  CHECK(rep.joint == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rep.joint_exact.has_value());
}

TEST_CASE("subset score bounds accept tournament outcomes and reject fakes") {
  auto model = make_binary_model(4);
  // legal outcome: a 3-cycle among {1,2,3} and player 4 loses out
  CHECK(subset_score_bound_check({2, 2, 2, 0}, model).ok);
  CHECK(subset_score_bound_check({3, 2, 1, 0}, model).ok);

  auto wrong_total = subset_score_bound_check({3, 3, 3, 3}, model);
  CHECK_FALSE(wrong_total.ok);
  CHECK(wrong_total.message.find("total") != std::string::npos);

  // right total, but two players both nearly sweep: their pair is counted twice
  auto fake = subset_score_bound_check({0, 0, 3, 3}, model);
  CHECK_FALSE(fake.ok);
  CHECK(fake.score_sum == 0);
  CHECK(fake.required == 1);
  CHECK(fake.message.find("players") != std::string::npos);

  // the sorted-prefix route must agree with the exhaustive one
  auto prefix = subset_score_bound_check({0, 0, 3, 3}, model, 0);
  CHECK_FALSE(prefix.ok);
  CHECK(subset_score_bound_check({2, 2, 2, 0}, model, 0).ok);

  CHECK_THROWS_AS(subset_score_bound_check({1, 1}, model), ValidationError);
}
