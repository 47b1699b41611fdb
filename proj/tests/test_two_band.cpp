#include <doctest.h>

#include <cmath>

#include "hetnet/scga.hpp"
#include "hetnet/two_band.hpp"
#include "test_support.hpp"

using namespace hetnet;

namespace {

// Two equal-power BSs at (+/-d, 0) with deterministic pure path-loss gains
// (no fading), users placed explicitly. Mirror-symmetric inputs give
// mirror-symmetric games.
Radio symmetric_radio(const std::vector<std::pair<double, double>>& users,
                      double bs_distance = 60.0) {
  Topology topo;
  topo.bs_positions.resize(2, 2);
  topo.bs_positions << -bs_distance, bs_distance, 0.0, 0.0;
  topo.user_positions.resize(2, static_cast<Eigen::Index>(users.size()));
  for (std::size_t i = 0; i < users.size(); ++i)
    topo.user_positions.col(static_cast<Eigen::Index>(i)) << users[i].first,
        users[i].second;
  const Eigen::MatrixXd gains =
      topo.distances().cwiseMax(1.0).array().pow(-3.5);
  RadioParams params{Eigen::VectorXd::Ones(2), 1e7, 1.99526231497e-16, 1e5};
  return Radio(params, gains);
}

Association balanced_init(const Radio& radio) {
  return initialize(radio, LoadCaps::make(1.0, radio.num_users(), 2));
}

}  // namespace

TEST_CASE("f_value slope and intercept") {
  // Full symmetry: equal utilities, equal weights, equal loads -> 0.
  CHECK(f_value(0.5, 0.5, 4, 4, 1e5, 2.0, 2.0) == doctest::Approx(0.0));
  // Equal weights and loads kill the intercept; the utility gap remains.
  CHECK(f_value(1.0, 1.0, 3, 3, 1e5, 2.0, 1.0) == doctest::Approx(1.0));
  // Pure intercept.
  CHECK(f_value(2.0, 1.0, 5, 4, 100.0, 0.0, 0.0) ==
        doctest::Approx(1.0 * 100.0 / 4 - 2.0 * 100.0 / 5));
  CHECK_THROWS_AS(f_value(1.0, 1.0, 0, 1, 1e5, 0.0, 0.0), std::domain_error);
}

TEST_CASE("f_scores match a direct closed-form transcription at 1e-12") {
  const Radio radio = testsupport::table1_radio(8, 2, 101);
  const Association assoc = balanced_init(radio);

  const double u1 = testsupport::naive_bs_utility(radio, assoc, 0);
  const double u2 = testsupport::naive_bs_utility(radio, assoc, 1);
  REQUIRE(u1 > 0);
  REQUIRE(u2 > 0);
  const int l1 = assoc.load(0);
  const int l2 = assoc.load(1);
  const double r_min = radio.params().r_min_bps;

  const auto scores = f_scores(radio, assoc, 0, 1);
  REQUIRE(scores.size() == 8);
  for (const FScore& score : scores) {
    const double u1n = std::log(testsupport::naive_rate(radio, 0, score.user, l1) / r_min);
    const double u2n = std::log(testsupport::naive_rate(radio, 1, score.user, l2) / r_min);
    const double expected = (u1n / u1 - u2n / u2) +
                            (r_min / u2 / l2 - r_min / u1 / l1);
    CHECK(score.value ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("fully symmetric pair gives all-zero F scores") {
  // Users on the y axis are equidistant from both BSs (u1n = u2n), and the
  // two mirrored user sets give the BSs identical utilities and loads, so
  // every F score vanishes.
  const Radio radio = symmetric_radio(
      {{0.0, 10.0}, {0.0, 20.0}, {0.0, -10.0}, {0.0, -20.0}});
  Association assoc(2, 4);
  assoc.assign(0, 0);
  assoc.assign(1, 0);
  assoc.assign(2, 1);
  assoc.assign(3, 1);
  for (const FScore& score : f_scores(radio, assoc, 0, 1))
    CHECK(score.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sort_by_f is descending with ascending-index ties") {
  std::vector<FScore> scores = {{0, 1.0}, {1, 3.0}, {2, 1.0}, {3, -2.0}};
  const std::vector<int> order = sort_by_f(std::move(scores));
  CHECK(order == std::vector<int>{1, 0, 2, 3});
}

TEST_CASE("partition step with two users considers only m = 1") {
  const Radio radio = testsupport::table1_radio(2, 2, 7);
  Association assoc(2, 2);
  assoc.assign(0, 0);
  assoc.assign(1, 1);
  const auto step = two_band_partition_step(radio, {0, 1}, 0, 1, assoc);
  REQUIRE(step.has_value());
  CHECK(step->split == 1);
  CHECK(step->assoc.serving_bs(0) == 0);
  CHECK(step->assoc.serving_bs(1) == 1);
}

TEST_CASE("partition step equals an independent re-scan of all splits") {
  const Radio radio = testsupport::table1_radio(8, 2, 71);
  const Association init = balanced_init(radio);
  const std::vector<int> order = sort_by_f(f_scores(radio, init, 0, 1));

  const auto step = two_band_partition_step(radio, order, 0, 1, init);
  REQUIRE(step.has_value());

  double best = -1e300;
  for (int m = 1; m <= 7; ++m) {
    Association candidate = init;
    for (int k = 0; k < 8; ++k) candidate.assign(order[k], k < m ? 0 : 1);
    const double u1 = testsupport::naive_bs_utility(radio, candidate, 0);
    const double u2 = testsupport::naive_bs_utility(radio, candidate, 1);
    if (u1 < 0 || u2 < 0) continue;
    best = std::max(best, u1 * u2);
  }
  CHECK(step->pair_nash == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("mirror-symmetric instances have symmetric split values") {
  // Mirror pairs around the y axis: user k at (x, y) pairs with user
  // N-1-k at (-x, y).
  const Radio radio = symmetric_radio({{-40.0, 5.0},
                                       {-25.0, -10.0},
                                       {-10.0, 20.0},
                                       {10.0, 20.0},
                                       {25.0, -10.0},
                                       {40.0, 5.0}});
  Association assoc(2, 6);
  for (int n = 0; n < 3; ++n) assoc.assign(n, 0);
  for (int n = 3; n < 6; ++n) assoc.assign(n, 1);

  // Users sorted by F: BS 0 is at -d, so the mirror of sorted rank k is
  // rank N-1-k. U(m) must equal U(N-m).
  const std::vector<int> order = sort_by_f(f_scores(radio, assoc, 0, 1));
  auto split_value = [&](int m) {
    Association candidate = assoc;
    for (int k = 0; k < 6; ++k) candidate.assign(order[k], k < m ? 0 : 1);
    return radio.bs_utility(candidate, 0) * radio.bs_utility(candidate, 1);
  };
  for (int m = 1; m <= 5; ++m)
    CHECK(split_value(m) == doctest::Approx(split_value(6 - m)).epsilon(1e-10));
}

TEST_CASE("a fixed point converges in one round and returns the input") {
  // One user close to each BS; the balanced split is unimprovable.
  const Radio radio = symmetric_radio({{-55.0, 3.0}, {57.0, -2.0}});
  Association assoc(2, 2);
  assoc.assign(0, 0);
  assoc.assign(1, 1);

  const TwoBandReport report = two_band_nbs(radio, assoc, 0, 1);
  CHECK(report.iterations == 1);
  CHECK(report.umax_history.empty());
  CHECK(report.assoc == assoc);
  CHECK(report.feasible);
}

TEST_CASE("two-band never ends below its starting point and tracks a rising U_max") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Radio radio = testsupport::table1_radio(10, 2, seed);
    const Association init = balanced_init(radio);
    const double init_nash =
        radio.bs_utility(init, 0) * radio.bs_utility(init, 1);

    const TwoBandReport report = two_band_nbs(radio, init, 0, 1);
    CHECK_FALSE(report.capped);
    CHECK(report.pair_nash >= init_nash - std::abs(init_nash) * 1e-12);
    for (std::size_t i = 1; i < report.umax_history.size(); ++i)
      CHECK(report.umax_history[i] > report.umax_history[i - 1]);
    if (!report.umax_history.empty())
      CHECK(report.umax_history.front() > init_nash);
  }
}

TEST_CASE("degenerate starting points are re-initialized before bargaining") {
  const Radio radio = testsupport::table1_radio(8, 2, 77);
  Association lopsided(2, 8);
  for (int n = 0; n < 8; ++n) lopsided.assign(n, 0);  // BS 1 empty

  const TwoBandReport report = two_band_nbs(radio, lopsided, 0, 1);
  CHECK(report.feasible);
  CHECK(report.assoc.load(0) >= 1);
  CHECK(report.assoc.load(1) >= 1);
  CHECK(report.assoc.loads().sum() == 8);
}

TEST_CASE("pair users outside the coalition are never touched") {
  const Radio radio = testsupport::table1_radio(9, 3, 13);
  Association assoc(3, 9);
  for (int n = 0; n < 9; ++n) assoc.assign(n, n % 3);
  const std::vector<int> before = assoc.users_of(2);

  const TwoBandReport report = two_band_nbs(radio, assoc, 0, 1);
  CHECK(report.assoc.users_of(2) == before);
  CHECK(report.assoc.loads().sum() == 9);
  for (int n : report.assoc.users_of(0)) CHECK(assoc.serving_bs(n) != 2);
}
