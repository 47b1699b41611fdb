#include "hetnet/two_band.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hetnet/scga.hpp"

namespace hetnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<int> pair_users(const Association& assoc, int bs1, int bs2) {
  std::vector<int> users;
  for (int n = 0; n < assoc.num_users(); ++n) {
    const int b = assoc.serving_bs(n);
    if (b == bs1 || b == bs2) users.push_back(n);
  }
  return users;
}

double pair_nash_of(const Radio& radio, const Association& assoc, int bs1,
                    int bs2) {
  return radio.bs_utility(assoc, bs1) * radio.bs_utility(assoc, bs2);
}

bool pair_feasible(const Radio& radio, const Association& assoc, int bs1,
                   int bs2) {
  return assoc.load(bs1) >= 1 && assoc.load(bs2) >= 1 &&
         radio.bs_utility(assoc, bs1) >= 0 &&
         radio.bs_utility(assoc, bs2) >= 0;
}

// SINR-greedy restart for a degenerate starting point: both BSs capped at
// ceil(N_pair/2), noise loads evaluated at the cap.
Association reinit_pair(const Radio& radio, const Association& base, int bs1,
                        int bs2, const std::vector<int>& users) {
  const int np = static_cast<int>(users.size());
  const int cap = (np + 1) / 2;
  Eigen::MatrixXd scores(2, np);
  for (int k = 0; k < np; ++k) {
    scores(0, k) = radio.sinr(bs1, users[k], cap);
    scores(1, k) = radio.sinr(bs2, users[k], cap);
  }
  const Association sub =
      greedy_assign(scores, Eigen::Vector2i::Constant(cap));
  Association out = base;
  for (int k = 0; k < np; ++k)
    out.assign(users[k], sub.serving_bs(k) == 0 ? bs1 : bs2);
  return out;
}

// Ordering used when F is undefined (some utility nonpositive): raw
// marginal preference u1n - u2n at the current loads.
std::vector<int> sort_by_utility_gap(const Radio& radio,
                                     const Association& assoc, int bs1,
                                     int bs2, const std::vector<int>& users) {
  const int l1 = assoc.load(bs1);
  const int l2 = assoc.load(bs2);
  std::vector<FScore> keyed;
  keyed.reserve(users.size());
  for (int n : users)
    keyed.push_back(
        {n, radio.utility(bs1, n, l1) - radio.utility(bs2, n, l2)});
  return sort_by_f(std::move(keyed));
}

}  // namespace

double f_value(double q1, double q2, int load1, int load2, double r_min_bps,
               double u1n, double u2n) {
  if (load1 < 1 || load2 < 1)
    throw std::domain_error("f_value: loads must be >= 1");
  const double slope = q1 * u1n - q2 * u2n;
  const double intercept = q2 * r_min_bps / load2 - q1 * r_min_bps / load1;
  return slope + intercept;
}

std::vector<FScore> f_scores(const Radio& radio, const Association& assoc,
                             int bs1, int bs2) {
  const int l1 = assoc.load(bs1);
  const int l2 = assoc.load(bs2);
  if (l1 < 1 || l2 < 1)
    throw std::domain_error("f_scores: both BSs must serve at least one user");
  const double u1 = radio.bs_utility(assoc, bs1);
  const double u2 = radio.bs_utility(assoc, bs2);
  if (!(u1 > 0) || !(u2 > 0))
    throw std::domain_error("f_scores: both utilities must be positive");
  const double q1 = 1.0 / u1;
  const double q2 = 1.0 / u2;
  const double r_min = radio.params().r_min_bps;

  std::vector<FScore> scores;
  for (int n : pair_users(assoc, bs1, bs2))
    scores.push_back({n, f_value(q1, q2, l1, l2, r_min,
                                 radio.utility(bs1, n, l1),
                                 radio.utility(bs2, n, l2))});
  return scores;
}

std::vector<int> sort_by_f(std::vector<FScore> scores) {
  std::sort(scores.begin(), scores.end(), [](const FScore& a, const FScore& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.user < b.user;
  });
  std::vector<int> order;
  order.reserve(scores.size());
  for (const FScore& s : scores) order.push_back(s.user);
  return order;
}

std::optional<SplitResult> two_band_partition_step(
    const Radio& radio, const std::vector<int>& ordered_users, int bs1,
    int bs2, const Association& base) {
  const int np = static_cast<int>(ordered_users.size());
  if (np < 2)
    throw std::invalid_argument(
        "two_band_partition_step: need at least two users to split");

  // Walk m upward with a single working association; candidate m has the
  // first m ordered users on bs1 and the rest on bs2.
  Association work = base;
  for (int n : ordered_users) work.assign(n, bs2);

  int best_m = -1;
  double best_product = kNegInf;
  for (int m = 1; m <= np - 1; ++m) {
    work.assign(ordered_users[m - 1], bs1);
    const double u1 = radio.bs_utility(work, bs1);
    const double u2 = radio.bs_utility(work, bs2);
    if (u1 < 0 || u2 < 0) continue;  // infeasible split, scored -inf
    const double product = u1 * u2;
    if (product > best_product) {
      best_product = product;
      best_m = m;
    }
  }
  if (best_m < 0) return std::nullopt;

  SplitResult result{best_m, best_product, base};
  for (int k = 0; k < np; ++k)
    result.assoc.assign(ordered_users[k], k < best_m ? bs1 : bs2);
  return result;
}

TwoBandReport two_band_nbs(const Radio& radio, const Association& initial,
                           int bs1, int bs2) {
  if (bs1 == bs2) throw std::invalid_argument("two_band_nbs: bs1 == bs2");
  const std::vector<int> users = pair_users(initial, bs1, bs2);
  const int np = static_cast<int>(users.size());

  TwoBandReport report{initial, 0.0, {}, 0, false, false};
  if (np < 2) {
    // Nothing to bargain over; with fewer than two users one side of the
    // pair is necessarily empty.
    report.pair_nash = pair_nash_of(radio, initial, bs1, bs2);
    report.feasible = pair_feasible(radio, initial, bs1, bs2);
    return report;
  }

  Association current = initial;
  if (current.load(bs1) == 0 || current.load(bs2) == 0 ||
      !(radio.bs_utility(current, bs1) > 0) ||
      !(radio.bs_utility(current, bs2) > 0)) {
    current = reinit_pair(radio, initial, bs1, bs2, users);
  }

  Association best = current;
  // U_max(0): the starting point's own Nash product, so that an
  // unimprovable initialization is returned unchanged.
  double best_nash =
      pair_feasible(radio, current, bs1, bs2)
          ? pair_nash_of(radio, current, bs1, bs2)
          : kNegInf;

  const int max_rounds = 10 * np;
  bool capped = true;
  for (int round = 0; round < max_rounds; ++round) {
    ++report.iterations;
    const bool f_defined = radio.bs_utility(current, bs1) > 0 &&
                           radio.bs_utility(current, bs2) > 0;
    const std::vector<int> order =
        f_defined ? sort_by_f(f_scores(radio, current, bs1, bs2))
                  : sort_by_utility_gap(radio, current, bs1, bs2, users);
    const auto step = two_band_partition_step(radio, order, bs1, bs2, current);
    if (!step || step->pair_nash <= best_nash) {
      capped = false;  // converged: keep the best seen
      break;
    }
    best = step->assoc;
    best_nash = step->pair_nash;
    report.umax_history.push_back(best_nash);
    current = step->assoc;
  }

  report.assoc = best;
  report.capped = capped;
  report.pair_nash = pair_nash_of(radio, best, bs1, bs2);
  report.feasible = pair_feasible(radio, best, bs1, bs2);
  return report;
}

}  // namespace hetnet
