#pragma once

#include <optional>
#include <vector>

#include "hetnet/bargain.hpp"

namespace hetnet {

// Marginal-benefit score of one user in a two-player game:
//   value = Q1*u1n - Q2*u2n + Q2*r_min/L2 - Q1*r_min/L1,  Q_b = 1/U_b.
// Positive leans toward the first BS of the pair, negative toward the
// second; the intercept is shared by every user so only the ordering of
// the scores drives the partition search.
struct FScore {
  int user = -1;
  double value = 0.0;
};

double f_value(double q1, double q2, int load1, int load2, double r_min_bps,
               double u1n, double u2n);

// Scores every user currently served by either BS of the pair, with Q_b and
// L_b frozen at the given association; u_bn is the hypothetical utility of
// the user under BS b at that frozen load. Requires both loads >= 1 and
// both utilities > 0 (throws std::domain_error otherwise).
std::vector<FScore> f_scores(const Radio& radio, const Association& assoc,
                             int bs1, int bs2);

// Sorted view of the pair's users: F descending, ties by ascending index.
std::vector<int> sort_by_f(std::vector<FScore> scores);

struct SplitResult {
  int split = 0;           // m: the first m ordered users go to bs1
  double pair_nash = 0.0;  // U1 * U2 at the split's own loads
  Association assoc;       // full association with the pair reassigned
};

// Scans the contiguous splits m = 1..N_pair-1 of the given user order,
// recomputing both BSs' loads, rates and utilities per candidate, and
// returns the feasible split (U1 >= 0 and U2 >= 0) with the largest pair
// Nash product; ties go to the smallest m. Empty when every split is
// infeasible.
std::optional<SplitResult> two_band_partition_step(
    const Radio& radio, const std::vector<int>& ordered_users, int bs1,
    int bs2, const Association& base);

struct TwoBandReport {
  Association assoc;                 // best association seen
  double pair_nash = 0.0;            // U1 * U2 of assoc
  std::vector<double> umax_history;  // accepted U_max values, strictly increasing
  int iterations = 0;                // sort+scan rounds executed
  bool capped = false;               // defensive iteration bound was hit
  bool feasible = false;             // pair feasibility of assoc
};

// Iterated two-band partition bargaining between bs1 and bs2 over the users
// the initial association places on either of them. Each round freezes
// Q/L at the current association, sorts by F, takes the best contiguous
// split, and stops as soon as a round fails to improve; the best seen
// association is returned, so the result is never worse than the (possibly
// re-initialized) starting point. Users outside the pair are not touched.
//
// A starting point with an empty BS or a nonpositive utility is first
// re-initialized by SINR-greedy assignment with balanced caps
// ceil(N_pair/2); if utilities still fail to be positive, rounds order
// users by the raw utility difference u1n - u2n until a feasible split is
// found.
TwoBandReport two_band_nbs(const Radio& radio, const Association& initial,
                           int bs1, int bs2);

}  // namespace hetnet
