#pragma once

#include "hetnet/bargain.hpp"

namespace hetnet {

struct SumRateOutcome {
  Association assoc;
  double total_rate_bps = 0.0;
  Eigen::VectorXd per_bs_rate_bps;
  int moves = 0;  // accepted best-response moves on the winning start
};

// Throughput-oriented baseline: deterministic steepest-ascent local search
// on the total sum rate with single-user moves. Each round recomputes both
// affected BSs' loads and rates for every candidate move and applies the
// best strictly improving one; ties resolve to the lowest (user, bs); a
// search stops at a local optimum or at the defensive 50*N move bound.
// The search runs from the max-SINR assignment and from each all-on-one-BS
// assignment (B+1 deterministic starts) and the best objective wins.
SumRateOutcome max_sum_rate(const Radio& radio);

}  // namespace hetnet
