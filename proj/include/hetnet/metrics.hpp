#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hetnet/bargain.hpp"

namespace hetnet {

// Jain fairness index (sum x)^2 / (n sum x^2) over nonnegative shares.
// The one-argument form uses n = shares.size(); the two-argument form takes
// the share count explicitly. Range [1/n, 1]; 1 iff all shares are equal.
// Throws std::invalid_argument on empty, all-zero or negative input.
double jain_index(const Eigen::Ref<const Eigen::VectorXd>& shares);
double jain_index(const Eigen::Ref<const Eigen::VectorXd>& shares, int n);

struct SrrValue {
  double raw = 0.0;      // unclamped ratio; may exceed 1
  double clamped = 0.0;  // min(raw, 1)
};

// Sum Rate Ratio: the best PBS aggregate rate divided by the MBS aggregate
// rate (BS 0). Throws std::domain_error when the MBS serves no users.
SrrValue srr(const Association& assoc, const Eigen::VectorXd& user_rates);
SrrValue srr(const GameOutcome& outcome);

// One row of the Monte Carlo results table.
struct MetricsReport {
  int n_users = 0;
  int num_bs = 0;
  std::string scheme;
  int drop = 0;
  double nash_product = 0.0;
  double sum_rate_bps = 0.0;
  double avg_rate_bps = 0.0;
  double jain_bs = 0.0;    // over BS utilities, negative shares excluded
  double jain_user = 0.0;  // over achieved user rates
  double srr_raw = 0.0;    // NaN when the MBS is empty
  double srr_clamped = 0.0;
  double qos_frac = 0.0;   // fraction of users with rate >= r_min
  Eigen::VectorXi loads;
  int negative_utilities_excluded = 0;  // shares dropped from jain_bs
  double wall_seconds = 0.0;            // filled in by the runner
  long iterations = 0;                  // scheme-specific work counter
};

MetricsReport make_report(const GameOutcome& outcome, double r_min_bps,
                          const std::string& scheme, int drop);

struct FieldSummary {
  std::string field;
  int count = 0;  // finite samples aggregated
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1), 0 for n <= 1
};

// Mean/median/stddev per metric field over the reports, skipping non-finite
// samples (count records how many were kept). Throws on empty input.
std::vector<FieldSummary> summarize(const std::vector<MetricsReport>& reports);

}  // namespace hetnet
