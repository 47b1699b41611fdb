#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

#include "hetnet/radio.hpp"

namespace hetnet {

// A scheme could not produce a feasible outcome (every candidate violated
// the bargaining constraints). Recoverable at the experiment level: the
// affected drop is reported as missing rather than aborting the run.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything the bargaining layer records about one association.
struct GameOutcome {
  Association assoc;
  Eigen::VectorXd utilities;        // U_b per BS
  Eigen::VectorXi loads;
  Eigen::VectorXd user_rates;       // achieved bit/s per user
  double nash_product = 0.0;        // prod_b (U_b - d_b)
  std::optional<double> log_nash;   // sum_b ln U_b, present iff all U_b > 0
  bool feasible = false;
  std::string infeasible_reason;
};

// Nash product over the per-BS utility gains. The disagreement point
// defaults to the zero vector; pass one explicitly to shift it.
double nash_product(const Eigen::VectorXd& utilities,
                    const Eigen::VectorXd* disagreement = nullptr);

// Log-domain objective sum_b ln(U_b); empty when any utility is
// nonpositive. On the feasible interior it is a strictly monotone
// transform of nash_product.
std::optional<double> log_nash(const Eigen::VectorXd& utilities);

struct Feasibility {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Feasible iff every user is assigned to exactly one BS and every BS
// utility is nonnegative (an empty BS contributes U_b = 0, which passes).
Feasibility is_feasible(const Radio& radio, const Association& assoc);

GameOutcome evaluate_outcome(const Radio& radio, const Association& assoc);

}  // namespace hetnet
