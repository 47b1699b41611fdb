#include "hetnet/bargain.hpp"

#include <cmath>
#include <stdexcept>

namespace hetnet {

double nash_product(const Eigen::VectorXd& utilities,
                    const Eigen::VectorXd* disagreement) {
  if (disagreement && disagreement->size() != utilities.size())
    throw std::invalid_argument("nash_product: disagreement size mismatch");
  double product = 1.0;
  for (Eigen::Index b = 0; b < utilities.size(); ++b)
    product *= utilities[b] - (disagreement ? (*disagreement)[b] : 0.0);
  return product;
}

std::optional<double> log_nash(const Eigen::VectorXd& utilities) {
  double total = 0.0;
  for (Eigen::Index b = 0; b < utilities.size(); ++b) {
    if (!(utilities[b] > 0)) return std::nullopt;
    total += std::log(utilities[b]);
  }
  return total;
}

Feasibility is_feasible(const Radio& radio, const Association& assoc) {
  if (!assoc.fully_assigned()) return {false, "unassigned user"};
  const Eigen::VectorXd utilities = radio.bs_utilities(assoc);
  if ((utilities.array() < 0).any()) return {false, "negative utility"};
  return {true, ""};
}

GameOutcome evaluate_outcome(const Radio& radio, const Association& assoc) {
  GameOutcome out{assoc,
                  radio.bs_utilities(assoc),
                  assoc.loads(),
                  radio.user_rates(assoc),
                  0.0,
                  std::nullopt,
                  false,
                  ""};
  out.nash_product = nash_product(out.utilities);
  out.log_nash = log_nash(out.utilities);
  const Feasibility feas = is_feasible(radio, assoc);
  out.feasible = feas.ok;
  out.infeasible_reason = feas.reason;
  return out;
}

}  // namespace hetnet
