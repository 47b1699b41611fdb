#include "hetnet/exhaustive.hpp"

#include <cmath>
#include <stdexcept>

namespace hetnet {

namespace {

constexpr double kMaxEvaluations = 1 << 26;

// Odometer-style enumeration of all B^N assignments; returns false once
// every combination has been visited.
bool advance(std::vector<int>& digits, int base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

Association to_association(const std::vector<int>& digits, int num_bs) {
  Association assoc(num_bs, static_cast<int>(digits.size()));
  for (int n = 0; n < static_cast<int>(digits.size()); ++n)
    assoc.assign(n, digits[n]);
  return assoc;
}

void check_tractable(const Radio& radio) {
  if (!exhaustive_tractable(radio.num_users(), radio.num_bs()))
    throw std::invalid_argument(
        "exhaustive search: B^N too large for brute force");
}

}  // namespace

bool exhaustive_tractable(int num_users, int num_bs) {
  return num_users <= 14 &&
         std::pow(static_cast<double>(num_bs), num_users) <= kMaxEvaluations;
}

std::optional<GameOutcome> brute_force_nbs(const Radio& radio) {
  check_tractable(radio);
  const int num_bs = radio.num_bs();
  std::vector<int> digits(static_cast<std::size_t>(radio.num_users()), 0);

  std::optional<GameOutcome> best;
  do {
    const Association assoc = to_association(digits, num_bs);
    if ((assoc.loads().array() == 0).any()) continue;
    const Eigen::VectorXd utilities = radio.bs_utilities(assoc);
    if ((utilities.array() < 0).any()) continue;
    const double product = nash_product(utilities);
    if (!best || product > best->nash_product)
      best = evaluate_outcome(radio, assoc);
  } while (advance(digits, num_bs));
  return best;
}

GameOutcome brute_force_max_sum_rate(const Radio& radio) {
  check_tractable(radio);
  const int num_bs = radio.num_bs();
  std::vector<int> digits(static_cast<std::size_t>(radio.num_users()), 0);

  bool have_best = false;
  double best_rate = 0.0;
  Association best_assoc(num_bs, radio.num_users());
  do {
    const Association assoc = to_association(digits, num_bs);
    const double total = radio.user_rates(assoc).sum();
    if (!have_best || total > best_rate) {
      best_rate = total;
      best_assoc = assoc;
      have_best = true;
    }
  } while (advance(digits, num_bs));
  return evaluate_outcome(radio, best_assoc);
}

}  // namespace hetnet
