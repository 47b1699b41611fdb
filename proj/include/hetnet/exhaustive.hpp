#pragma once

#include <optional>

#include "hetnet/bargain.hpp"

namespace hetnet {

// Work bound for the exhaustive schemes: B^N association evaluations.
bool exhaustive_tractable(int num_users, int num_bs);

// Exhaustive Nash-product maximization over every one of the B^N full
// assignments that leaves no BS empty and keeps every utility nonnegative.
// Empty when no such assignment exists. Desk-scale only.
std::optional<GameOutcome> brute_force_nbs(const Radio& radio);

// Exhaustive sum-rate maximization over all B^N full assignments (empty
// BSs allowed; they contribute zero rate).
GameOutcome brute_force_max_sum_rate(const Radio& radio);

}  // namespace hetnet
