#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hetnet/two_band.hpp"

namespace hetnet {

// Per-BS user caps for the SINR-greedy initialization. alpha >= 1 scales the
// MBS share of N/B; the remaining users are spread as evenly as possible over
// the PBSs (earlier indices take the remainder), so the caps always sum to N.
struct LoadCaps {
  double alpha = 1.0;
  Eigen::VectorXi caps;  // size B; caps[0] is the MBS

  int mbs_cap() const { return caps[0]; }

  // Every cap >= 1; the sum equals N by construction.
  bool valid() const;

  static LoadCaps make(double alpha, int num_users, int num_bs);
};

// Upper end of the integer alpha sweep: the proportion at which each PBS is
// left with a single initialized user, floor(B*(N-B+1)/N), never below 1.
int alpha_sweep_max(int num_users, int num_bs);

// Greedy maximum-first assignment under per-BS caps: repeatedly take the
// largest unmasked score, assign that (bs, user), mask the user's column,
// and mask a BS's row once its cap is reached. Ties resolve to the lowest
// (bs, user) pair. Requires sum(caps) >= num_users.
Association greedy_assign(const Eigen::MatrixXd& scores,
                          const Eigen::VectorXi& caps);

// SINR-greedy initialization. The noise term of row b's SINR is evaluated at
// that BS's cap, the only load defined before any association exists.
Association initialize(const Radio& radio, const LoadCaps& caps);

// Benefit of pairing BS i with BS j: omega(i, j) = sum_k SINR_ik X0(j, k),
// zero diagonal. Row i's SINRs use BS i's own current load under X0 in the
// noise term (an empty BS falls back to load 1).
Eigen::MatrixXd benefit_matrix(const Radio& radio, const Association& x0);

struct CoalitionMatrix {
  Eigen::MatrixXi c;                       // B x B symmetric 0/1 matching
  std::vector<std::pair<int, int>> pairs;  // coalitions (i, j), i < j
  int unpaired = -1;                       // leftover BS when B is odd
};

// Greedy maximum-first pairing on the symmetrized benefits
// omega + omega^T: take the largest remaining score, pair the two BSs,
// drop everything involving them, repeat. Ties resolve to the
// lexicographically lowest (i, j).
CoalitionMatrix generate_coalitions(const Eigen::MatrixXd& omega);

struct AlphaDiagnostics {
  int alpha = 0;
  bool caps_valid = false;
  Eigen::VectorXi caps;
  double init_nash = 0.0;     // Nash product right after initialization
  bool init_feasible = false; // all initial utilities nonnegative
  double final_nash = 0.0;    // after bargaining in every coalition
  bool feasible = false;
  std::string note;
};

struct ScgaResult {
  GameOutcome outcome;  // best feasible outcome across the sweep
  int best_alpha = 0;
  long iterations = 0;  // total two-band rounds over the whole sweep
  bool any_capped = false;
  std::vector<AlphaDiagnostics> sweep;
};

class ScgaError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// Full SCGA-NBS pipeline. For each integer alpha in [1, alpha_sweep_max]:
// initialize under that alpha's caps, build the benefit matrix, pair BSs,
// bargain inside each coalition with the two-band method (an unpaired BS
// keeps its initialized users), and evaluate the global Nash product over
// all B BSs. Returns the best feasible outcome; throws ScgaError with
// per-alpha diagnostics when no alpha yields one.
ScgaResult scga_nbs(const Radio& radio);

}  // namespace hetnet
