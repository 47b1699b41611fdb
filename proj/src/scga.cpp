#include "hetnet/scga.hpp"

#include <cmath>
#include <sstream>

namespace hetnet {

bool LoadCaps::valid() const {
  return caps.size() >= 1 && (caps.array() >= 1).all();
}

LoadCaps LoadCaps::make(double alpha, int num_users, int num_bs) {
  if (num_bs < 2 || num_users < 1)
    throw std::invalid_argument("LoadCaps::make: need num_bs >= 2, num_users >= 1");
  LoadCaps out;
  out.alpha = alpha;
  out.caps = Eigen::VectorXi::Zero(num_bs);

  // Nominal caps alpha*N/B for the MBS and ((B-alpha)/(B-1))*(N/B) per PBS
  // are rarely integers; the MBS cap is rounded and the leftover users are
  // spread as evenly as possible across the PBSs, earlier PBSs taking the
  // remainder, so the caps always sum to N.
  const int mbs = static_cast<int>(
      std::lround(alpha * static_cast<double>(num_users) / num_bs));
  out.caps[0] = mbs;
  const int rest = num_users - mbs;
  const int num_pbs = num_bs - 1;
  if (rest >= 0) {
    const int base = rest / num_pbs;
    const int extra = rest % num_pbs;
    for (int k = 0; k < num_pbs; ++k)
      out.caps[k + 1] = base + (k < extra ? 1 : 0);
  }
  return out;
}

int alpha_sweep_max(int num_users, int num_bs) {
  // Bounded above by B, so the integer division cannot overflow.
  const long bound =
      static_cast<long>(num_bs) * (num_users - num_bs + 1) / num_users;
  return static_cast<int>(std::max(1L, bound));
}

Association greedy_assign(const Eigen::MatrixXd& scores,
                          const Eigen::VectorXi& caps) {
  const int num_bs = static_cast<int>(scores.rows());
  const int num_users = static_cast<int>(scores.cols());
  if (caps.size() != num_bs)
    throw std::invalid_argument("greedy_assign: one cap per BS required");
  if (caps.sum() < num_users)
    throw std::invalid_argument("greedy_assign: caps cannot place all users");

  Association assoc(num_bs, num_users);
  std::vector<bool> row_masked(num_bs, false);
  std::vector<bool> col_masked(num_users, false);
  for (int b = 0; b < num_bs; ++b) row_masked[b] = caps[b] == 0;

  for (int step = 0; step < num_users; ++step) {
    int best_b = -1;
    int best_n = -1;
    double best = 0.0;
    for (int b = 0; b < num_bs; ++b) {
      if (row_masked[b]) continue;
      for (int n = 0; n < num_users; ++n) {
        if (col_masked[n]) continue;
        if (best_b < 0 || scores(b, n) > best) {
          best = scores(b, n);
          best_b = b;
          best_n = n;
        }
      }
    }
    assoc.assign(best_n, best_b);
    col_masked[best_n] = true;
    if (assoc.load(best_b) >= caps[best_b]) row_masked[best_b] = true;
  }
  return assoc;
}

Association initialize(const Radio& radio, const LoadCaps& caps) {
  if (caps.caps.size() != radio.num_bs())
    throw std::invalid_argument("initialize: caps sized for a different B");
  if (!caps.valid())
    throw std::invalid_argument("initialize: infeasible caps (some cap < 1)");
  return greedy_assign(radio.sinr_matrix(caps.caps), caps.caps);
}

Eigen::MatrixXd benefit_matrix(const Radio& radio, const Association& x0) {
  const Eigen::VectorXi noise_loads = x0.loads().cwiseMax(1);
  const Eigen::MatrixXd sinrs = radio.sinr_matrix(noise_loads);
  Eigen::MatrixXd omega = sinrs * x0.to_matrix().cast<double>().transpose();
  omega.diagonal().setZero();
  return omega;
}

CoalitionMatrix generate_coalitions(const Eigen::MatrixXd& omega) {
  const int num_bs = static_cast<int>(omega.rows());
  if (omega.cols() != num_bs || num_bs < 2)
    throw std::invalid_argument("generate_coalitions: need a square matrix, B >= 2");

  // Directed benefits are not symmetric in general; the pairing score of
  // (i, j) is the total benefit of the coalition in both directions.
  const Eigen::MatrixXd s = omega + omega.transpose();

  CoalitionMatrix out;
  out.c = Eigen::MatrixXi::Zero(num_bs, num_bs);
  std::vector<bool> taken(num_bs, false);
  for (int round = 0; round < num_bs / 2; ++round) {
    int best_i = -1;
    int best_j = -1;
    double best = 0.0;
    for (int i = 0; i < num_bs; ++i) {
      if (taken[i]) continue;
      for (int j = i + 1; j < num_bs; ++j) {
        if (taken[j]) continue;
        if (best_i < 0 || s(i, j) > best) {
          best = s(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }
    taken[best_i] = true;
    taken[best_j] = true;
    out.pairs.emplace_back(best_i, best_j);
    out.c(best_i, best_j) = 1;
    out.c(best_j, best_i) = 1;
  }
  for (int b = 0; b < num_bs; ++b)
    if (!taken[b]) out.unpaired = b;
  return out;
}

ScgaResult scga_nbs(const Radio& radio) {
  const int num_users = radio.num_users();
  const int num_bs = radio.num_bs();

  ScgaResult result;
  bool have_best = false;

  for (int alpha = 1; alpha <= alpha_sweep_max(num_users, num_bs); ++alpha) {
    AlphaDiagnostics diag;
    diag.alpha = alpha;
    const LoadCaps caps = LoadCaps::make(alpha, num_users, num_bs);
    diag.caps = caps.caps;
    diag.caps_valid = caps.valid();
    if (!diag.caps_valid) {
      diag.note = "caps invalid (a BS would start with zero load)";
      result.sweep.push_back(std::move(diag));
      continue;
    }

    const Association x0 = initialize(radio, caps);
    const Eigen::VectorXd init_utilities = radio.bs_utilities(x0);
    diag.init_nash = nash_product(init_utilities);
    diag.init_feasible = (init_utilities.array() >= 0).all();

    const CoalitionMatrix coalitions =
        generate_coalitions(benefit_matrix(radio, x0));

    Association assoc = x0;
    for (const auto& [i, j] : coalitions.pairs) {
      const TwoBandReport report = two_band_nbs(radio, assoc, i, j);
      assoc = report.assoc;
      result.iterations += report.iterations;
      result.any_capped = result.any_capped || report.capped;
    }

    GameOutcome outcome = evaluate_outcome(radio, assoc);
    diag.final_nash = outcome.nash_product;
    diag.feasible = outcome.feasible;
    if (!outcome.feasible) diag.note = outcome.infeasible_reason;

    if (outcome.feasible &&
        (!have_best || outcome.nash_product > result.outcome.nash_product)) {
      result.outcome = std::move(outcome);
      result.best_alpha = alpha;
      have_best = true;
    }
    result.sweep.push_back(std::move(diag));
  }

  if (!have_best) {
    std::ostringstream msg;
    msg << "scga_nbs: no alpha produced a feasible outcome (N=" << num_users
        << ", B=" << num_bs << ")";
    for (const auto& diag : result.sweep)
      msg << "\n  alpha=" << diag.alpha << " caps_valid=" << diag.caps_valid
          << " init_nash=" << diag.init_nash
          << " final_nash=" << diag.final_nash << " note=" << diag.note;
    throw ScgaError(msg.str());
  }
  return result;
}

}  // namespace hetnet
