#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hetnet/scenario.hpp"

namespace hetnet {

// Single-BS-per-user association, stored as the serving BS index per user
// (-1 while unassigned). The representation makes the one-hot column
// invariant structural; per-BS loads are maintained incrementally.
class Association {
 public:
  Association() = default;  // empty 0x0 placeholder
  Association(int num_bs, int num_users);

  int num_bs() const { return static_cast<int>(loads_.size()); }
  int num_users() const { return static_cast<int>(serving_.size()); }

  int serving_bs(int user) const { return serving_[user]; }
  bool assigned(int user) const { return serving_[user] >= 0; }
  bool fully_assigned() const;

  void assign(int user, int bs);
  void unassign(int user);

  int load(int bs) const { return loads_[bs]; }
  const Eigen::VectorXi& loads() const { return loads_; }
  std::vector<int> users_of(int bs) const;  // ascending user index

  Eigen::MatrixXi to_matrix() const;  // B x N with one-hot columns

  friend bool operator==(const Association& a, const Association& b) {
    return a.loads_.size() == b.loads_.size() && a.serving_ == b.serving_;
  }

 private:
  std::vector<int> serving_;
  Eigen::VectorXi loads_;
};

int effective_load(const Association& assoc, int bs);

// Linear-unit radio parameters shared by every rate computation.
struct RadioParams {
  Eigen::VectorXd powers_w;  // transmit power per BS, element 0 = MBS
  double bandwidth_hz = 0;
  double noise_psd_w_per_hz = 0;
  double r_min_bps = 0;
};

RadioParams make_radio_params(const ScenarioConfig& config);

// SINR under the equal-FDMA-split model: interference sums every other BS
// at full transmit power regardless of its load; only the noise term scales
// with the serving BS's per-user bandwidth W/L. Throws std::domain_error
// when load < 1.
double sinr(double rx_power_w, double interference_w,
            double noise_psd_w_per_hz, double bandwidth_hz, int load);

// Achievable rate over the per-user share: (W/L) * log2(1 + SINR).
double rate(double bandwidth_hz, int load, double sinr_value);

// Logarithmic QoS utility ln(rate / r_min); negative below r_min.
// Throws std::domain_error for nonpositive rate.
double utility(double rate_bps, double r_min_bps);

// Immutable per-drop channel state. Receive powers P_b G_bn and the
// load-independent interference sums are precomputed once; rates and
// utilities are evaluated from scratch at whatever load the caller passes.
class Radio {
 public:
  Radio(RadioParams params, Eigen::MatrixXd gains);

  int num_bs() const { return static_cast<int>(gains_.rows()); }
  int num_users() const { return static_cast<int>(gains_.cols()); }
  const RadioParams& params() const { return params_; }
  const Eigen::MatrixXd& gains() const { return gains_; }

  double rx_power(int bs, int user) const { return rx_power_(bs, user); }
  double interference(int bs, int user) const {
    return interference_(bs, user);
  }

  double sinr(int bs, int user, int load) const;
  double rate(int bs, int user, int load) const;
  double utility(int bs, int user, int load) const;

  // U_b: sum of its users' utilities at the BS's current load; empty sum is 0.
  double bs_utility(const Association& assoc, int bs) const;
  Eigen::VectorXd bs_utilities(const Association& assoc) const;

  // Achieved rate per user under its serving BS's current load
  // (0 for unassigned users).
  Eigen::VectorXd user_rates(const Association& assoc) const;

  // Full B x N SINR table where row b's noise term is evaluated at
  // noise_loads[b]. All noise loads must be >= 1.
  Eigen::MatrixXd sinr_matrix(const Eigen::VectorXi& noise_loads) const;

 private:
  RadioParams params_;
  Eigen::MatrixXd gains_;
  Eigen::MatrixXd rx_power_;
  Eigen::MatrixXd interference_;
};

}  // namespace hetnet
