#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetnet/rng.hpp"

namespace hetnet {

// Raised by configuration validation; carries every violation at once so a
// bad file is reported in a single pass.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Scenario parameters. Powers and noise are stored in the dB units they are
// configured in; conversion to linear SI units happens once through the
// accessors below and everything downstream works in watts and Hz.
struct ScenarioConfig {
  int num_users = 40;               // N
  int num_bs = 5;                   // B, including the MBS
  double macro_radius_m = 167.0;
  double pico_ring_radius_m = 120.0;
  double bandwidth_hz = 1e7;        // W, per-BS FDMA bandwidth
  double noise_psd_dbm_hz = -127.0;
  double mbs_power_dbm = 46.0;
  double pbs_power_dbm = 30.0;
  double r_min_bps = 1e5;
  double pathloss_exponent = 3.5;
  std::uint64_t seed = 1;

  static double dbm_to_watt(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
  }

  double noise_psd_w_per_hz() const { return dbm_to_watt(noise_psd_dbm_hz); }
  double mbs_power_w() const { return dbm_to_watt(mbs_power_dbm); }
  double pbs_power_w() const { return dbm_to_watt(pbs_power_dbm); }

  // Transmit powers in watts; element 0 is the MBS.
  Eigen::VectorXd bs_powers_w() const;

  // Throws ConfigError listing every violated invariant by field name.
  void validate() const;
};

// Node coordinates in meters, one column per node. Column 0 of bs_positions
// is the MBS at the origin; the remaining B-1 PBSs sit on the pico ring at
// angles 2*pi*k/(B-1), k = 0..B-2, first PBS on the positive x axis.
struct Topology {
  Eigen::Matrix2Xd bs_positions;
  Eigen::Matrix2Xd user_positions;

  // Pairwise BS-to-user distances, B x N, unclamped.
  Eigen::MatrixXd distances() const;
};

// Samples user positions area-uniformly over the macro disk
// (radius = R * sqrt(u), angle = 2*pi*v). Draw order: per user in index
// order, radius variate first, then angle.
Topology build_topology(const ScenarioConfig& config, StreamRng& rng);

// Frequency-flat Rayleigh fading with path loss: G = d^-beta * E where E is
// unit-mean exponential, i.e. |h|^2 for h ~ CN(0, d^-beta). Distances are
// clamped below at 1 m to avoid the path-loss singularity. Draw order:
// BS-major (all users of BS 0, then BS 1, ...).
Eigen::MatrixXd sample_gains(const Topology& topology,
                             double pathloss_exponent, StreamRng& rng);

}  // namespace hetnet
