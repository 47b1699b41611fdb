#include "hetnet/scenario.hpp"

#include <numbers>
#include <sstream>

namespace hetnet {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& issue : issues) out << "\n  - " << issue;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

Eigen::VectorXd ScenarioConfig::bs_powers_w() const {
  Eigen::VectorXd powers = Eigen::VectorXd::Constant(num_bs, pbs_power_w());
  powers[0] = mbs_power_w();
  return powers;
}

void ScenarioConfig::validate() const {
  std::vector<std::string> issues;
  if (num_bs < 2) issues.push_back("num_bs: must be >= 2 (one MBS plus at least one PBS)");
  if (num_users < num_bs)
    issues.push_back("num_users: must be >= num_bs so every BS can serve a user");
  if (!(macro_radius_m > 0)) issues.push_back("macro_radius_m: must be strictly positive");
  if (!(pico_ring_radius_m > 0))
    issues.push_back("pico_ring_radius_m: must be strictly positive");
  if (!(bandwidth_hz > 0)) issues.push_back("bandwidth_hz: must be strictly positive");
  if (!(r_min_bps > 0)) issues.push_back("r_min_bps: must be strictly positive");
  if (!(pathloss_exponent > 0))
    issues.push_back("pathloss_exponent: must be strictly positive");
  if (!std::isfinite(noise_psd_dbm_hz))
    issues.push_back("noise_psd_dbm_hz: must be finite");
  if (!std::isfinite(mbs_power_dbm)) issues.push_back("mbs_power_dbm: must be finite");
  if (!std::isfinite(pbs_power_dbm)) issues.push_back("pbs_power_dbm: must be finite");
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

Eigen::MatrixXd Topology::distances() const {
  const auto num_bs = bs_positions.cols();
  const auto num_users = user_positions.cols();
  Eigen::MatrixXd d(num_bs, num_users);
  for (Eigen::Index b = 0; b < num_bs; ++b)
    d.row(b) =
        (user_positions.colwise() - bs_positions.col(b)).colwise().norm();
  return d;
}

Topology build_topology(const ScenarioConfig& config, StreamRng& rng) {
  config.validate();
  const int num_pbs = config.num_bs - 1;

  Topology topo;
  topo.bs_positions.resize(2, config.num_bs);
  topo.bs_positions.col(0).setZero();
  for (int k = 0; k < num_pbs; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / num_pbs;
    topo.bs_positions.col(k + 1) << config.pico_ring_radius_m * std::cos(angle),
        config.pico_ring_radius_m * std::sin(angle);
  }

  topo.user_positions.resize(2, config.num_users);
  for (int n = 0; n < config.num_users; ++n) {
    const double radius = config.macro_radius_m * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    topo.user_positions.col(n) << radius * std::cos(angle),
        radius * std::sin(angle);
  }
  return topo;
}

Eigen::MatrixXd sample_gains(const Topology& topology,
                             double pathloss_exponent, StreamRng& rng) {
  const Eigen::MatrixXd clamped = topology.distances().cwiseMax(1.0);
  Eigen::MatrixXd gains(clamped.rows(), clamped.cols());
  for (Eigen::Index b = 0; b < clamped.rows(); ++b)
    for (Eigen::Index n = 0; n < clamped.cols(); ++n)
      gains(b, n) =
          std::pow(clamped(b, n), -pathloss_exponent) * rng.exponential();
  return gains;
}

}  // namespace hetnet
