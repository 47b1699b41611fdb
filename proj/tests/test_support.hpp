#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here recomputes the model from first principles (naive loops over raw
// gains and powers) so it stays independent of the library's precomputed
// tables and search code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hetnet/experiment.hpp"
#include "hetnet/radio.hpp"

namespace testsupport {

inline hetnet::ScenarioConfig table1_config(int num_users, int num_bs,
                                            std::uint64_t seed) {
  hetnet::ScenarioConfig cfg;
  cfg.num_users = num_users;
  cfg.num_bs = num_bs;
  cfg.seed = seed;
  return cfg;
}

inline hetnet::Radio table1_radio(int num_users, int num_bs,
                                  std::uint64_t seed, std::uint64_t drop = 0) {
  return hetnet::make_drop_radio(table1_config(num_users, num_bs, seed), drop);
}

// Direct transcription of the SINR formula from scalar inputs.
inline double naive_sinr(const Eigen::MatrixXd& gains,
                         const Eigen::VectorXd& powers_w, int bs, int user,
                         int load, double noise_psd_w_per_hz,
                         double bandwidth_hz) {
  double interference = 0.0;
  for (Eigen::Index i = 0; i < gains.rows(); ++i)
    if (i != bs) interference += powers_w[i] * gains(i, user);
  const double noise = noise_psd_w_per_hz * bandwidth_hz / load;
  return powers_w[bs] * gains(bs, user) / (interference + noise);
}

inline double naive_rate(const hetnet::Radio& radio, int bs, int user,
                         int load) {
  const double s =
      naive_sinr(radio.gains(), radio.params().powers_w, bs, user, load,
                 radio.params().noise_psd_w_per_hz,
                 radio.params().bandwidth_hz);
  return radio.params().bandwidth_hz / load * std::log2(1.0 + s);
}

inline double naive_bs_utility(const hetnet::Radio& radio,
                               const hetnet::Association& assoc, int bs) {
  const int load = assoc.load(bs);
  if (load == 0) return 0.0;
  double total = 0.0;
  for (int n = 0; n < assoc.num_users(); ++n)
    if (assoc.serving_bs(n) == bs)
      total +=
          std::log(naive_rate(radio, bs, n, load) / radio.params().r_min_bps);
  return total;
}

// All two-BS full assignments as bitmasks: bit n set = user n on BS 1.
inline hetnet::Association mask_to_association(unsigned mask, int num_users) {
  hetnet::Association assoc(2, num_users);
  for (int n = 0; n < num_users; ++n)
    assoc.assign(n, (mask >> n) & 1u ? 1 : 0);
  return assoc;
}

struct BruteNash {
  double nash = 0.0;
  unsigned mask = 0;
  bool found = false;
};

// Exhaustive two-player Nash optimum over assignments with both BSs
// nonempty and both utilities nonnegative, computed with the naive
// utilities above.
inline BruteNash brute_force_nash_2bs(const hetnet::Radio& radio) {
  const int n = radio.num_users();
  BruteNash best;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    const hetnet::Association assoc = mask_to_association(mask, n);
    const double u0 = naive_bs_utility(radio, assoc, 0);
    const double u1 = naive_bs_utility(radio, assoc, 1);
    if (u0 < 0 || u1 < 0) continue;
    if (!best.found || u0 * u1 > best.nash) {
      best.nash = u0 * u1;
      best.mask = mask;
      best.found = true;
    }
  }
  return best;
}

// Exhaustive two-player sum-rate optimum over all 2^N assignments.
inline double brute_force_sum_rate_2bs(const hetnet::Radio& radio) {
  const int n = radio.num_users();
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const hetnet::Association assoc = mask_to_association(mask, n);
    double total = 0.0;
    for (int u = 0; u < n; ++u) {
      const int bs = assoc.serving_bs(u);
      total += naive_rate(radio, bs, u, assoc.load(bs));
    }
    if (total > best) best = total;
  }
  return best;
}

// One-sample Kolmogorov-Smirnov statistic against a fully specified CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

}  // namespace testsupport
