#include "hetnet/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace hetnet {

Association::Association(int num_bs, int num_users)
    : serving_(static_cast<std::size_t>(num_users), -1),
      loads_(Eigen::VectorXi::Zero(num_bs)) {
  if (num_bs < 1 || num_users < 0)
    throw std::invalid_argument("Association: need num_bs >= 1, num_users >= 0");
}

bool Association::fully_assigned() const {
  for (int bs : serving_)
    if (bs < 0) return false;
  return true;
}

void Association::assign(int user, int bs) {
  if (bs < 0 || bs >= num_bs())
    throw std::out_of_range("Association::assign: bad BS index");
  if (user < 0 || user >= num_users())
    throw std::out_of_range("Association::assign: bad user index");
  int& current = serving_[user];
  if (current == bs) return;
  if (current >= 0) --loads_[current];
  current = bs;
  ++loads_[bs];
}

void Association::unassign(int user) {
  int& current = serving_[user];
  if (current >= 0) {
    --loads_[current];
    current = -1;
  }
}

std::vector<int> Association::users_of(int bs) const {
  std::vector<int> users;
  users.reserve(static_cast<std::size_t>(loads_[bs]));
  for (int n = 0; n < num_users(); ++n)
    if (serving_[n] == bs) users.push_back(n);
  return users;
}

Eigen::MatrixXi Association::to_matrix() const {
  Eigen::MatrixXi x = Eigen::MatrixXi::Zero(num_bs(), num_users());
  for (int n = 0; n < num_users(); ++n)
    if (serving_[n] >= 0) x(serving_[n], n) = 1;
  return x;
}

int effective_load(const Association& assoc, int bs) { return assoc.load(bs); }

RadioParams make_radio_params(const ScenarioConfig& config) {
  return RadioParams{config.bs_powers_w(), config.bandwidth_hz,
                     config.noise_psd_w_per_hz(), config.r_min_bps};
}

double sinr(double rx_power_w, double interference_w,
            double noise_psd_w_per_hz, double bandwidth_hz, int load) {
  if (load < 1)
    throw std::domain_error("sinr: load must be >= 1 (noise term divides by L)");
  return rx_power_w /
         (interference_w + noise_psd_w_per_hz * bandwidth_hz / load);
}

double rate(double bandwidth_hz, int load, double sinr_value) {
  if (load < 1) throw std::domain_error("rate: load must be >= 1");
  return bandwidth_hz / load * std::log2(1.0 + sinr_value);
}

double utility(double rate_bps, double r_min_bps) {
  if (!(rate_bps > 0) || !(r_min_bps > 0))
    throw std::domain_error("utility: rate and r_min must be positive");
  return std::log(rate_bps / r_min_bps);
}

Radio::Radio(RadioParams params, Eigen::MatrixXd gains)
    : params_(std::move(params)), gains_(std::move(gains)) {
  if (params_.powers_w.size() != gains_.rows())
    throw std::invalid_argument("Radio: powers/gains dimension mismatch");
  rx_power_ = gains_.array().colwise() * params_.powers_w.array();
  // Interference at (b, n) is the total received power at user n minus the
  // serving BS's own contribution.
  const Eigen::RowVectorXd total = rx_power_.colwise().sum();
  interference_ = (-rx_power_).rowwise() + total;
}

double Radio::sinr(int bs, int user, int load) const {
  return hetnet::sinr(rx_power_(bs, user), interference_(bs, user),
                      params_.noise_psd_w_per_hz, params_.bandwidth_hz, load);
}

double Radio::rate(int bs, int user, int load) const {
  return hetnet::rate(params_.bandwidth_hz, load, sinr(bs, user, load));
}

double Radio::utility(int bs, int user, int load) const {
  return hetnet::utility(rate(bs, user, load), params_.r_min_bps);
}

double Radio::bs_utility(const Association& assoc, int bs) const {
  const int load = assoc.load(bs);
  if (load == 0) return 0.0;
  double total = 0.0;
  for (int n = 0; n < assoc.num_users(); ++n)
    if (assoc.serving_bs(n) == bs) total += utility(bs, n, load);
  return total;
}

Eigen::VectorXd Radio::bs_utilities(const Association& assoc) const {
  Eigen::VectorXd u(num_bs());
  for (int b = 0; b < num_bs(); ++b) u[b] = bs_utility(assoc, b);
  return u;
}

Eigen::VectorXd Radio::user_rates(const Association& assoc) const {
  Eigen::VectorXd rates = Eigen::VectorXd::Zero(num_users());
  for (int n = 0; n < num_users(); ++n) {
    const int bs = assoc.serving_bs(n);
    if (bs >= 0) rates[n] = rate(bs, n, assoc.load(bs));
  }
  return rates;
}

Eigen::MatrixXd Radio::sinr_matrix(const Eigen::VectorXi& noise_loads) const {
  if (noise_loads.size() != num_bs())
    throw std::invalid_argument("sinr_matrix: need one noise load per BS");
  if ((noise_loads.array() < 1).any())
    throw std::domain_error("sinr_matrix: noise loads must be >= 1");
  const Eigen::ArrayXd noise = params_.noise_psd_w_per_hz *
                               params_.bandwidth_hz /
                               noise_loads.cast<double>().array();
  return rx_power_.array() /
         (interference_.array().colwise() + noise);
}

}  // namespace hetnet
