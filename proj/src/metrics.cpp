#include "hetnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double jain_index(const Eigen::Ref<const Eigen::VectorXd>& shares, int n) {
  if (n < 1 || shares.size() < 1)
    throw std::invalid_argument("jain_index: need at least one share");
  if ((shares.array() < 0).any())
    throw std::invalid_argument("jain_index: shares must be nonnegative");
  const double sum = shares.sum();
  const double sum_sq = shares.squaredNorm();
  if (sum_sq == 0)
    throw std::invalid_argument("jain_index: undefined for all-zero shares");
  return sum * sum / (n * sum_sq);
}

double jain_index(const Eigen::Ref<const Eigen::VectorXd>& shares) {
  return jain_index(shares, static_cast<int>(shares.size()));
}

SrrValue srr(const Association& assoc, const Eigen::VectorXd& user_rates) {
  if (assoc.load(0) == 0)
    throw std::domain_error("SRR undefined: MBS serves no users");
  Eigen::VectorXd per_bs = Eigen::VectorXd::Zero(assoc.num_bs());
  for (int n = 0; n < assoc.num_users(); ++n)
    if (assoc.assigned(n)) per_bs[assoc.serving_bs(n)] += user_rates[n];
  const double mbs_rate = per_bs[0];
  const double best_pbs =
      assoc.num_bs() > 1 ? per_bs.tail(assoc.num_bs() - 1).maxCoeff() : 0.0;
  const double raw = best_pbs / mbs_rate;
  return {raw, std::min(raw, 1.0)};
}

SrrValue srr(const GameOutcome& outcome) {
  return srr(outcome.assoc, outcome.user_rates);
}

MetricsReport make_report(const GameOutcome& outcome, double r_min_bps,
                          const std::string& scheme, int drop) {
  MetricsReport report;
  report.n_users = outcome.assoc.num_users();
  report.num_bs = outcome.assoc.num_bs();
  report.scheme = scheme;
  report.drop = drop;
  report.nash_product = outcome.nash_product;
  report.sum_rate_bps = outcome.user_rates.sum();
  report.avg_rate_bps = report.sum_rate_bps / report.n_users;
  report.loads = outcome.loads;

  // Jain shares must be nonnegative; pre-feasibility outcomes can carry
  // negative utilities, which are dropped (with a count) rather than fed in.
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(outcome.utilities.size()));
  for (Eigen::Index b = 0; b < outcome.utilities.size(); ++b) {
    if (outcome.utilities[b] >= 0)
      kept.push_back(outcome.utilities[b]);
    else
      ++report.negative_utilities_excluded;
  }
  try {
    report.jain_bs = jain_index(Eigen::Map<const Eigen::VectorXd>(
        kept.data(), static_cast<Eigen::Index>(kept.size())));
  } catch (const std::invalid_argument&) {
    report.jain_bs = kNaN;
  }
  report.jain_user = jain_index(outcome.user_rates);

  try {
    const SrrValue value = srr(outcome);
    report.srr_raw = value.raw;
    report.srr_clamped = value.clamped;
  } catch (const std::domain_error&) {
    report.srr_raw = kNaN;
    report.srr_clamped = kNaN;
  }

  report.qos_frac =
      (outcome.user_rates.array() >= r_min_bps).cast<double>().mean();
  return report;
}

std::vector<FieldSummary> summarize(const std::vector<MetricsReport>& reports) {
  if (reports.empty())
    throw std::invalid_argument("summarize: no reports to aggregate");

  const std::vector<
      std::pair<std::string, double (*)(const MetricsReport&)>>
      fields = {
          {"nash_product", [](const MetricsReport& r) { return r.nash_product; }},
          {"sum_rate_bps", [](const MetricsReport& r) { return r.sum_rate_bps; }},
          {"avg_rate_bps", [](const MetricsReport& r) { return r.avg_rate_bps; }},
          {"jain_bs", [](const MetricsReport& r) { return r.jain_bs; }},
          {"jain_user", [](const MetricsReport& r) { return r.jain_user; }},
          {"srr_raw", [](const MetricsReport& r) { return r.srr_raw; }},
          {"srr_clamped", [](const MetricsReport& r) { return r.srr_clamped; }},
          {"qos_frac", [](const MetricsReport& r) { return r.qos_frac; }},
      };

  std::vector<FieldSummary> out;
  for (const auto& [name, get] : fields) {
    std::vector<double> values;
    values.reserve(reports.size());
    for (const auto& report : reports) {
      const double v = get(report);
      if (std::isfinite(v)) values.push_back(v);
    }
    FieldSummary summary;
    summary.field = name;
    summary.count = static_cast<int>(values.size());
    if (!values.empty()) {
      double sum = 0.0;
      for (double v : values) sum += v;
      summary.mean = sum / values.size();
      summary.median = median_of(values);
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - summary.mean) * (v - summary.mean);
        summary.stddev = std::sqrt(ss / (values.size() - 1));
      }
    } else {
      summary.mean = summary.median = summary.stddev = kNaN;
    }
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace hetnet
