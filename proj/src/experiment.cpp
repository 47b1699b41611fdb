#include "hetnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hetnet/baseline.hpp"
#include "hetnet/exhaustive.hpp"
#include "hetnet/scga.hpp"
#include "hetnet/version.hpp"

namespace hetnet {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T, typename Parse>
void set_field(const std::string& key, const std::string& value, T& target,
               Parse parse, std::vector<std::string>& issues) {
  try {
    std::size_t consumed = 0;
    T parsed = parse(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing text");
    target = parsed;
  } catch (const std::exception&) {
    issues.push_back(key + ": cannot parse value '" + value + "'");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kScgaNbs: return "scga-nbs";
    case Scheme::kMaxSumRate: return "max-sum-rate";
    case Scheme::kBruteForce: return "brute-force";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "scga-nbs") return Scheme::kScgaNbs;
  if (name == "max-sum-rate") return Scheme::kMaxSumRate;
  if (name == "brute-force") return Scheme::kBruteForce;
  return std::nullopt;
}

std::vector<int> ExperimentPlan::effective_n_sweep() const {
  return n_users_sweep.empty() ? std::vector<int>{base.num_users}
                               : n_users_sweep;
}

std::vector<int> ExperimentPlan::effective_b_sweep() const {
  return b_sweep.empty() ? std::vector<int>{base.num_bs} : b_sweep;
}

void ExperimentPlan::validate() const {
  std::vector<std::string> issues;
  if (drops < 1) issues.push_back("drops: must be >= 1");
  if (parallel < 1) issues.push_back("parallel: must be >= 1");
  if (schemes.empty()) issues.push_back("schemes: at least one scheme required");
  if (out_dir.empty()) issues.push_back("out_dir: must not be empty");

  const bool wants_brute =
      std::find(schemes.begin(), schemes.end(), Scheme::kBruteForce) !=
      schemes.end();
  for (int n : effective_n_sweep()) {
    for (int b : effective_b_sweep()) {
      ScenarioConfig combo = base;
      combo.num_users = n;
      combo.num_bs = b;
      try {
        combo.validate();
      } catch (const ConfigError& err) {
        for (const auto& issue : err.issues())
          issues.push_back("n_users=" + std::to_string(n) +
                           ",num_bs=" + std::to_string(b) + ": " + issue);
      }
      if (wants_brute && (n > 14 || !exhaustive_tractable(n, b)))
        issues.push_back("schemes: brute-force limited to num_users <= 14 "
                         "and tractable B^N (n_users=" +
                         std::to_string(n) + ",num_bs=" + std::to_string(b) +
                         ")");
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::vector<std::string> issues;
  std::vector<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    std::string line = trim(comment == std::string::npos
                                ? raw
                                : raw.substr(0, comment));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(line_no) +
                       ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      issues.push_back(key + ": duplicate key");
      continue;
    }
    seen.push_back(key);

    auto as_int = [](const std::string& s, std::size_t* consumed) {
      return std::stoi(s, consumed);
    };
    auto as_double = [](const std::string& s, std::size_t* consumed) {
      return std::stod(s, consumed);
    };
    auto as_u64 = [](const std::string& s, std::size_t* consumed) {
      if (!s.empty() && s[0] == '-')
        throw std::invalid_argument("must be unsigned");
      return static_cast<std::uint64_t>(std::stoull(s, consumed));
    };

    if (key == "num_users") set_field(key, value, cfg.num_users, as_int, issues);
    else if (key == "num_bs") set_field(key, value, cfg.num_bs, as_int, issues);
    else if (key == "macro_radius_m")
      set_field(key, value, cfg.macro_radius_m, as_double, issues);
    else if (key == "pico_ring_radius_m")
      set_field(key, value, cfg.pico_ring_radius_m, as_double, issues);
    else if (key == "bandwidth_hz")
      set_field(key, value, cfg.bandwidth_hz, as_double, issues);
    else if (key == "noise_psd_dbm_hz")
      set_field(key, value, cfg.noise_psd_dbm_hz, as_double, issues);
    else if (key == "mbs_power_dbm")
      set_field(key, value, cfg.mbs_power_dbm, as_double, issues);
    else if (key == "pbs_power_dbm")
      set_field(key, value, cfg.pbs_power_dbm, as_double, issues);
    else if (key == "r_min_bps")
      set_field(key, value, cfg.r_min_bps, as_double, issues);
    else if (key == "pathloss_exponent")
      set_field(key, value, cfg.pathloss_exponent, as_double, issues);
    else if (key == "seed") set_field(key, value, cfg.seed, as_u64, issues);
    else issues.push_back(key + ": unknown key");
  }

  try {
    cfg.validate();
  } catch (const ConfigError& err) {
    issues.insert(issues.end(), err.issues().begin(), err.issues().end());
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config file not readable: " + path.string()});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

Radio make_drop_radio(const ScenarioConfig& config, std::uint64_t drop) {
  StreamRng topo_rng(config.seed, drop, StreamRng::kTopology);
  StreamRng gain_rng(config.seed, drop, StreamRng::kGains);
  const Topology topo = build_topology(config, topo_rng);
  return Radio(make_radio_params(config),
               sample_gains(topo, config.pathloss_exponent, gain_rng));
}

SchemeRun run_scheme(const Radio& radio, Scheme scheme) {
  const auto start = std::chrono::steady_clock::now();
  SchemeRun run;
  switch (scheme) {
    case Scheme::kScgaNbs: {
      ScgaResult result = scga_nbs(radio);
      run.outcome = std::move(result.outcome);
      run.iterations = result.iterations;
      break;
    }
    case Scheme::kMaxSumRate: {
      const SumRateOutcome result = max_sum_rate(radio);
      run.outcome = evaluate_outcome(radio, result.assoc);
      run.iterations = result.moves;
      break;
    }
    case Scheme::kBruteForce: {
      auto result = brute_force_nbs(radio);
      if (!result)
        throw InfeasibleError(
            "brute-force: no feasible assignment for this drop");
      run.outcome = std::move(*result);
      run.iterations = static_cast<long>(
          std::pow(static_cast<double>(radio.num_bs()), radio.num_users()));
      break;
    }
  }
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return run;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();

  const std::vector<int> n_sweep = plan.effective_n_sweep();
  const std::vector<int> b_sweep = plan.effective_b_sweep();

  struct Task {
    ScenarioConfig config;
    int drop = 0;
  };
  std::vector<Task> tasks;
  for (int n : n_sweep)
    for (int b : b_sweep)
      for (int drop = 0; drop < plan.drops; ++drop) {
        ScenarioConfig config = plan.base;
        config.num_users = n;
        config.num_bs = b;
        tasks.push_back({config, drop});
      }

  // Per-task scheme runs; slots are preassigned so the merge order does not
  // depend on worker scheduling. A scheme that cannot produce a feasible
  // outcome for a drop leaves its slot empty (reported as a nan row) instead
  // of aborting the whole experiment.
  std::vector<std::vector<std::optional<SchemeRun>>> runs(
      tasks.size(), std::vector<std::optional<SchemeRun>>(plan.schemes.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      try {
        const Task& task = tasks[index];
        const Radio radio = make_drop_radio(task.config, task.drop);
        for (std::size_t si = 0; si < plan.schemes.size(); ++si) {
          try {
            runs[index][si] = run_scheme(radio, plan.schemes[si]);
          } catch (const InfeasibleError&) {
            // slot stays empty
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int thread_count =
      std::min<int>(plan.parallel, static_cast<int>(tasks.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::error_code ec;
  std::filesystem::create_directories(plan.out_dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " +
                             plan.out_dir.string() + ": " + ec.message());

  ExperimentResult result;
  result.results_csv = plan.out_dir / "results.csv";
  result.summary_csv = plan.out_dir / "summary.csv";
  result.timings_csv = plan.out_dir / "timings.csv";
  result.manifest_json = plan.out_dir / "manifest.json";

  auto task_index = [&](int n_idx, int b_idx, int drop) {
    return (static_cast<std::size_t>(n_idx) * b_sweep.size() +
            static_cast<std::size_t>(b_idx)) *
               static_cast<std::size_t>(plan.drops) +
           static_cast<std::size_t>(drop);
  };

  const int max_bs = *std::max_element(b_sweep.begin(), b_sweep.end());

  // results.csv: fixed column order; rows with fewer BSs than the widest
  // sweep entry leave their trailing load columns empty.
  {
    std::ofstream out = open_out(result.results_csv);
    out << "n_users,num_bs,scheme,drop,nash_product,sum_rate_bps,avg_rate_bps,"
           "jain_bs,jain_user,srr_raw,srr_clamped,qos_frac";
    for (int b = 0; b < max_bs; ++b) out << ",load_b" << b;
    out << "\n";
    for (std::size_t ni = 0; ni < n_sweep.size(); ++ni)
      for (std::size_t bi = 0; bi < b_sweep.size(); ++bi)
        for (std::size_t si = 0; si < plan.schemes.size(); ++si)
          for (int drop = 0; drop < plan.drops; ++drop) {
            const auto& slot =
                runs[task_index(static_cast<int>(ni), static_cast<int>(bi),
                                drop)][si];
            out << n_sweep[ni] << ',' << b_sweep[bi] << ','
                << to_string(plan.schemes[si]) << ',' << drop;
            if (slot) {
              const MetricsReport report =
                  make_report(slot->outcome, plan.base.r_min_bps,
                              to_string(plan.schemes[si]), drop);
              out << ',' << fmt(report.nash_product) << ','
                  << fmt(report.sum_rate_bps) << ','
                  << fmt(report.avg_rate_bps) << ',' << fmt(report.jain_bs)
                  << ',' << fmt(report.jain_user) << ',' << fmt(report.srr_raw)
                  << ',' << fmt(report.srr_clamped) << ','
                  << fmt(report.qos_frac);
              for (int b = 0; b < max_bs; ++b) {
                out << ',';
                if (b < report.loads.size()) out << report.loads[b];
              }
            } else {
              // Scheme found no feasible outcome for this drop.
              for (int field = 0; field < 8; ++field) out << ",nan";
              for (int b = 0; b < max_bs; ++b) out << ',';
            }
            out << "\n";
            ++result.rows;
          }
  }

  // summary.csv: per-(N, B, scheme) aggregates of every metric field.
  // timings.csv: wall-clock and work counters (the wall clock is the one
  // deliberately nondeterministic output).
  {
    std::ofstream summary = open_out(result.summary_csv);
    std::ofstream timings = open_out(result.timings_csv);
    summary << "n_users,num_bs,scheme,field,count,mean,median,stddev\n";
    timings << "n_users,num_bs,scheme,wall_ms_mean,wall_ms_median,"
               "iterations_mean,iterations_median\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t ni = 0; ni < n_sweep.size(); ++ni)
      for (std::size_t bi = 0; bi < b_sweep.size(); ++bi)
        for (std::size_t si = 0; si < plan.schemes.size(); ++si) {
          std::vector<MetricsReport> reports;
          std::vector<double> wall_ms;
          std::vector<double> iterations;
          for (int drop = 0; drop < plan.drops; ++drop) {
            const auto& slot =
                runs[task_index(static_cast<int>(ni), static_cast<int>(bi),
                                drop)][si];
            if (!slot) continue;
            reports.push_back(make_report(slot->outcome, plan.base.r_min_bps,
                                          to_string(plan.schemes[si]), drop));
            wall_ms.push_back(slot->wall_seconds * 1e3);
            iterations.push_back(static_cast<double>(slot->iterations));
          }
          if (reports.empty()) {
            for (const char* field :
                 {"nash_product", "sum_rate_bps", "avg_rate_bps", "jain_bs",
                  "jain_user", "srr_raw", "srr_clamped", "qos_frac"})
              summary << n_sweep[ni] << ',' << b_sweep[bi] << ','
                      << to_string(plan.schemes[si]) << ',' << field
                      << ",0,nan,nan,nan\n";
          } else {
            for (const FieldSummary& fs : summarize(reports))
              summary << n_sweep[ni] << ',' << b_sweep[bi] << ','
                      << to_string(plan.schemes[si]) << ',' << fs.field << ','
                      << fs.count << ',' << fmt(fs.mean) << ','
                      << fmt(fs.median) << ',' << fmt(fs.stddev) << "\n";
          }
          const bool have_timing = !wall_ms.empty();
          const double wall_mean =
              have_timing ? std::accumulate(wall_ms.begin(), wall_ms.end(),
                                            0.0) /
                                wall_ms.size()
                          : nan;
          const double iter_mean =
              have_timing ? std::accumulate(iterations.begin(),
                                            iterations.end(), 0.0) /
                                iterations.size()
                          : nan;
          timings << n_sweep[ni] << ',' << b_sweep[bi] << ','
                  << to_string(plan.schemes[si]) << ',' << fmt(wall_mean)
                  << ','
                  << fmt(have_timing ? median_of(wall_ms) : nan) << ','
                  << fmt(iter_mean) << ','
                  << fmt(have_timing ? median_of(iterations) : nan) << "\n";
        }
  }

  if (plan.emit_per_user) {
    result.per_user_csv = plan.out_dir / "per_user_rates.csv";
    std::ofstream out = open_out(result.per_user_csv);
    out << "n_users,num_bs,scheme,drop,user,serving_bs,rate_bps\n";
    for (std::size_t ni = 0; ni < n_sweep.size(); ++ni)
      for (std::size_t bi = 0; bi < b_sweep.size(); ++bi)
        for (std::size_t si = 0; si < plan.schemes.size(); ++si)
          for (int drop = 0; drop < plan.drops; ++drop) {
            const auto& slot =
                runs[task_index(static_cast<int>(ni), static_cast<int>(bi),
                                drop)][si];
            if (!slot) continue;
            for (int n = 0; n < slot->outcome.assoc.num_users(); ++n)
              out << n_sweep[ni] << ',' << b_sweep[bi] << ','
                  << to_string(plan.schemes[si]) << ',' << drop << ',' << n
                  << ',' << slot->outcome.assoc.serving_bs(n) << ','
                  << fmt(slot->outcome.user_rates[n]) << "\n";
          }
  }

  {
    nlohmann::json manifest;
    manifest["artifact"] = "hetnet-bargain";
    manifest["version"] = kVersion;
    manifest["seed"] = plan.base.seed;
    manifest["scenario"] = {
        {"num_users", plan.base.num_users},
        {"num_bs", plan.base.num_bs},
        {"macro_radius_m", plan.base.macro_radius_m},
        {"pico_ring_radius_m", plan.base.pico_ring_radius_m},
        {"bandwidth_hz", plan.base.bandwidth_hz},
        {"noise_psd_dbm_hz", plan.base.noise_psd_dbm_hz},
        {"mbs_power_dbm", plan.base.mbs_power_dbm},
        {"pbs_power_dbm", plan.base.pbs_power_dbm},
        {"r_min_bps", plan.base.r_min_bps},
        {"pathloss_exponent", plan.base.pathloss_exponent},
    };
    std::vector<std::string> scheme_names;
    for (Scheme scheme : plan.schemes) scheme_names.push_back(to_string(scheme));
    manifest["plan"] = {
        {"n_users_sweep", n_sweep},
        {"b_sweep", b_sweep},
        {"schemes", scheme_names},
        {"drops", plan.drops},
        {"parallel", plan.parallel},
        {"emit_per_user", plan.emit_per_user},
    };
    nlohmann::json infeasible = nlohmann::json::object();
    for (std::size_t si = 0; si < plan.schemes.size(); ++si) {
      int failed = 0;
      for (const auto& task_runs : runs)
        if (!task_runs[si]) ++failed;
      infeasible[to_string(plan.schemes[si])] = failed;
    }
    manifest["infeasible_runs"] = infeasible;
    std::ofstream out = open_out(result.manifest_json);
    out << manifest.dump(2) << "\n";
  }

  return result;
}

}  // namespace hetnet
