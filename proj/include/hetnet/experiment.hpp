#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/metrics.hpp"
#include "hetnet/scenario.hpp"

namespace hetnet {

enum class Scheme { kScgaNbs, kMaxSumRate, kBruteForce };

std::string to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(const std::string& name);

struct ExperimentPlan {
  ScenarioConfig base;
  std::vector<int> n_users_sweep;  // empty -> {base.num_users}
  std::vector<int> b_sweep;        // empty -> {base.num_bs}
  std::vector<Scheme> schemes = {Scheme::kScgaNbs, Scheme::kMaxSumRate};
  int drops = 1;
  std::filesystem::path out_dir = "out";
  int parallel = 1;
  bool emit_per_user = false;

  std::vector<int> effective_n_sweep() const;
  std::vector<int> effective_b_sweep() const;

  // Throws ConfigError; checks every (N, B) combination and the brute-force
  // tractability guard (N <= 14 and bounded B^N).
  void validate() const;
};

// Strict key = value configuration parsing ('#' and ';' start comments).
// Unknown keys are rejected; all violations are reported together with
// their field names. Absent fields keep the simulation defaults.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

struct ExperimentResult {
  std::filesystem::path results_csv;
  std::filesystem::path summary_csv;
  std::filesystem::path timings_csv;
  std::filesystem::path manifest_json;
  std::filesystem::path per_user_csv;  // empty unless emit_per_user
  int rows = 0;
};

// One drop's channel realization: topology and gains drawn from streams
// keyed by (config.seed, drop).
Radio make_drop_radio(const ScenarioConfig& config, std::uint64_t drop);

struct SchemeRun {
  GameOutcome outcome;
  double wall_seconds = 0.0;
  long iterations = 0;
};

SchemeRun run_scheme(const Radio& radio, Scheme scheme);

// Runs the full Monte Carlo plan and writes results.csv, summary.csv,
// timings.csv, manifest.json (and per_user_rates.csv when requested) under
// plan.out_dir. Drops may execute in parallel; rows are always emitted in
// deterministic (n_users, num_bs, scheme, drop) order and results.csv is
// byte-identical across re-runs of the same plan. timings.csv holds the
// wall-clock aggregates and is the one deliberately nondeterministic file.
// A scheme that cannot produce a feasible outcome for a drop (InfeasibleError)
// yields a row of nan metrics rather than aborting; per-scheme counts land in
// the manifest under "infeasible_runs".
ExperimentResult run_experiment(const ExperimentPlan& plan);

}  // namespace hetnet
