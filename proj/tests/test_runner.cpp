#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hetnet/experiment.hpp"
#include "test_support.hpp"

using namespace hetnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config text: defaults, strictness, field naming") {
  SUBCASE("empty text yields the Table-1 defaults") {
    const ScenarioConfig cfg = parse_config_text("");
    CHECK(cfg.bandwidth_hz == 1e7);
    CHECK(cfg.noise_psd_dbm_hz == -127.0);
    CHECK(cfg.mbs_power_dbm == 46.0);
    CHECK(cfg.pbs_power_dbm == 30.0);
    CHECK(cfg.r_min_bps == 1e5);
    CHECK(cfg.pathloss_exponent == 3.5);
  }

  SUBCASE("values, comments and whitespace parse") {
    const ScenarioConfig cfg = parse_config_text(
        "# scenario\n"
        "num_users = 24\n"
        "num_bs = 3   ; trailing comment\n"
        "seed = 99\n");
    CHECK(cfg.num_users == 24);
    CHECK(cfg.num_bs == 3);
    CHECK(cfg.seed == 99);
  }

  SUBCASE("negative bandwidth is rejected by name") {
    try {
      parse_config_text("bandwidth_hz = -5\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
      REQUIRE(err.issues().size() == 1);
      CHECK(err.issues()[0].find("bandwidth_hz") != std::string::npos);
    }
  }

  SUBCASE("num_bs = 1 violates the two-tier invariant") {
    CHECK_THROWS_AS(parse_config_text("num_bs = 1\n"), ConfigError);
  }

  SUBCASE("unknown keys are rejected") {
    try {
      parse_config_text("bandwidth = 1e7\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
      CHECK(err.issues()[0].find("unknown key") != std::string::npos);
    }
  }

  SUBCASE("unparseable values are rejected") {
    CHECK_THROWS_AS(parse_config_text("num_users = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("num_users = 12 users\n"), ConfigError);
  }

  SUBCASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("seed = 1\nseed = 2\n"), ConfigError);
  }
}

TEST_CASE("plan validation") {
  ExperimentPlan plan;
  plan.base = testsupport::table1_config(8, 2, 1);

  SUBCASE("drops must be positive") {
    plan.drops = 0;
    CHECK_THROWS_AS(plan.validate(), ConfigError);
  }

  SUBCASE("brute force is fenced to small N") {
    plan.schemes = {Scheme::kBruteForce};
    plan.n_users_sweep = {16};
    CHECK_THROWS_AS(plan.validate(), ConfigError);
    plan.n_users_sweep = {10};
    CHECK_NOTHROW(plan.validate());
  }

  SUBCASE("sweep combinations are each validated") {
    plan.n_users_sweep = {4};
    plan.b_sweep = {5};  // 4 users cannot cover 5 BSs
    CHECK_THROWS_AS(plan.validate(), ConfigError);
  }
}

TEST_CASE("scheme names round-trip") {
  for (Scheme scheme :
       {Scheme::kScgaNbs, Scheme::kMaxSumRate, Scheme::kBruteForce})
    CHECK(parse_scheme(to_string(scheme)) == scheme);
  CHECK_FALSE(parse_scheme("simulated-annealing").has_value());
}

TEST_CASE("a one-drop single-scheme run emits exactly one data row") {
  ExperimentPlan plan;
  plan.base = testsupport::table1_config(8, 2, 42);
  plan.schemes = {Scheme::kMaxSumRate};
  plan.drops = 1;
  plan.out_dir = fresh_dir("hetnet_test_single");

  const ExperimentResult result = run_experiment(plan);
  CHECK(result.rows == 1);
  const std::string csv = slurp(result.results_csv);
  CHECK(count_lines(csv) == 2);  // header + 1 row
  CHECK(csv.rfind("n_users,num_bs,scheme,drop,nash_product,sum_rate_bps,"
                  "avg_rate_bps,jain_bs,jain_user,srr_raw,srr_clamped,"
                  "qos_frac,load_b0,load_b1\n",
                  0) == 0);
  fs::remove_all(plan.out_dir);
}

TEST_CASE("row count is the full sweep product and re-runs are byte-identical") {
  ExperimentPlan plan;
  plan.base = testsupport::table1_config(8, 2, 7);
  plan.n_users_sweep = {8, 10};
  plan.b_sweep = {2, 3};
  plan.schemes = {Scheme::kScgaNbs, Scheme::kMaxSumRate};
  plan.drops = 3;
  plan.out_dir = fresh_dir("hetnet_test_rows_a");

  const ExperimentResult first = run_experiment(plan);
  CHECK(first.rows == 2 * 2 * 2 * 3);
  CHECK(count_lines(slurp(first.results_csv)) == first.rows + 1);

  ExperimentPlan again = plan;
  again.out_dir = fresh_dir("hetnet_test_rows_b");
  const ExperimentResult second = run_experiment(again);
  CHECK(slurp(first.results_csv) == slurp(second.results_csv));
  CHECK(slurp(first.summary_csv) == slurp(second.summary_csv));

  // Parallel execution must not change the output bytes.
  ExperimentPlan parallel = plan;
  parallel.out_dir = fresh_dir("hetnet_test_rows_c");
  parallel.parallel = 4;
  const ExperimentResult third = run_experiment(parallel);
  CHECK(slurp(first.results_csv) == slurp(third.results_csv));

  fs::remove_all(plan.out_dir);
  fs::remove_all(again.out_dir);
  fs::remove_all(parallel.out_dir);
}

TEST_CASE("manifest records the configuration and per-user dump is optional") {
  ExperimentPlan plan;
  plan.base = testsupport::table1_config(6, 2, 11);
  plan.schemes = {Scheme::kMaxSumRate};
  plan.drops = 2;
  plan.emit_per_user = true;
  plan.out_dir = fresh_dir("hetnet_test_manifest");

  const ExperimentResult result = run_experiment(plan);
  const auto manifest = nlohmann::json::parse(slurp(result.manifest_json));
  CHECK(manifest["seed"] == 11);
  CHECK(manifest["scenario"]["bandwidth_hz"] == 1e7);
  CHECK(manifest["plan"]["drops"] == 2);
  CHECK(manifest["plan"]["schemes"][0] == "max-sum-rate");

  REQUIRE_FALSE(result.per_user_csv.empty());
  const std::string per_user = slurp(result.per_user_csv);
  CHECK(count_lines(per_user) == 1 + 2 * 6);  // header + drops * users
  fs::remove_all(plan.out_dir);
}

TEST_CASE("an infeasible drop yields a nan row instead of aborting the run") {
  // With this seed, drop 4 at N=20, B=7 leaves some BS with a negative
  // utility under every alpha, so scga-nbs raises InfeasibleError.
  const ScenarioConfig cfg = testsupport::table1_config(20, 7, 1);
  CHECK_THROWS_AS(run_scheme(make_drop_radio(cfg, 4), Scheme::kScgaNbs),
                  InfeasibleError);

  ExperimentPlan plan;
  plan.base = cfg;
  plan.schemes = {Scheme::kScgaNbs};
  plan.drops = 5;  // drops 0..4; only drop 4 is infeasible
  plan.out_dir = fresh_dir("hetnet_test_infeasible");

  const ExperimentResult result = run_experiment(plan);
  CHECK(result.rows == 5);
  const std::string csv = slurp(result.results_csv);
  CHECK(count_lines(csv) == 6);
  CHECK(csv.find("scga-nbs,4,nan,nan,nan,nan,nan,nan,nan,nan,,,,,,,") !=
        std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(result.manifest_json));
  CHECK(manifest["infeasible_runs"]["scga-nbs"] == 1);

  // Aggregates are computed over the four drops that produced outcomes.
  const std::string summary = slurp(result.summary_csv);
  CHECK(summary.find("20,7,scga-nbs,nash_product,4,") != std::string::npos);
  fs::remove_all(plan.out_dir);
}

TEST_CASE("drop radios are deterministic in (seed, drop) and differ across drops") {
  const ScenarioConfig cfg = testsupport::table1_config(10, 3, 123);
  const Radio a = make_drop_radio(cfg, 0);
  const Radio b = make_drop_radio(cfg, 0);
  const Radio c = make_drop_radio(cfg, 1);
  CHECK((a.gains().array() == b.gains().array()).all());
  CHECK((a.gains().array() != c.gains().array()).any());
}
