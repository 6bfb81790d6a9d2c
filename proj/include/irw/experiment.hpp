#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "irw/local_tests.hpp"
#include "irw/observation_model.hpp"
#include "irw/policy.hpp"

namespace irw {

enum class PolicyKind { Irw, Chernoff };

std::string_view to_string(PolicyKind kind);

struct ModelConfig {
  Family family = Family::Exponential;
  double lambda_g = 10.0;
  double lambda_f = 0.01;
  DecaySchedule decay;

  HierarchicalModel build(std::int64_t leaves) const;
};

struct ExperimentConfig {
  ModelConfig model;
  std::vector<std::int64_t> leaves;
  /// Known target count; empty when the policy does not know L.
  std::optional<std::int64_t> targets = 1;
  /// Targets actually placed when L is unknown to the policy.
  std::int64_t hidden_targets = 0;
  double c = 0.01;
  PolicyKind policy = PolicyKind::Irw;
  LocalTestKind local_test = LocalTestKind::FixedSample;
  double p = 0.5625;
  /// Same K at every level; calibrated per level when empty.
  std::optional<std::int64_t> uniform_k;
  /// SPRT error rates; both 1 - sqrt(p) when empty.
  std::optional<double> false_alarm;
  std::optional<double> miss;
  std::int64_t replications = 1000;
  std::uint64_t master_seed = 20240101;
  std::int64_t sample_cap = 1'000'000'000;
  std::int64_t local_cap_multiplier = 10;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;

  bool multi_target() const { return !targets || *targets > 1; }
  /// Number of targets placed in each replication.
  std::int64_t placed_targets() const { return targets ? *targets : hidden_targets; }
  /// "unknown" or the known count, as written to the CSV.
  std::string targets_label() const;
};

/// Throws ValidationError naming every offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentConfig& config);

/// One CSV row: Monte Carlo estimates at one M.
struct AggregateRow {
  std::int64_t leaves = 0;
  std::string policy;
  std::string local_test;
  std::string targets;
  double c = 0.0;
  /// Over runs that were not truncated.
  double mean_samples = 0.0;
  double se_samples = 0.0;
  /// Truncated runs count as errors.
  double error_rate = 0.0;
  double risk = 0.0;
  std::int64_t truncated = 0;
  std::int64_t replications = 0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

/// Extra per-M quantities kept in the JSON sidecar.
struct RowDiagnostics {
  double mean_terminating_samples = 0.0;
  double mean_leaf_samples = 0.0;
  double mean_local_samples = 0.0;
  double mean_runs = 0.0;
  std::int64_t local_truncations = 0;
};

/// K actually used per (level, declared) for one M.
struct KTable {
  std::int64_t leaves = 0;
  bool uniform = false;
  std::vector<std::tuple<int, std::int64_t, std::int64_t>> entries;
};

struct ExperimentAggregate {
  std::vector<AggregateRow> rows;
  std::vector<RowDiagnostics> diagnostics;
  std::vector<KTable> k_tables;
};

/// Receives every policy step when tracing; forces a single worker thread.
using ExperimentTrace =
    std::function<void(std::int64_t leaves, std::int64_t replication, const TraceEvent&)>;

/// Local-test spec for one M, with lazily calibrated and cached K tables.
LocalTestSpec make_local_spec(const ExperimentConfig& config, const HierarchicalModel& model);

/// The K table of a spec after its lookups so far.
KTable k_table(std::int64_t leaves, const LocalTestSpec& spec);

/// One replication, seeded from (master_seed, M, replication).
RunResult run_replication(const ExperimentConfig& config, const HierarchicalModel& model,
                          const LocalTestSpec& spec, std::int64_t replication,
                          const TraceSink& trace = {});

ExperimentAggregate run_experiment(const ExperimentConfig& config,
                                   const ExperimentTrace& trace = {});

/// Calibrated K tables over every level and reachable declared count.
std::vector<KTable> calibrate_tables(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "M,policy,local_test,L,c,mean_samples,se_samples,error_rate,risk,truncated,replications";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string format_csv(const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> parse_csv(const std::string& text);

nlohmann::json k_tables_json(const std::vector<KTable>& tables);
nlohmann::json sidecar_json(const ExperimentConfig& config, const ExperimentAggregate& agg);

/// Sidecar path for a CSV path: same stem, .json extension.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the CSV and its JSON sidecar. Throws std::runtime_error when a file
/// cannot be written.
void emit_results(const ExperimentConfig& config, const ExperimentAggregate& agg,
                  const std::filesystem::path& csv_path);

/// JSON-lines form of one trace event.
nlohmann::json trace_json(std::int64_t leaves, std::int64_t replication, const TraceEvent& e);

}  // namespace irw
