#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "irw/errors.hpp"
#include "irw/experiment.hpp"
#include "irw/verify.hpp"

namespace {

struct RunArgs {
  std::string config;
  std::vector<std::int64_t> leaves;
  std::optional<double> c;
  std::optional<std::string> policy;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  std::optional<int> threads;
  std::string out = "results.csv";
  std::string trace;
};

int run_command(const RunArgs& args) {
  irw::ExperimentConfig cfg = irw::load_config(args.config);
  if (!args.leaves.empty()) cfg.leaves = args.leaves;
  if (args.c) cfg.c = *args.c;
  if (args.policy) {
    if (*args.policy == "irw") {
      cfg.policy = irw::PolicyKind::Irw;
    } else if (*args.policy == "chernoff") {
      cfg.policy = irw::PolicyKind::Chernoff;
    } else {
      throw irw::ValidationError("invalid config:\n  policy: must be \"irw\" or \"chernoff\"");
    }
  }
  if (args.seed) cfg.master_seed = *args.seed;
  if (args.reps) cfg.replications = *args.reps;
  if (args.threads) cfg.threads = *args.threads;
  irw::validate(cfg);

  irw::ExperimentAggregate agg;
  if (!args.trace.empty()) {
    std::ofstream trace(args.trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw std::runtime_error("cannot write " + args.trace);
    agg = irw::run_experiment(cfg, [&trace](std::int64_t leaves, std::int64_t rep,
                                            const irw::TraceEvent& e) {
      trace << irw::trace_json(leaves, rep, e).dump() << '\n';
    });
  } else {
    agg = irw::run_experiment(cfg);
  }
  irw::emit_results(cfg, agg, args.out);
  std::cout << irw::format_csv(agg.rows);
  return 0;
}

int calibrate_command(const std::string& config) {
  const irw::ExperimentConfig cfg = irw::load_config(config);
  std::cout << irw::k_tables_json(irw::calibrate_tables(cfg)).dump(2) << '\n';
  return 0;
}

int verify_command() {
  const auto checks = irw::oracle_suite();
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.detail << "]\n";
    if (!c.passed) ++failed;
  }
  std::cout << checks.size() - static_cast<std::size_t>(failed) << '/' << checks.size()
            << " oracle checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-directed random walk search over tree hierarchies"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("config", run_args.config, "Experiment JSON")->required();
  run->add_option("--M", run_args.leaves, "Leaf counts (comma separated)")->delimiter(',');
  run->add_option("--c", run_args.c, "Sampling cost per observation");
  run->add_option("--policy", run_args.policy, "irw or chernoff");
  run->add_option("--seed", run_args.seed, "Master seed");
  run->add_option("--reps", run_args.reps, "Replications per M");
  run->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
  run->add_option("--out", run_args.out, "CSV output path; the JSON sidecar goes next to it");
  run->add_option("--trace", run_args.trace, "Write the trajectory as JSON lines");

  std::string calib_config;
  auto* calibrate = app.add_subcommand("calibrate", "Print calibrated K tables");
  calibrate->add_option("config", calib_config, "Experiment JSON")->required();

  auto* verify = app.add_subcommand("verify", "Run the oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_command(run_args);
    if (*calibrate) return calibrate_command(calib_config);
    if (*verify) return verify_command();
  } catch (const irw::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
