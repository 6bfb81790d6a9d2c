#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "irw/errors.hpp"
#include "irw/experiment.hpp"
#include "irw/stats.hpp"

using namespace irw;
using nlohmann::json;

namespace {

json small_config() {
  return json::parse(R"({
    "model": {"family": "exponential", "lambda_g": 10, "lambda_f": 0.01},
    "M": [4, 16], "L": 1, "c": 0.001, "policy": "irw", "local_test": "fixed",
    "K": 3, "replications": 200, "master_seed": 42
  })");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "irw_experiment_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string validation_message(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("config round trip through JSON") {
  const auto cfg = parse_config(small_config());
  CHECK(cfg.leaves == std::vector<std::int64_t>{4, 16});
  CHECK(cfg.targets == 1);
  CHECK(cfg.uniform_k == 3);
  CHECK(cfg.master_seed == 42);
  const auto again = parse_config(to_json(cfg));
  CHECK(to_json(again) == to_json(cfg));

  auto unknown = small_config();
  unknown["L"] = "unknown";
  unknown["hidden_L"] = 2;
  unknown.erase("K");
  const auto u = parse_config(unknown);
  CHECK_FALSE(u.targets.has_value());
  CHECK(u.placed_targets() == 2);
  CHECK(u.targets_label() == "unknown");
  CHECK(to_json(parse_config(to_json(u))) == to_json(u));
}

TEST_CASE("validation lists every offending field") {
  auto doc = small_config();
  doc["M"] = {4, 12};
  doc["c"] = 1.5;
  doc["bogus"] = true;
  std::string msg = validation_message(doc);
  CHECK(msg.find("bogus") != std::string::npos);

  doc.erase("bogus");
  msg = validation_message(doc);
  CHECK(msg.rfind("invalid config:", 0) == 0);
  CHECK(msg.find("M: 12 is not a power of two") != std::string::npos);
  CHECK(msg.find("c: must lie in (0, 1)") != std::string::npos);

  auto bern = json::parse(R"({"model": {"family": "bernoulli", "mu0": 0.4}, "M": [8], "L": 2, "c": 0.01})");
  CHECK(validation_message(bern).find("L:") != std::string::npos);
  bern["L"] = 1;
  bern["local_test"] = "sideways";
  CHECK(validation_message(bern).find("local_test") != std::string::npos);

  auto multi = small_config();
  multi["L"] = 3;
  multi["local_test"] = "active";
  CHECK(validation_message(multi).find("local_test") != std::string::npos);
  multi["local_test"] = "fixed";
  multi["L"] = 5;
  CHECK(validation_message(multi).find("L: exceeds the smallest M") != std::string::npos);

  auto cher = small_config();
  cher["policy"] = "chernoff";
  cher["L"] = "unknown";
  CHECK(validation_message(cher).find("Chernoff") != std::string::npos);
  CHECK(validation_message(small_config()).empty());
}

TEST_CASE("CSV format") {
  CHECK(format_csv({}) == std::string(kCsvHeader) + "\n");
  AggregateRow r{8, "irw", "fixed", "1", 0.01, 12.5, 0.25, 0.0, 0.125, 0, 100};
  const auto text = format_csv({r});
  CHECK(text == std::string(kCsvHeader) + "\n8,irw,fixed,1,0.01,12.5,0.25,0,0.125,0,100\n");
  const auto back = parse_csv(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == r);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-13) == "1e-13");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK_THROWS(parse_csv("M,policy\n"));
}

TEST_CASE("experiment rows: risk identity and exact CSV round trip") {
  const auto cfg = parse_config(small_config());
  const auto agg = run_experiment(cfg);
  REQUIRE(agg.rows.size() == 2);
  for (const auto& row : agg.rows) {
    CHECK(row.policy == "irw");
    CHECK(row.local_test == "fixed");
    CHECK(row.targets == "1");
    CHECK(row.replications == 200);
    CHECK(row.mean_samples > 0.0);
    CHECK(std::abs(row.risk - (row.error_rate + row.c * row.mean_samples)) <= 1e-12 * std::max(1.0, row.risk));
  }
  const auto back = parse_csv(format_csv(agg.rows));
  CHECK(back == agg.rows);
}

TEST_CASE("byte-identical reruns and thread-count independence") {
  auto cfg = parse_config(small_config());
  cfg.threads = 1;
  const auto a = run_experiment(cfg);
  cfg.threads = 4;
  const auto b = run_experiment(cfg);
  CHECK(format_csv(a.rows) == format_csv(b.rows));

  const auto p1 = scratch("run1.csv");
  const auto p2 = scratch("run2.csv");
  emit_results(cfg, a, p1);
  emit_results(cfg, run_experiment(cfg), p2);
  CHECK(read_file(p1) == read_file(p2));
  CHECK(read_file(sidecar_path(p1)) == read_file(sidecar_path(p2)));
  CHECK(sidecar_path(p1).extension() == ".json");
}

TEST_CASE("sidecar carries config, seed and K tables") {
  auto doc = small_config();
  doc.erase("K");
  doc["L"] = 2;
  const auto cfg = parse_config(doc);
  const auto agg = run_experiment(cfg);
  const auto side = sidecar_json(cfg, agg);
  CHECK(side.at("master_seed") == 42);
  CHECK(side.at("config") == to_json(cfg));
  const auto& tables = side.at("k_tables");
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].at("M") == 4);
  CHECK(tables[0].at("uniform") == false);
  bool saw_declared = false;
  for (const auto& e : tables[1].at("entries")) {
    CHECK(e.at("K").get<std::int64_t>() >= 1);
    if (e.at("declared").get<int>() > 0) saw_declared = true;
  }
  CHECK(saw_declared);
  CHECK(side.at("diagnostics").size() == 2);
  CHECK(side.at("diagnostics")[0].at("mean_runs").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("calibrated tables cover every level") {
  auto doc = small_config();
  doc.erase("K");
  doc["M"] = {16};
  const auto tables = calibrate_tables(parse_config(doc));
  REQUIRE(tables.size() == 1);
  std::vector<int> levels;
  for (const auto& [level, declared, k] : tables[0].entries) {
    CHECK(declared == 0);
    CHECK(k >= 1);
    levels.push_back(level);
  }
  CHECK(levels == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("Chernoff rows and traced runs") {
  auto doc = small_config();
  doc["policy"] = "chernoff";
  doc["replications"] = 20;
  const auto cfg = parse_config(doc);
  const auto agg = run_experiment(cfg);
  CHECK(agg.rows[0].policy == "chernoff");
  CHECK(agg.rows[0].local_test == "none");

  auto irw_cfg = parse_config(small_config());
  irw_cfg.replications = 3;
  std::vector<json> lines;
  const auto traced = run_experiment(irw_cfg, [&](std::int64_t m, std::int64_t rep, const TraceEvent& e) {
    lines.push_back(trace_json(m, rep, e));
  });
  irw_cfg.threads = 1;
  CHECK(format_csv(traced.rows) == format_csv(run_experiment(irw_cfg).rows));
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front().at("event") == "local_test");
  CHECK(lines.front().at("node") == json::array({2, 0}));
  CHECK(lines.front().contains("verdict"));
  std::int64_t declarations = 0;
  for (const auto& l : lines) {
    if (l.at("event") == "leaf_visit" && l.at("declared") == true) ++declarations;
  }
  CHECK(declarations == 2 * 3);
}

TEST_CASE("truncated runs count as errors and are excluded from the mean") {
  auto cfg = parse_config(small_config());
  cfg.leaves = {16};
  cfg.sample_cap = 1;
  cfg.replications = 10;
  const auto agg = run_experiment(cfg);
  CHECK(agg.rows[0].truncated == 10);
  CHECK(agg.rows[0].error_rate == 1.0);
  CHECK(std::isnan(agg.rows[0].mean_samples));
  CHECK(format_csv(agg.rows).find(",nan,") != std::string::npos);
  CHECK(sidecar_json(cfg, agg).at("diagnostics")[0].at("mean_runs").is_null());
}

TEST_CASE("least-squares fit and running moments") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 5, 7, 9};
  const auto exact = fit_line(x, y);
  CHECK(exact.slope == doctest::Approx(2.0));
  CHECK(exact.intercept == doctest::Approx(1.0));
  CHECK(exact.r_squared == doctest::Approx(1.0));
  // Hand-computed: slope 3/5, R^2 = 9/25.
  const std::vector<double> noisy = {2, 1, 4, 3};
  const auto fit = fit_line(x, noisy);
  CHECK(fit.slope == doctest::Approx(0.6));
  CHECK(fit.r_squared == doctest::Approx(0.36));
  CHECK_THROWS(fit_line(std::vector<double>{1, 1}, std::vector<double>{1, 2}));

  RunningMoments m;
  CHECK(std::isnan(m.mean()));
  for (double v : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) m.add(v);
  CHECK(m.mean() == doctest::Approx(5.0));
  // Sample variance 32/7.
  CHECK(m.standard_error() == doctest::Approx(std::sqrt(32.0 / 7.0 / 8.0)));
}
