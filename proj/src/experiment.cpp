#include "irw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "irw/calibration.hpp"
#include "irw/chernoff.hpp"
#include "irw/errors.hpp"
#include "irw/stats.hpp"
#include "irw/tree.hpp"

namespace irw {

std::string_view to_string(PolicyKind kind) {
  return kind == PolicyKind::Irw ? "irw" : "chernoff";
}

HierarchicalModel ModelConfig::build(std::int64_t leaves) const {
  if (family == Family::Bernoulli) return HierarchicalModel::bernoulli(decay, leaves);
  return HierarchicalModel::exponential_flow(lambda_g, lambda_f, leaves);
}

std::string ExperimentConfig::targets_label() const {
  return targets ? std::to_string(*targets) : std::string("unknown");
}

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys = {
    "model", "M", "L", "hidden_L", "c", "policy", "local_test", "p", "K", "p_fa", "p_md",
    "replications", "master_seed", "sample_cap", "local_cap_multiplier", "threads"};
const std::set<std::string> kModelKeys = {"family", "lambda_g", "lambda_f", "mu0", "decay",
                                          "alpha"};

// Reads typed fields and collects every problem instead of stopping at the
// first one.
class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string>& errors) : errors_(errors) {}

  template <typename T>
  std::optional<T> get(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    try {
      return obj.at(key).get<T>();
    } catch (const json::exception&) {
      errors_.push_back(path + ": wrong type");
      return std::nullopt;
    }
  }

  void fail(const std::string& path, const std::string& why) { errors_.push_back(path + ": " + why); }

 private:
  std::vector<std::string>& errors_;
};

std::optional<LocalTestKind> parse_local_test(const std::string& s) {
  if (s == "fixed") return LocalTestKind::FixedSample;
  if (s == "sequential") return LocalTestKind::Sequential;
  if (s == "active") return LocalTestKind::Active;
  return std::nullopt;
}

std::optional<DecayKind> parse_decay(const std::string& s) {
  if (s == "constant") return DecayKind::Constant;
  if (s == "polynomial") return DecayKind::Polynomial;
  if (s == "exponential") return DecayKind::Exponential;
  return std::nullopt;
}

[[noreturn]] void throw_errors(const std::vector<std::string>& errors) {
  std::string msg = "invalid config:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ValidationError(msg);
}

std::vector<std::string> config_errors(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  auto fail = [&](const std::string& field, const std::string& why) {
    errors.push_back(field + ": " + why);
  };
  const auto& m = cfg.model;
  if (m.family == Family::Exponential) {
    if (!(m.lambda_g > 0.0) || !std::isfinite(m.lambda_g)) fail("model.lambda_g", "must be positive");
    if (!(m.lambda_f > 0.0) || !std::isfinite(m.lambda_f)) fail("model.lambda_f", "must be positive");
    if (m.lambda_g == m.lambda_f) fail("model.lambda_f", "must differ from lambda_g");
  } else {
    try {
      m.decay.validate();
    } catch (const std::exception& e) {
      fail("model.decay", e.what());
    }
  }
  if (cfg.leaves.empty()) fail("M", "needs at least one value");
  for (const auto leaves : cfg.leaves) {
    if (leaves < 2 || !is_power_of_two(leaves)) {
      fail("M", std::to_string(leaves) + " is not a power of two >= 2");
    }
  }
  std::int64_t smallest = std::numeric_limits<std::int64_t>::max();
  for (const auto leaves : cfg.leaves) smallest = std::min(smallest, leaves);
  if (cfg.targets) {
    if (*cfg.targets < 1) fail("L", "must be at least 1 or \"unknown\"");
    if (!cfg.leaves.empty() && *cfg.targets > smallest) fail("L", "exceeds the smallest M");
  } else {
    if (cfg.hidden_targets < 0) fail("hidden_L", "must be non-negative");
    if (!cfg.leaves.empty() && cfg.hidden_targets > smallest) fail("hidden_L", "exceeds the smallest M");
    if (cfg.policy == PolicyKind::Chernoff) fail("L", "the Chernoff baseline needs a known L");
  }
  if (m.family == Family::Bernoulli && cfg.multi_target()) {
    fail("L", "the Bernoulli model supports a single known target only");
  }
  if (cfg.policy == PolicyKind::Irw && cfg.multi_target() &&
      cfg.local_test != LocalTestKind::FixedSample) {
    fail("local_test", "multiple or unknown targets need the fixed-sample test");
  }
  if (!(cfg.c > 0.0 && cfg.c < 1.0)) fail("c", "must lie in (0, 1)");
  if (!(cfg.p > 0.5 && cfg.p < 1.0)) fail("p", "must lie in (1/2, 1)");
  if (cfg.uniform_k && *cfg.uniform_k < 1) fail("K", "must be at least 1");
  if (cfg.false_alarm.has_value() != cfg.miss.has_value()) {
    fail("p_fa", "p_fa and p_md must be given together");
  }
  if (cfg.false_alarm && cfg.miss) {
    const double fa = *cfg.false_alarm;
    const double md = *cfg.miss;
    if (!(fa > 0.0 && md > 0.0 && fa + md < 1.0)) fail("p_fa", "need p_fa, p_md > 0 and p_fa + p_md < 1");
  }
  if (cfg.replications < 1) fail("replications", "must be at least 1");
  if (cfg.sample_cap < 1) fail("sample_cap", "must be at least 1");
  if (cfg.local_cap_multiplier < 1) fail("local_cap_multiplier", "must be at least 1");
  if (cfg.threads < 0) fail("threads", "must be non-negative");
  return errors;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> errors;
  FieldReader read(errors);
  ExperimentConfig cfg;
  if (!doc.is_object()) throw_errors({"<root>: expected a JSON object"});
  for (const auto& [key, value] : doc.items()) {
    if (!kTopKeys.contains(key)) read.fail(key, "unknown field");
  }

  if (!doc.contains("model") || !doc.at("model").is_object()) {
    read.fail("model", "required object");
  } else {
    const json& m = doc.at("model");
    for (const auto& [key, value] : m.items()) {
      if (!kModelKeys.contains(key)) read.fail("model." + key, "unknown field");
    }
    const auto family = read.get<std::string>(m, "family", "model.family");
    if (!family || (*family != "exponential" && *family != "bernoulli")) {
      read.fail("model.family", "must be \"exponential\" or \"bernoulli\"");
    } else if (*family == "exponential") {
      cfg.model.family = Family::Exponential;
      const auto g = read.get<double>(m, "lambda_g", "model.lambda_g");
      const auto f = read.get<double>(m, "lambda_f", "model.lambda_f");
      if (!g) read.fail("model.lambda_g", "required");
      if (!f) read.fail("model.lambda_f", "required");
      cfg.model.lambda_g = g.value_or(0.0);
      cfg.model.lambda_f = f.value_or(0.0);
    } else {
      cfg.model.family = Family::Bernoulli;
      const auto mu0 = read.get<double>(m, "mu0", "model.mu0");
      if (!mu0) read.fail("model.mu0", "required");
      cfg.model.decay.mu0 = mu0.value_or(0.0);
      const auto decay = read.get<std::string>(m, "decay", "model.decay").value_or("constant");
      if (const auto kind = parse_decay(decay)) {
        cfg.model.decay.kind = *kind;
      } else {
        read.fail("model.decay", "must be constant, polynomial or exponential");
      }
      cfg.model.decay.alpha = read.get<double>(m, "alpha", "model.alpha").value_or(1.0);
    }
  }

  if (!doc.contains("M")) {
    read.fail("M", "required");
  } else if (doc.at("M").is_array()) {
    if (auto list = read.get<std::vector<std::int64_t>>(doc, "M", "M")) cfg.leaves = *list;
  } else if (auto one = read.get<std::int64_t>(doc, "M", "M")) {
    cfg.leaves = {*one};
  }

  if (doc.contains("L")) {
    const json& l = doc.at("L");
    if (l.is_string() && l.get<std::string>() == "unknown") {
      cfg.targets.reset();
    } else if (l.is_number_integer()) {
      cfg.targets = l.get<std::int64_t>();
    } else {
      read.fail("L", "must be a positive integer or \"unknown\"");
    }
  }
  if (auto v = read.get<std::int64_t>(doc, "hidden_L", "hidden_L")) {
    cfg.hidden_targets = *v;
    if (cfg.targets) read.fail("hidden_L", "only meaningful when L is \"unknown\"");
  }
  if (auto v = read.get<double>(doc, "c", "c")) {
    cfg.c = *v;
  } else {
    read.fail("c", "required");
  }
  if (auto v = read.get<std::string>(doc, "policy", "policy")) {
    if (*v == "irw") {
      cfg.policy = PolicyKind::Irw;
    } else if (*v == "chernoff") {
      cfg.policy = PolicyKind::Chernoff;
    } else {
      read.fail("policy", "must be \"irw\" or \"chernoff\"");
    }
  }
  if (auto v = read.get<std::string>(doc, "local_test", "local_test")) {
    if (auto kind = parse_local_test(*v)) {
      cfg.local_test = *kind;
    } else {
      read.fail("local_test", "must be fixed, sequential or active");
    }
  }
  if (auto v = read.get<double>(doc, "p", "p")) cfg.p = *v;
  if (auto v = read.get<std::int64_t>(doc, "K", "K")) cfg.uniform_k = *v;
  cfg.false_alarm = read.get<double>(doc, "p_fa", "p_fa");
  cfg.miss = read.get<double>(doc, "p_md", "p_md");
  if (auto v = read.get<std::int64_t>(doc, "replications", "replications")) cfg.replications = *v;
  if (auto v = read.get<std::uint64_t>(doc, "master_seed", "master_seed")) cfg.master_seed = *v;
  if (auto v = read.get<std::int64_t>(doc, "sample_cap", "sample_cap")) cfg.sample_cap = *v;
  if (auto v = read.get<std::int64_t>(doc, "local_cap_multiplier", "local_cap_multiplier")) {
    cfg.local_cap_multiplier = *v;
  }
  if (auto v = read.get<int>(doc, "threads", "threads")) cfg.threads = *v;

  if (errors.empty()) errors = config_errors(cfg);
  if (!errors.empty()) throw_errors(errors);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid config: not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

void validate(const ExperimentConfig& config) {
  const auto errors = config_errors(config);
  if (!errors.empty()) throw_errors(errors);
}

json to_json(const ExperimentConfig& cfg) {
  json model;
  if (cfg.model.family == Family::Exponential) {
    model = {{"family", "exponential"}, {"lambda_g", cfg.model.lambda_g}, {"lambda_f", cfg.model.lambda_f}};
  } else {
    model = {{"family", "bernoulli"},
             {"mu0", cfg.model.decay.mu0},
             {"decay", std::string(to_string(cfg.model.decay.kind))},
             {"alpha", cfg.model.decay.alpha}};
  }
  json out = {{"model", model},
              {"M", cfg.leaves},
              {"c", cfg.c},
              {"policy", std::string(to_string(cfg.policy))},
              {"local_test", std::string(to_string(cfg.local_test))},
              {"p", cfg.p},
              {"replications", cfg.replications},
              {"master_seed", cfg.master_seed},
              {"sample_cap", cfg.sample_cap},
              {"local_cap_multiplier", cfg.local_cap_multiplier}};
  if (cfg.targets) {
    out["L"] = *cfg.targets;
  } else {
    out["L"] = "unknown";
    out["hidden_L"] = cfg.hidden_targets;
  }
  if (cfg.uniform_k) out["K"] = *cfg.uniform_k;
  if (cfg.false_alarm) out["p_fa"] = *cfg.false_alarm;
  if (cfg.miss) out["p_md"] = *cfg.miss;
  return out;
}

LocalTestSpec make_local_spec(const ExperimentConfig& config, const HierarchicalModel& model) {
  SampleSizes sizes = SampleSizes::uniform(1);
  if (config.uniform_k) {
    sizes = SampleSizes::uniform(*config.uniform_k);
  } else if (config.policy == PolicyKind::Irw && config.multi_target()) {
    const double p = config.p;
    sizes = SampleSizes::lazy([model, p](int level, std::int64_t declared) {
      return calibrate_multi_k(model, level, declared, p);
    });
  } else {
    const double p = config.p;
    sizes = SampleSizes::lazy([model, p](int level, std::int64_t) {
      return calibrate_k(model, level, p);
    });
  }
  LocalTestSpec spec = LocalTestSpec::make(config.local_test, config.p, std::move(sizes));
  if (config.false_alarm && config.miss) {
    spec.sprt = SprtThresholds::from_error_rates(*config.false_alarm, *config.miss);
  }
  spec.cap_multiplier = config.local_cap_multiplier;
  return spec;
}

KTable k_table(std::int64_t leaves, const LocalTestSpec& spec) {
  KTable t;
  t.leaves = leaves;
  t.uniform = spec.sizes.is_uniform();
  if (t.uniform) {
    t.entries.emplace_back(0, 0, spec.sizes.at(1, 0));
  } else {
    t.entries = spec.sizes.entries();
  }
  return t;
}

namespace {

// Fills the table over the (level, declared) pairs a run can reach.
void warm_table(const ExperimentConfig& config, const HierarchicalModel& model,
                const LocalTestSpec& spec) {
  if (config.policy == PolicyKind::Chernoff) return;
  const bool multi = config.multi_target();
  const std::int64_t placed = config.placed_targets();
  const std::int64_t reach = config.targets ? placed - 1 : placed;
  for (int level = 1; level <= model.depth(); ++level) {
    const std::int64_t child_capacity = std::int64_t{1} << (level - 1);
    const std::int64_t top = multi ? std::min(reach, child_capacity - 1) : 0;
    for (std::int64_t d = 0; d <= std::max<std::int64_t>(top, 0); ++d) spec.sizes.at(level, d);
  }
}

}  // namespace

std::vector<KTable> calibrate_tables(const ExperimentConfig& config) {
  validate(config);
  std::vector<KTable> out;
  for (const auto leaves : config.leaves) {
    const auto model = config.model.build(leaves);
    const auto spec = make_local_spec(config, model);
    warm_table(config, model, spec);
    out.push_back(k_table(leaves, spec));
  }
  return out;
}

RunResult run_replication(const ExperimentConfig& config, const HierarchicalModel& model,
                          const LocalTestSpec& spec, std::int64_t replication,
                          const TraceSink& trace) {
  RandomStream rng(derive_seed(config.master_seed, static_cast<std::uint64_t>(model.leaves()),
                               static_cast<std::uint64_t>(replication)));
  const Tree tree(model.leaves());
  const GroundTruth truth = place_targets(tree, config.placed_targets(), rng);
  if (config.policy == PolicyKind::Chernoff) {
    return chernoff_run(model, truth, *config.targets, config.c, rng, config.sample_cap);
  }
  RunOptions options{config.sample_cap, trace};
  if (!config.targets) return run_unknown_targets(model, truth, spec, config.c, rng, options);
  if (*config.targets == 1) return run_single_target(model, truth, spec, config.c, rng, options);
  return run_multi_target(model, truth, *config.targets, spec, config.c, rng, options);
}

ExperimentAggregate run_experiment(const ExperimentConfig& config, const ExperimentTrace& trace) {
  validate(config);
  ExperimentAggregate agg;
  const auto reps = config.replications;
  for (const auto leaves : config.leaves) {
    const auto model = config.model.build(leaves);
    const auto spec = make_local_spec(config, model);
    warm_table(config, model, spec);

    std::vector<RunResult> results(static_cast<std::size_t>(reps));
    if (trace) {
      for (std::int64_t r = 0; r < reps; ++r) {
        TraceSink sink = [&trace, leaves, r](const TraceEvent& e) { trace(leaves, r, e); };
        results[static_cast<std::size_t>(r)] = run_replication(config, model, spec, r, sink);
      }
    } else {
      unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                            : std::max(1u, std::thread::hardware_concurrency());
      workers = static_cast<unsigned>(std::min<std::int64_t>(workers, reps));
      std::atomic<std::int64_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto work = [&] {
        try {
          for (std::int64_t r = next++; r < reps; r = next++) {
            results[static_cast<std::size_t>(r)] = run_replication(config, model, spec, r);
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = reps;
        }
      };
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
      }
      if (failure) std::rethrow_exception(failure);
    }

    // Reduction in replication order, independent of scheduling.
    RunningMoments samples;
    RunningMoments terminating;
    RunningMoments leaf;
    RunningMoments local;
    RunningMoments runs;
    std::int64_t errors = 0;
    std::int64_t truncated = 0;
    std::int64_t local_truncations = 0;
    for (const auto& r : results) {
      if (!r.correct) ++errors;
      local_truncations += r.local_truncations;
      if (r.truncated) {
        ++truncated;
        continue;
      }
      samples.add(static_cast<double>(r.samples));
      terminating.add(static_cast<double>(r.terminating_samples));
      leaf.add(static_cast<double>(r.leaf_samples));
      local.add(static_cast<double>(r.local_samples));
      runs.add(static_cast<double>(r.runs));
    }
    AggregateRow row;
    row.leaves = leaves;
    row.policy = std::string(to_string(config.policy));
    row.local_test = config.policy == PolicyKind::Chernoff ? "none" : std::string(to_string(config.local_test));
    row.targets = config.targets_label();
    row.c = config.c;
    row.mean_samples = samples.mean();
    row.se_samples = samples.standard_error();
    row.error_rate = static_cast<double>(errors) / static_cast<double>(reps);
    row.risk = row.error_rate + config.c * row.mean_samples;
    row.truncated = truncated;
    row.replications = reps;
    agg.rows.push_back(row);
    agg.diagnostics.push_back({terminating.mean(), leaf.mean(), local.mean(), runs.mean(),
                               local_truncations});
    agg.k_tables.push_back(k_table(leaves, spec));
  }
  return agg;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_csv(const std::vector<AggregateRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.leaves) + ',' + r.policy + ',' + r.local_test + ',' + r.targets + ',' +
           format_double(r.c) + ',' + format_double(r.mean_samples) + ',' +
           format_double(r.se_samples) + ',' + format_double(r.error_rate) + ',' +
           format_double(r.risk) + ',' + std::to_string(r.truncated) + ',' +
           std::to_string(r.replications) + '\n';
  }
  return out;
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number in CSV: " + s);
  }
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer in CSV: " + s);
  }
  return v;
}

}  // namespace

std::vector<AggregateRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<AggregateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) f.push_back(cell);
    if (f.size() != 11) throw std::runtime_error("expected 11 CSV fields, got " + std::to_string(f.size()));
    AggregateRow r;
    r.leaves = parse_int(f[0]);
    r.policy = f[1];
    r.local_test = f[2];
    r.targets = f[3];
    r.c = parse_double(f[4]);
    r.mean_samples = parse_double(f[5]);
    r.se_samples = parse_double(f[6]);
    r.error_rate = parse_double(f[7]);
    r.risk = parse_double(f[8]);
    r.truncated = parse_int(f[9]);
    r.replications = parse_int(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

json k_tables_json(const std::vector<KTable>& tables) {
  json out = json::array();
  for (const auto& t : tables) {
    json entries = json::array();
    for (const auto& [level, declared, k] : t.entries) {
      entries.push_back({{"level", level}, {"declared", declared}, {"K", k}});
    }
    out.push_back({{"M", t.leaves}, {"uniform", t.uniform}, {"entries", entries}});
  }
  return out;
}

namespace {

// JSON has no NaN; missing means are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json sidecar_json(const ExperimentConfig& config, const ExperimentAggregate& agg) {
  json diag = json::array();
  for (std::size_t i = 0; i < agg.diagnostics.size(); ++i) {
    const auto& d = agg.diagnostics[i];
    diag.push_back({{"M", agg.rows[i].leaves},
                    {"mean_terminating_samples", number_or_null(d.mean_terminating_samples)},
                    {"mean_leaf_samples", number_or_null(d.mean_leaf_samples)},
                    {"mean_local_samples", number_or_null(d.mean_local_samples)},
                    {"mean_runs", number_or_null(d.mean_runs)},
                    {"local_truncations", d.local_truncations}});
  }
  return {{"config", to_json(config)},
          {"master_seed", config.master_seed},
          {"k_tables", k_tables_json(agg.k_tables)},
          {"diagnostics", diag}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".json");
  if (p == csv_path) p += ".json";
  return p;
}

void emit_results(const ExperimentConfig& config, const ExperimentAggregate& agg,
                  const std::filesystem::path& csv_path) {
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
  };
  write(csv_path, format_csv(agg.rows));
  write(sidecar_path(csv_path), sidecar_json(config, agg).dump(2) + '\n');
}

json trace_json(std::int64_t leaves, std::int64_t replication, const TraceEvent& e) {
  json out = {{"M", leaves},
              {"rep", replication},
              {"event", std::string(to_string(e.kind))},
              {"node", {e.node.level, e.node.index}},
              {"samples", e.samples},
              {"samples_total", e.samples_total},
              {"next", {e.next.level, e.next.index}}};
  if (e.kind == TraceEvent::Kind::LocalTest) {
    out["verdict"] = std::string(to_string(e.verdict));
    out["sllr"] = {e.sllr_a, e.sllr_b};
  } else {
    out["sllr"] = e.sllr_a;
    out[e.kind == TraceEvent::Kind::LeafVisit ? "declared" : "stopped"] = e.decisive;
  }
  return out;
}

}  // namespace irw
