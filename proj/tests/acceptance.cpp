// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "irw/experiment.hpp"
#include "irw/local_tests.hpp"
#include "irw/oracle.hpp"
#include "irw/stats.hpp"

using namespace irw;

namespace {

const std::filesystem::path kConfigs = IRW_CONFIG_DIR;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

ExperimentConfig config(const std::string& name) { return load_config(kConfigs / name); }

std::vector<double> log2_of(const std::vector<std::int64_t>& leaves) {
  std::vector<double> out;
  for (auto m : leaves) out.push_back(std::log2(static_cast<double>(m)));
  return out;
}

std::vector<double> as_double(const std::vector<std::int64_t>& v) {
  return {v.begin(), v.end()};
}

std::vector<double> means(const ExperimentAggregate& agg) {
  std::vector<double> out;
  for (const auto& r : agg.rows) out.push_back(r.mean_samples);
  return out;
}

std::string series(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

// Shared between criteria 1-3.
const ExperimentAggregate& single_exp(bool chernoff) {
  static const ExperimentAggregate irw_agg = run_experiment(config("single_exp_irw.json"));
  static const ExperimentAggregate chernoff_agg = run_experiment(config("single_exp_chernoff.json"));
  return chernoff ? chernoff_agg : irw_agg;
}

double mean_at(const ExperimentAggregate& agg, std::int64_t leaves) {
  for (const auto& r : agg.rows) {
    if (r.leaves == leaves) return r.mean_samples;
  }
  throw std::runtime_error("M not in experiment");
}

Outcome logarithmic_scaling() {
  const auto cfg = config("single_exp_irw.json");
  const auto q = means(single_exp(false));
  const auto log_fit = fit_line(log2_of(cfg.leaves), q);
  const auto lin_fit = fit_line(as_double(cfg.leaves), q);
  return {log_fit.r_squared >= 0.95 && lin_fit.r_squared < log_fit.r_squared,
          "Q=" + series(q) + " R2(log2M)=" + fmt(log_fit.r_squared, 6) +
              " R2(M)=" + fmt(lin_fit.r_squared, 6)};
}

Outcome chernoff_ratio() {
  const double r16 = mean_at(single_exp(true), 16) / mean_at(single_exp(false), 16);
  const double r32 = mean_at(single_exp(true), 32) / mean_at(single_exp(false), 32);
  return {r16 >= 2.5 && r32 >= 2.5, "ratio(M=16)=" + fmt(r16) + " ratio(M=32)=" + fmt(r32)};
}

Outcome chernoff_linear() {
  const auto cfg = config("single_exp_chernoff.json");
  const auto q = means(single_exp(true));
  const auto fit = fit_line(as_double(cfg.leaves), q);
  return {fit.r_squared >= 0.95, "Q=" + series(q) + " R2(M)=" + fmt(fit.r_squared, 6)};
}

Outcome error_bound() {
  bool ok = true;
  std::string detail;
  for (const double c : {1e-2, 1e-3}) {
    for (const std::int64_t targets : {1, 3}) {
      ExperimentConfig cfg;
      cfg.model = {Family::Exponential, 10.0, 0.01, {}};
      cfg.leaves = {8, 64};
      cfg.targets = targets;
      cfg.c = c;
      cfg.replications = std::max<std::int64_t>(
          10000, static_cast<std::int64_t>(std::ceil(100.0 / (static_cast<double>(targets) * c))));
      cfg.master_seed = 4;
      const auto agg = run_experiment(cfg);
      for (const auto& row : agg.rows) {
        const double bound = 10.0 * static_cast<double>(targets) * c;
        ok = ok && row.error_rate <= bound;
        detail += " M=" + std::to_string(row.leaves) + ",L=" + std::to_string(targets) +
                  ",c=" + fmt(c) + ":" + fmt(row.error_rate) + "<=" + fmt(bound);
      }
    }
  }
  return {ok, detail.substr(1)};
}

Outcome multi_target_linear() {
  auto cfg = config("multi_exp_irw.json");
  cfg.leaves = {64};
  std::vector<double> ls, q;
  for (std::int64_t l = 1; l <= 5; ++l) {
    cfg.targets = l;
    ls.push_back(static_cast<double>(l));
    q.push_back(run_experiment(cfg).rows[0].mean_samples);
  }
  const auto fit = fit_line(ls, q);
  return {fit.r_squared >= 0.95, "Q=" + series(q) + " R2(L)=" + fmt(fit.r_squared, 6)};
}

Outcome calibration_k7() {
  constexpr double p = 0.5625;
  const auto k7 = oracle::exact_fixed_confidence(7, 0.4);
  const auto k6 = oracle::exact_fixed_confidence(6, 0.4);
  std::int64_t minimal = 1;
  for (;; ++minimal) {
    const auto c = oracle::exact_fixed_confidence(minimal, 0.4);
    if (c.p_g > p && c.p_f > p) break;
  }
  const bool k7_ok = k7.p_g > p && k7.p_f > p;
  const bool k6_fails = !(k6.p_g > p && k6.p_f > p);
  return {k7_ok && k6_fails, "K=7: p_g=" + fmt(k7.p_g) + " p_f=" + fmt(k7.p_f) + " K=6: p_g=" +
                                 fmt(k6.p_g) + " p_f=" + fmt(k6.p_f) +
                                 " oracle minimal K=" + std::to_string(minimal)};
}

Outcome threshold_constants() {
  const auto s = SprtThresholds::for_confidence(0.5625);
  const auto a = ActiveThresholds::for_confidence(0.5625);
  auto r4 = [](double v) { return std::round(v * 1e4) / 1e4; };
  const bool ok = r4(s.upper) == 1.0986 && r4(s.lower) == -1.0986 && r4(a.upper) == 0.9445 &&
                  r4(a.lower) == -0.9445;
  return {ok, "gamma=(" + fmt(s.upper, 6) + "," + fmt(s.lower, 6) + ") nu=(" + fmt(a.upper, 6) +
                  "," + fmt(a.lower, 6) + ")"};
}

Outcome local_test_ranking() {
  const auto fixed = run_experiment(config("flip_fixed.json"));
  const auto seq = run_experiment(config("flip_sequential.json"));
  const auto act = run_experiment(config("flip_active.json"));
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < fixed.rows.size(); ++i) {
    const auto& f = fixed.rows[i];
    const auto& s = seq.rows[i];
    const auto& a = act.rows[i];
    ok = ok && a.mean_samples <= s.mean_samples + s.se_samples + a.se_samples &&
         s.mean_samples <= f.mean_samples + f.se_samples + s.se_samples;
    detail += " M=" + std::to_string(f.leaves) + ":" + fmt(a.mean_samples) + "/" +
              fmt(s.mean_samples) + "/" + fmt(f.mean_samples);
  }
  return {ok, "active/sequential/fixed" + detail};
}

Outcome decay_regimes() {
  auto slope_of = [](const std::string& name, int power, bool per_m) {
    const auto cfg = config(name);
    const auto q = means(run_experiment(cfg));
    std::vector<double> x = log2_of(cfg.leaves), ratio;
    for (std::size_t i = 0; i < q.size(); ++i) {
      ratio.push_back(per_m ? q[i] / static_cast<double>(cfg.leaves[i]) : q[i] / std::pow(x[i], power));
    }
    return std::make_pair(fit_line(x, ratio).slope, ratio);
  };
  const auto [poly, poly_r] = slope_of("decay_polynomial.json", 3, false);
  const auto [sub, sub_r] = slope_of("decay_exp_1p2.json", 0, true);
  const auto [sup, sup_r] = slope_of("decay_exp_1p6.json", 0, true);
  return {poly <= 0.0 && sub < 0.0 && sup >= 0.0,
          "Q/log2M^3 [" + series(poly_r) + "] slope=" + fmt(poly) + "; Q/M(1.2) [" + series(sub_r) +
              "] slope=" + fmt(sub) + "; Q/M(1.6) [" + series(sup_r) + "] slope=" + fmt(sup)};
}

Outcome unknown_termination() {
  auto cfg = config("unknown_L.json");
  bool ok = true;
  std::string detail;
  // Root laws with zero and one target: rates 8 f and g + 7 f.
  const double a = 8.0 * cfg.model.lambda_f;
  const double b = cfg.model.lambda_g + 7.0 * cfg.model.lambda_f;
  const double kl = std::log(a / b) + b / a - 1.0;
  for (const double c : {1e-2, 1e-3}) {
    cfg.c = c;
    const auto agg = run_experiment(cfg);
    const double empty_rate = 1.0 - agg.rows[0].error_rate;
    const double term = agg.diagnostics[0].mean_terminating_samples;
    const double predicted = std::log(1.0 / c) / kl;
    const double ratio = term / predicted;
    ok = ok && empty_rate >= 1.0 - 10.0 * c && ratio >= 0.5 && ratio <= 2.0;
    detail += " c=" + fmt(c) + ": empty=" + fmt(empty_rate) + " term=" + fmt(term) +
              " predicted=" + fmt(predicted) + " ratio=" + fmt(ratio);
  }
  return {ok, "D=" + fmt(kl) + detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "irw_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  for (const auto* name : {"multi_exp_irw.json", "flip_active.json", "single_exp_chernoff.json"}) {
    auto cfg = config(name);
    cfg.replications = 100;
    cfg.threads = 1;
    emit_results(cfg, run_experiment(cfg), dir / "a.csv");
    cfg.threads = 3;
    emit_results(cfg, run_experiment(cfg), dir / "b.csv");
    ok = ok && slurp(dir / "a.csv") == slurp(dir / "b.csv") &&
         slurp(dir / "a.json") == slurp(dir / "b.json");
  }
  return {ok, "3 configs, CSV and sidecar compared byte for byte"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 logarithmic scaling of IRW", logarithmic_scaling},
      {"2 Chernoff/IRW >= 2.5 at M=16 and M=32", chernoff_ratio},
      {"3 Chernoff linear in M", chernoff_linear},
      {"4 error rate <= 10 L c", error_bound},
      {"5 multi-target cost linear in L", multi_target_linear},
      {"6 K=7 meets p=0.5625 and K=6 does not", calibration_k7},
      {"7 threshold constants", threshold_constants},
      {"8 active <= sequential <= fixed", local_test_ranking},
      {"9 decay regimes", decay_regimes},
      {"10 unknown-L termination", unknown_termination},
      {"11 deterministic reruns", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << "  [" << o.detail << "] (" << fmt(secs, 3)
              << " s)" << std::endl;
    if (!o.passed) ++failed;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << '/' << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
