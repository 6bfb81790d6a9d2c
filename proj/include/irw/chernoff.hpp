#pragma once

#include <cstdint>
#include <vector>

#include "irw/observation_model.hpp"
#include "irw/policy.hpp"
#include "irw/rng.hpp"
#include "irw/tree.hpp"

namespace irw {

/// Which rank window the Chernoff test probes: the current top-L leaves, or
/// every leaf ranked below them.
enum class ChernoffWindow { TopRanks, LowerRanks };

/// D(g0||f0)/L >= D(f0||g0)/(M-L) selects the top window.
ChernoffWindow chernoff_window(const HierarchicalModel& model, std::int64_t targets);

/// Cumulative per-leaf SLLRs of g0 vs f0, never reset.
struct ChernoffState {
  std::vector<double> leaf_sllrs;
  std::vector<SllrAccumulator> leaf_stats;
  std::vector<bool> declared;
  std::int64_t samples_total = 0;

  explicit ChernoffState(std::int64_t leaves, const LogLikelihoodRatio& stat = {})
      : leaf_sllrs(static_cast<std::size_t>(leaves), 0.0),
        leaf_stats(static_cast<std::size_t>(leaves), SllrAccumulator(stat)),
        declared(static_cast<std::size_t>(leaves), false) {}

  /// Adds one observation of `leaf` and refreshes its SLLR.
  void observe(std::int64_t leaf, double y) {
    auto& acc = leaf_stats[static_cast<std::size_t>(leaf)];
    acc.add(y);
    leaf_sllrs[static_cast<std::size_t>(leaf)] = acc.value();
    ++samples_total;
  }
};

/// Undeclared leaves ordered by SLLR, largest first, ties by leaf index.
std::vector<std::int64_t> chernoff_ranking(const ChernoffState& state);

/// Leaf to probe next: uniform over ranks 1..remaining (top window) or over
/// ranks remaining+1..end (lower window) of the undeclared pool. An empty
/// lower window falls back to the top one.
std::int64_t chernoff_select(const ChernoffState& state, std::int64_t remaining,
                             ChernoffWindow window, RandomStream& rng);

/// Leaf-probing Chernoff test. The top undeclared leaf is declared once its
/// SLLR exceeds that of the best leaf outside the current top-`remaining`
/// window by log(log2(M)/c); repeats until `targets` declarations.
RunResult chernoff_run(const HierarchicalModel& model, const GroundTruth& truth,
                       std::int64_t targets, double c, RandomStream& rng,
                       std::int64_t sample_cap = 1'000'000'000);

}  // namespace irw
