#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "irw/local_tests.hpp"
#include "irw/observation_model.hpp"
#include "irw/rng.hpp"
#include "irw/tree.hpp"

namespace irw {

enum class Phase { Walking, LeafTesting, Terminating, Done };

/// Mutable state of one IRW replication.
struct WalkState {
  NodeId current;
  /// SLLR of the current leaf visit; reset on every visit.
  double leaf_sllr = 0.0;
  /// Declared leaves, sorted.
  std::vector<std::int64_t> declared;
  Phase phase = Phase::Walking;
  std::int64_t samples_total = 0;
  /// Root SLLR of the current terminating phase.
  double root_sllr = 0.0;
};

struct RunResult {
  std::int64_t samples = 0;
  std::vector<std::int64_t> declared;
  bool correct = false;
  /// The global sample cap stopped the run.
  bool truncated = false;

  // Breakdown of `samples`.
  std::int64_t local_samples = 0;
  std::int64_t leaf_samples = 0;
  std::int64_t terminating_samples = 0;

  /// Local tests whose verdict was forced by their own cap.
  std::int64_t local_truncations = 0;
  /// Completed runs of the walk (resets to the root).
  std::int64_t runs = 0;
};

/// One step of the trajectory, for --trace output and invariant checks.
struct TraceEvent {
  enum class Kind { LocalTest, LeafVisit, Terminating };
  Kind kind = Kind::LocalTest;
  NodeId node;
  /// Local test: verdict. Unused otherwise.
  Hypothesis verdict = Hypothesis::H0;
  /// Local test: children's SLLRs. Leaf visit / terminating: (final SLLR, 0).
  double sllr_a = 0.0;
  double sllr_b = 0.0;
  /// Samples drawn by this step.
  std::int64_t samples = 0;
  /// Leaf visit: declared. Terminating: stopped the search.
  bool decisive = false;
  NodeId next;
  std::int64_t samples_total = 0;
};

std::string_view to_string(TraceEvent::Kind kind);

using TraceSink = std::function<void(const TraceEvent&)>;

struct RunOptions {
  std::int64_t sample_cap = 1'000'000'000;
  TraceSink trace;
};

/// Next node after a local verdict: H0 zooms out (the root stays put), H1/H2
/// zoom into the left/right child, H3 picks a child uniformly at random.
NodeId walk_transition(const Tree& tree, NodeId current, Hypothesis verdict,
                       RandomStream& rng);

/// Single-target IRW: walk from the root until a leaf SLLR reaches
/// log(log2(M)/c).
RunResult run_single_target(const HierarchicalModel& model, const GroundTruth& truth,
                            const LocalTestSpec& spec, double c, RandomStream& rng,
                            const RunOptions& options = {});

/// Known number of targets: runs of the walk with the composite test,
/// resetting to the root after each declaration, until `targets` are declared.
RunResult run_multi_target(const HierarchicalModel& model, const GroundTruth& truth,
                           std::int64_t targets, const LocalTestSpec& spec, double c,
                           RandomStream& rng, const RunOptions& options = {});

/// Unknown number of targets: an H0 verdict at the root starts the terminating
/// phase, which samples the root until its SLLR of one more target than
/// declared goes positive (next run) or drops to log c (stop).
RunResult run_unknown_targets(const HierarchicalModel& model, const GroundTruth& truth,
                              const LocalTestSpec& spec, double c, RandomStream& rng,
                              const RunOptions& options = {});

}  // namespace irw
