#include "irw/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irw {

std::string_view to_string(TraceEvent::Kind kind) {
  switch (kind) {
    case TraceEvent::Kind::LocalTest: return "local_test";
    case TraceEvent::Kind::LeafVisit: return "leaf_visit";
    case TraceEvent::Kind::Terminating: return "terminating";
  }
  return "unknown";
}

NodeId walk_transition(const Tree& tree, NodeId current, Hypothesis verdict,
                       RandomStream& rng) {
  switch (verdict) {
    case Hypothesis::H0: return tree.parent(current);
    case Hypothesis::H1: return tree.children(current).first;
    case Hypothesis::H2: return tree.children(current).second;
    case Hypothesis::H3: {
      const auto [left, right] = tree.children(current);
      return rng.coin() ? right : left;
    }
  }
  return current;
}

namespace {

enum class Mode { Single, Known, Unknown };

class Walker {
 public:
  Walker(const HierarchicalModel& model, const GroundTruth& truth, Mode mode,
         std::int64_t goal, const LocalTestSpec& spec, double c, RandomStream& rng,
         const RunOptions& options)
      : model_(model),
        truth_(truth),
        mode_(mode),
        goal_(goal),
        spec_(spec),
        c_(c),
        rng_(rng),
        options_(options),
        tree_(model.leaves()),
        threshold_(declaration_threshold(model.leaves(), c)),
        leaf_stat_(model.leaf_present(), model.leaf_absent()) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
    state_.current = tree_.root();
  }

  RunResult run() {
    while (state_.phase != Phase::Done) {
      if (state_.samples_total >= options_.sample_cap) {
        result_.truncated = true;
        break;
      }
      if (state_.current.level == 0) {
        visit_leaf();
      } else {
        test_internal();
      }
    }
    result_.samples = state_.samples_total;
    result_.declared = state_.declared;
    result_.correct = !result_.truncated && state_.declared == truth_.targets;
    return result_;
  }

 private:
  void emit(const TraceEvent& e) const {
    if (options_.trace) options_.trace(e);
  }

  bool done_declaring() const {
    if (mode_ == Mode::Single) return true;
    if (mode_ == Mode::Known) return static_cast<std::int64_t>(state_.declared.size()) >= goal_;
    return false;
  }

  void visit_leaf() {
    const NodeId leaf = state_.current;
    state_.phase = Phase::LeafTesting;
    state_.leaf_sllr = 0.0;
    const ChildChannel channel{model_.distribution(0, truth_.is_target(leaf.index) ? 1 : 0),
                               leaf_stat_, 1, false};
    SllrAccumulator visit(leaf_stat_);
    std::int64_t drawn = 0;
    LeafOutcome outcome = LeafOutcome::Continue;
    while (outcome == LeafOutcome::Continue && state_.samples_total < options_.sample_cap) {
      outcome = leaf_step(visit, channel, threshold_, rng_);
      state_.leaf_sllr = visit.value();
      ++drawn;
      ++state_.samples_total;
      ++result_.leaf_samples;
    }
    TraceEvent e{TraceEvent::Kind::LeafVisit, leaf, Hypothesis::H0, state_.leaf_sllr, 0.0,
                 drawn, outcome == LeafOutcome::Declare, leaf, state_.samples_total};
    if (outcome == LeafOutcome::Continue) {
      emit(e);
      return;  // cap reached; the main loop flags truncation
    }
    if (outcome == LeafOutcome::Declare) {
      auto& d = state_.declared;
      d.insert(std::lower_bound(d.begin(), d.end(), leaf.index), leaf.index);
      ++result_.runs;
      if (done_declaring()) {
        state_.phase = Phase::Done;
      } else {
        state_.phase = Phase::Walking;
        state_.current = tree_.root();
      }
    } else {
      state_.phase = Phase::Walking;
      state_.current = tree_.parent(leaf);
    }
    e.next = state_.current;
    emit(e);
  }

  void test_internal() {
    const NodeId node = state_.current;
    LocalVerdict v;
    if (mode_ == Mode::Single) {
      v = run_local_test(spec_, single_target_channels(model_, node, truth_, spec_), rng_);
    } else {
      const bool allow_h3 =
          mode_ == Mode::Unknown ||
          goal_ - static_cast<std::int64_t>(state_.declared.size()) > 1;
      v = multi_target_fixed_test(
          multi_target_channels(model_, node, truth_, state_.declared, spec_), allow_h3, rng_);
    }
    state_.samples_total += v.samples_used;
    result_.local_samples += v.samples_used;
    if (v.truncated) ++result_.local_truncations;

    const bool terminate = mode_ == Mode::Unknown && tree_.is_root(node) &&
                           v.hypothesis == Hypothesis::H0;
    if (!terminate) state_.current = walk_transition(tree_, node, v.hypothesis, rng_);
    emit({TraceEvent::Kind::LocalTest, node, v.hypothesis, v.left_sllr, v.right_sllr,
          v.samples_used, false, state_.current, state_.samples_total});
    if (terminate) terminating_phase();
  }

  void terminating_phase() {
    const NodeId root = tree_.root();
    const auto declared = static_cast<std::int64_t>(state_.declared.size());
    if (declared >= tree_.leaves()) {
      state_.phase = Phase::Done;
      return;
    }
    state_.phase = Phase::Terminating;
    const auto pair = model_.hypothesis_pair(tree_.depth(), declared);
    const ChildChannel channel{model_.distribution(tree_.depth(), truth_.count()),
                               LogLikelihoodRatio(pair.one_more, pair.as_declared), 1, false};
    const double stop_level = std::log(c_);
    state_.root_sllr = 0.0;
    SllrAccumulator acc(channel.llr);
    std::int64_t drawn = 0;
    bool stop = false;
    bool resume = false;
    while (state_.samples_total < options_.sample_cap) {
      acc.add(channel.observe(rng_));
      state_.root_sllr = acc.value();
      ++drawn;
      ++state_.samples_total;
      ++result_.terminating_samples;
      if (state_.root_sllr > 0.0) {
        resume = true;
        break;
      }
      if (state_.root_sllr <= stop_level) {
        stop = true;
        break;
      }
    }
    if (stop) state_.phase = Phase::Done;
    if (resume) {
      state_.phase = Phase::Walking;
      ++result_.runs;
    }
    emit({TraceEvent::Kind::Terminating, root, Hypothesis::H0, state_.root_sllr, 0.0, drawn,
          stop, root, state_.samples_total});
  }

  const HierarchicalModel& model_;
  const GroundTruth& truth_;
  Mode mode_;
  std::int64_t goal_;
  const LocalTestSpec& spec_;
  double c_;
  RandomStream& rng_;
  const RunOptions& options_;
  Tree tree_;
  double threshold_;
  LogLikelihoodRatio leaf_stat_;
  WalkState state_;
  RunResult result_;
};

}  // namespace

RunResult run_single_target(const HierarchicalModel& model, const GroundTruth& truth,
                            const LocalTestSpec& spec, double c, RandomStream& rng,
                            const RunOptions& options) {
  return Walker(model, truth, Mode::Single, 1, spec, c, rng, options).run();
}

RunResult run_multi_target(const HierarchicalModel& model, const GroundTruth& truth,
                           std::int64_t targets, const LocalTestSpec& spec, double c,
                           RandomStream& rng, const RunOptions& options) {
  if (targets < 1) throw std::invalid_argument("known target count must be at least 1");
  if (targets > model.leaves()) throw std::invalid_argument("more targets than leaves");
  return Walker(model, truth, Mode::Known, targets, spec, c, rng, options).run();
}

RunResult run_unknown_targets(const HierarchicalModel& model, const GroundTruth& truth,
                              const LocalTestSpec& spec, double c, RandomStream& rng,
                              const RunOptions& options) {
  return Walker(model, truth, Mode::Unknown, 0, spec, c, rng, options).run();
}

}  // namespace irw
