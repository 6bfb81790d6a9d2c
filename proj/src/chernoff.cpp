#include "irw/chernoff.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "irw/local_tests.hpp"

namespace irw {

ChernoffWindow chernoff_window(const HierarchicalModel& model, std::int64_t targets) {
  const auto m = static_cast<double>(model.leaves());
  const auto l = static_cast<double>(targets);
  const double present_info = kl_divergence(model.leaf_present(), model.leaf_absent());
  const double absent_info = kl_divergence(model.leaf_absent(), model.leaf_present());
  if (m - l <= 0.0) return ChernoffWindow::TopRanks;
  return present_info / l >= absent_info / (m - l) ? ChernoffWindow::TopRanks
                                                   : ChernoffWindow::LowerRanks;
}

namespace {

std::vector<std::int64_t> undeclared_pool(const ChernoffState& state) {
  std::vector<std::int64_t> pool;
  pool.reserve(state.leaf_sllrs.size());
  for (std::size_t i = 0; i < state.leaf_sllrs.size(); ++i) {
    if (!state.declared[i]) pool.push_back(static_cast<std::int64_t>(i));
  }
  return pool;
}

auto rank_order(const ChernoffState& state) {
  return [&state](std::int64_t a, std::int64_t b) {
    const double sa = state.leaf_sllrs[static_cast<std::size_t>(a)];
    const double sb = state.leaf_sllrs[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a < b;
  };
}

// Pool with its first min(count, size) entries in rank order; the rest hold
// the remaining leaves in unspecified order.
std::vector<std::int64_t> top_of_pool(const ChernoffState& state, std::int64_t count) {
  auto pool = undeclared_pool(state);
  const auto k = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(count));
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(),
                    rank_order(state));
  return pool;
}

}  // namespace

std::vector<std::int64_t> chernoff_ranking(const ChernoffState& state) {
  auto pool = undeclared_pool(state);
  std::sort(pool.begin(), pool.end(), rank_order(state));
  return pool;
}

std::int64_t chernoff_select(const ChernoffState& state, std::int64_t remaining,
                             ChernoffWindow window, RandomStream& rng) {
  auto pool = top_of_pool(state, remaining);
  const auto n = static_cast<std::int64_t>(pool.size());
  if (n == 0) throw std::logic_error("no undeclared leaf to probe");
  const std::int64_t top = std::min(remaining, n);
  std::int64_t pick = 0;
  if (window == ChernoffWindow::LowerRanks && n > top) {
    pick = top + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - top)));
  } else {
    pick = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(top)));
  }
  return pool[static_cast<std::size_t>(pick)];
}

RunResult chernoff_run(const HierarchicalModel& model, const GroundTruth& truth,
                       std::int64_t targets, double c, RandomStream& rng,
                       std::int64_t sample_cap) {
  if (targets < 1 || targets > model.leaves()) {
    throw std::invalid_argument("Chernoff test needs 1 <= L <= M");
  }
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  const double threshold = declaration_threshold(model.leaves(), c);
  const ChernoffWindow window = chernoff_window(model, targets);
  const LogLikelihoodRatio stat(model.leaf_present(), model.leaf_absent());
  const Distribution present = model.leaf_present();
  const Distribution absent = model.leaf_absent();

  ChernoffState state(model.leaves(), stat);
  std::int64_t remaining = targets;
  RunResult result;

  // Declares while the top leaf clears the best leaf outside the window.
  auto try_declare = [&] {
    while (remaining > 0) {
      const auto pool = top_of_pool(state, remaining + 1);
      const auto n = static_cast<std::int64_t>(pool.size());
      const double lead = state.leaf_sllrs[static_cast<std::size_t>(pool[0])];
      const double rival = n > remaining
                               ? state.leaf_sllrs[static_cast<std::size_t>(pool[static_cast<std::size_t>(remaining)])]
                               : -std::numeric_limits<double>::infinity();
      if (lead - rival < threshold) return;
      state.declared[static_cast<std::size_t>(pool[0])] = true;
      result.declared.push_back(pool[0]);
      --remaining;
    }
  };

  while (remaining > 0) {
    if (state.samples_total >= sample_cap) {
      result.truncated = true;
      break;
    }
    const std::int64_t leaf = chernoff_select(state, remaining, window, rng);
    const Distribution& law = truth.is_target(leaf) ? present : absent;
    state.observe(leaf, sample(law, rng));
    try_declare();
  }
  std::sort(result.declared.begin(), result.declared.end());
  result.samples = state.samples_total;
  result.leaf_samples = state.samples_total;
  result.correct = !result.truncated && result.declared == truth.targets;
  result.runs = static_cast<std::int64_t>(result.declared.size());
  return result;
}

}  // namespace irw
