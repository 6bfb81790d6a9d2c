#include "irw/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "irw/errors.hpp"

namespace irw {

Tree::Tree(std::int64_t leaves) : leaves_(leaves), depth_(0) {
  if (leaves < 2 || !is_power_of_two(leaves)) {
    throw std::invalid_argument("leaf count must be a power of two >= 2, got " +
                                std::to_string(leaves));
  }
  depth_ = log2_exact(leaves);
}

bool Tree::contains(NodeId n) const {
  return n.level >= 0 && n.level <= depth_ && n.index >= 0 &&
         n.index < (leaves_ >> n.level);
}

NodeId Tree::parent(NodeId n) const {
  if (is_root(n)) return n;
  return {n.level + 1, n.index / 2};
}

std::pair<NodeId, NodeId> Tree::children(NodeId n) const {
  if (n.level == 0) throw LeafError("leaf node has no children");
  return {{n.level - 1, 2 * n.index}, {n.level - 1, 2 * n.index + 1}};
}

std::int64_t count_under(NodeId n, std::span<const std::int64_t> sorted_leaves) {
  const std::int64_t first = n.index << n.level;
  const std::int64_t last = (n.index + 1) << n.level;
  const auto lo = std::lower_bound(sorted_leaves.begin(), sorted_leaves.end(), first);
  const auto hi = std::lower_bound(lo, sorted_leaves.end(), last);
  return hi - lo;
}

bool GroundTruth::is_target(std::int64_t leaf) const {
  return std::binary_search(targets.begin(), targets.end(), leaf);
}

std::int64_t subtree_target_count(NodeId n, const GroundTruth& truth) {
  return count_under(n, truth.targets);
}

GroundTruth place_targets(const Tree& tree, std::int64_t count, RandomStream& rng) {
  if (count < 0 || count > tree.leaves()) {
    throw CapacityError("cannot place " + std::to_string(count) + " targets in " +
                        std::to_string(tree.leaves()) + " leaves");
  }
  // Floyd's sampling: uniform over subsets, `count` draws.
  std::unordered_set<std::int64_t> chosen;
  const std::int64_t n = tree.leaves();
  for (std::int64_t j = n - count; j < n; ++j) {
    const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j + 1)));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  GroundTruth truth{{chosen.begin(), chosen.end()}};
  std::sort(truth.targets.begin(), truth.targets.end());
  return truth;
}

}  // namespace irw
