#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "irw/rng.hpp"

namespace irw {

constexpr bool is_power_of_two(std::int64_t n) {
  return n > 0 && std::has_single_bit(static_cast<std::uint64_t>(n));
}

/// log2 of a power of two.
constexpr int log2_exact(std::int64_t n) {
  return std::bit_width(static_cast<std::uint64_t>(n)) - 1;
}

/// A node of the binary tree. Level 0 holds the leaves, level depth the root.
struct NodeId {
  int level = 0;
  std::int64_t index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Addressing for a complete binary tree over a power-of-two number of leaves.
class Tree {
 public:
  /// Throws std::invalid_argument unless leaves is a power of two >= 2.
  explicit Tree(std::int64_t leaves);

  std::int64_t leaves() const { return leaves_; }
  int depth() const { return depth_; }
  NodeId root() const { return {depth_, 0}; }

  bool contains(NodeId n) const;
  bool is_root(NodeId n) const { return n.level == depth_; }

  /// The parent of the root is the root itself.
  NodeId parent(NodeId n) const;
  /// Throws LeafError on a leaf.
  std::pair<NodeId, NodeId> children(NodeId n) const;

  /// Number of leaves under n.
  static std::int64_t capacity(NodeId n) { return std::int64_t{1} << n.level; }

 private:
  std::int64_t leaves_;
  int depth_;
};

/// Number of entries of a sorted leaf-index list that lie under n.
std::int64_t count_under(NodeId n, std::span<const std::int64_t> sorted_leaves);

/// The hidden target set of one replication, as sorted leaf indices.
struct GroundTruth {
  std::vector<std::int64_t> targets;

  std::int64_t count() const { return static_cast<std::int64_t>(targets.size()); }
  bool is_target(std::int64_t leaf) const;
};

std::int64_t subtree_target_count(NodeId n, const GroundTruth& truth);

/// L distinct leaves drawn uniformly (uniform over L-subsets).
GroundTruth place_targets(const Tree& tree, std::int64_t count, RandomStream& rng);

}  // namespace irw
