#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pchord/blocks.hpp"
#include "pchord/fpq.hpp"
#include "pchord/graph.hpp"
#include "pchord/tree_layout.hpp"

namespace pchord {

/// Attachment of a child tree below a host node: the label (a,b) names a
/// consecutive child interval of the host node (1-indexed, against the
/// host's stored child order). a_hat, when present, counts the ancestors
/// outside the child's block that are adjacent to the whole block.
struct SkeletonEdge {
  int tree = -1;       // child tree index
  int host_tree = -1;  // tree holding the attachment node
  int host_node = -1;  // preorder node id within the host tree
  int a = 1;
  int b = 1;
  std::optional<int> a_hat;
};

/// FPQ-trees glued by interval-labelled skeleton edges. Tree 0 carries the
/// root block; skeleton edges form a tree over tree indices.
struct FpqHierarchy {
  std::vector<FpqTree> trees;
  std::vector<SkeletonEdge> skeleton;

  void validate() const;
  bool decorated() const;
  /// All leaf elements across trees (the vertex set), ascending.
  VertexSet leaf_elements() const;
  /// Skeleton edges hosted at a given node, sorted by child tree index.
  std::vector<int> edges_at(int tree, int node) const;
  /// The skeleton edge whose child is the given tree (tree >= 1).
  const SkeletonEdge& edge_into(int tree) const;

  std::string to_json() const;
  static FpqHierarchy from_json(const std::string& text);
  std::string to_dot() const;
};

/// Per P-node a child permutation, per Q-node a reversal flag. Keys are
/// (tree, node). Missing entries mean identity.
struct RealizationChoice {
  std::map<std::pair<int, int>, std::vector<int>> p_perm;
  std::map<std::pair<int, int>, bool> q_reversed;

  static RealizationChoice identity() { return {}; }
};

/// Builds the rooted tree of a choice: each tree's leaf order becomes a
/// path; a child tree hangs below the largest-in-order leaf under the b-th
/// child of its host node (labels adjusted when Q hosts are reversed).
TreeLayout realize(const FpqHierarchy& h, const RealizationChoice& c);

/// All distinct realizations, deduplicated structurally and sorted.
/// Throws when the raw choice count exceeds limit.
std::vector<TreeLayout> enumerate_realizations(const FpqHierarchy& h,
                                               std::uint64_t limit = 1'000'000);

/// The unique hierarchy encoding every indifference tree-layout of g with
/// the same root as t. Requires t to be an indifference tree-layout.
FpqHierarchy canonical_hierarchy(const Graph& g, const TreeLayout& t);

/// Builds the canonical hierarchy directly from a block tree whose nested
/// collections all admit FPQ-trees (the recognition path).
std::optional<FpqHierarchy> hierarchy_from_block_tree(const Graph& g,
                                                      const BlockTree& bt);

/// Fills a_hat on every skeleton edge.
FpqHierarchy decorate(const Graph& g, const TreeLayout& t,
                      const FpqHierarchy& h);

/// The unique graph for which every realization is an indifference
/// tree-layout: below its block, a vertex is adjacent to exactly the
/// |ancestors in block| + a_hat nearest ancestors on its root path.
Graph reconstruct_graph(const FpqHierarchy& h, const RealizationChoice& c);

}  // namespace pchord
