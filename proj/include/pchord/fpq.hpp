#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pchord/graph.hpp"

namespace pchord {

/// Ordered labelled tree over a ground set of integers. Internal nodes are
/// F (frozen), P (children permute freely) or Q (children may reverse).
/// Frontier: the leaf orders reachable by those operations.
///
/// Normal form: no internal node has exactly one child except the root of
/// the single-element tree (a Q-node over one leaf); two-child internal
/// nodes are typed Q. Nodes are stored in preorder.
class FpqTree {
 public:
  enum class NodeType { Leaf, F, P, Q };

  struct Node {
    NodeType type = NodeType::Leaf;
    int element = -1;  // ground element for leaves
    int parent = -1;
    std::vector<int> children;
  };

  FpqTree() = default;

  static FpqTree single(int element);
  /// Builds from a parent-structure description; normalizes and renumbers
  /// to preorder.
  static FpqTree build(std::vector<Node> nodes, int root);

  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[id]; }
  int leaf_count() const;

  /// Ground elements in current frontier order.
  std::vector<int> frontier() const;
  /// Ground elements ascending.
  VertexSet ground() const;

  /// Leaf elements below a node, in current order.
  std::vector<int> leaves_below(int id) const;

  /// Deepest node whose leaf set contains all given elements. The set must
  /// be non-empty and within the ground set.
  int lca(const VertexSet& elems) const;

  /// Reverses the children of a Q node in place (used during construction
  /// before any skeleton edges reference child positions).
  void reverse_children(int id);
  /// Converts a Q node into an F node.
  void freeze(int id);

  std::string to_sexpr() const;
  static FpqTree parse_sexpr(const std::string& text);
  std::string to_json() const;

  bool operator==(const FpqTree&) const = default;

 private:
  void renumber_preorder();
  void normalize();

  std::vector<Node> nodes_;
  int root_ = -1;

  friend struct FpqTreeBuilder;
};

/// All permutations in the tree's frontier class, deduplicated and sorted.
/// Throws if the number of raw choice combinations exceeds limit.
std::vector<std::vector<int>> frontier_set(const FpqTree& t,
                                           std::uint64_t limit = 1'000'000);

/// All subsets consecutive in every frontier permutation: each node's leaf
/// set plus unions of consecutive children of Q/F nodes. Sorted by
/// (size, min element).
std::vector<VertexSet> factors(const FpqTree& t);

/// Equivalence under permute/reverse rewrites; requires equal ground sets.
bool fpq_equivalent(const FpqTree& t1, const FpqTree& t2);

/// PQ-tree whose frontier equals the permutations keeping every constraint
/// set consecutive; absent when that set is empty.
std::optional<FpqTree> convex_pq(const VertexSet& ground,
                                 const std::vector<VertexSet>& constraints);

/// Ground set plus families of sets, each family a chain under inclusion.
struct NestedCollection {
  VertexSet ground;
  std::vector<std::vector<VertexSet>> families;

  /// True iff every family is a chain under inclusion (after dedup).
  bool is_nested() const;
  /// All member sets, deduplicated across families.
  std::vector<VertexSet> all_sets() const;
};

/// FPQ-tree whose frontier equals the nested-convex permutation set of c:
/// every member consecutive and, for nested Z inside Y of one family, Y\Z
/// placed before Z. Absent when that set is empty. Requires is_nested().
std::optional<FpqTree> nested_convex_fpq(const NestedCollection& c);

/// True iff in every frontier permutation all elements of y\z precede all
/// elements of z. Both sets must be factors with z inside y.
bool always_suffix(const FpqTree& t, const VertexSet& y, const VertexSet& z);

}  // namespace pchord
