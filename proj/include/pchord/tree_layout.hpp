#pragma once

#include <string>
#include <vector>

#include "pchord/graph.hpp"
#include "pchord/patterns.hpp"

namespace pchord {

/// A rooted tree on n nodes plus a bijection between nodes and vertices.
/// Node ids and vertex ids share the range 0..n-1; the bijection is stored
/// explicitly so the two id spaces stay distinct concepts.
struct TreeLayout {
  int root = 0;
  std::vector<int> parent;     // per node; -1 at the root
  std::vector<int> vertex_of;  // node -> vertex
  std::vector<int> node_of;    // vertex -> node

  static TreeLayout from_parents(int root, std::vector<int> parent,
                                 std::vector<int> vertex_of);
  /// Path-shaped tree-layout realizing a layout.
  static TreeLayout from_layout(const Layout& l);

  int size() const { return static_cast<int>(parent.size()); }
  void validate() const;  // throws on malformed structure

  /// True iff node a is a strict ancestor of node b.
  bool node_is_ancestor(int a, int b) const;
  /// True iff vertex x is a strict ancestor of vertex y.
  bool vertex_precedes(int x, int y) const;

  int depth_of_node(int node) const;
  std::vector<int> children_of(int node) const;

  /// Preorder position per node, visiting children by ascending vertex id.
  std::vector<int> preorder_positions() const;

  /// Ancestor vertex sets as bitmasks indexed by vertex.
  std::vector<std::vector<std::uint64_t>> ancestor_masks(int words) const;

  bool operator==(const TreeLayout&) const = default;

  std::string to_json() const;
  static TreeLayout from_json(const std::string& text);
  std::string to_dot(const Graph& g) const;
};

/// True iff every edge of g joins an ancestor-descendant pair of t.
bool is_tree_layout(const Graph& g, const TreeLayout& t);

enum class IndifferenceMethod { patterns, closed_nbhd, cliques, nested };

/// Indifference test via any of the four equivalent characterizations.
/// (For connected graphs this coincides with excluding the two proper
/// patterns; the pattern method checks the full indifference triple set so
/// that all methods agree on every input.)
bool is_indifference(const Graph& g, const TreeLayout& t,
                     IndifferenceMethod method = IndifferenceMethod::nested);

/// Host tree plus one connected subtree per vertex; intersection encodes
/// adjacency.
struct TreeIntersectionModel {
  int host_nodes = 0;
  std::vector<std::pair<int, int>> host_edges;
  std::vector<std::vector<int>> subtree_of;  // vertex -> host node set

  void validate() const;  // subtrees non-empty and connected
  Graph intersection_graph() const;
};

/// Builds a tree-layout excluding the interval patterns from a
/// tree-intersection model (contract non-top nodes, expand shared tops).
TreeLayout treelayout_from_model(const TreeIntersectionModel& m);

/// Inverse direction: subtree of each vertex spans its lowest neighbors.
/// Requires t to exclude the interval patterns.
TreeIntersectionModel model_from_treelayout(const Graph& g,
                                            const TreeLayout& t);

/// Depth-first flattening (ascending vertex id child order); maps a layout
/// excluding the chordal pattern out of a tree-layout excluding it.
Layout flatten_dfs(const Graph& g, const TreeLayout& t);

/// Maximal cliques (Bron-Kerbosch), each ascending, list sorted.
std::vector<VertexSet> maximal_cliques(const Graph& g);

}  // namespace pchord
