#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pchord/fpq.hpp"
#include "pchord/graph.hpp"

namespace pchord {

/// Result of the block search: blocks partition V, block 0 is the root
/// block {x}, and each block's parent is the deepest earlier block adjacent
/// to it.
struct BlockTree {
  std::vector<VertexSet> blocks;
  std::vector<int> parent;        // per block; -1 at block 0
  std::vector<int> attach_order;  // construction sequence of block indices

  int block_of(int vertex) const;
  int depth(int block) const;
  /// Union of the strict ancestor blocks of block b.
  VertexSet ancestor_vertices(int b) const;
  std::vector<int> children_of(int b) const;

  std::string to_json() const;
  static BlockTree from_json(const std::string& text);
};

/// Vertices of c whose trace on s contains every other trace; empty when no
/// maximum trace exists. c must be a connected component of g - s.
VertexSet s_maximal_vertices(const Graph& g, const VertexSet& s,
                             const VertexSet& c);

/// The unique block of c relative to s: all s-maximal vertices that are
/// also universal to N(s) inside c. Absent when no vertex qualifies.
std::optional<VertexSet> s_block(const Graph& g, const VertexSet& s,
                                 const VertexSet& c);

/// Block search rooted at x; absent when some component has no block.
/// Components are consumed in ascending minimum-vertex order. Throws
/// logic_error if the deepest adjacent block is not unique (that would
/// contradict the search invariant) and invalid_argument on disconnected g.
std::optional<BlockTree> block_tree(const Graph& g, int x);

/// Per connected component of the block's territory minus the block, the
/// family of neighborhood traces on the block. Ground set is the block.
NestedCollection nested_collection_of_block(const Graph& g,
                                            const BlockTree& bt, int b);

}  // namespace pchord
