#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pchord/graph.hpp"

namespace pchord {

struct TreeLayout;

/// An ordered vertex template over positions 1..size where every pair is
/// either a mandatory edge or a mandatory non-edge.
struct Pattern {
  int size = 0;
  std::vector<std::pair<int, int>> edges;     // (i,j), 1 <= i < j <= size
  std::vector<std::pair<int, int>> nonedges;  // complement of edges

  /// Parses the bracket syntax, e.g. "<~12,13,23>" where ~ marks a non-edge.
  static Pattern parse(const std::string& text);
  std::string to_string() const;

  bool requires_edge(int i, int j) const;
  void validate() const;

  bool operator==(const Pattern&) const = default;
};

struct PatternSet {
  std::string name;
  std::vector<Pattern> patterns;
};

/// The named pattern sets: chordal, int, proper, indifference, cograph, bip,
/// forest, cocomp, trivPer.
PatternSet builtin_pattern_set(const std::string& name);

/// A total vertex order; order[i] is the vertex at position i.
struct Layout {
  std::vector<int> order;

  explicit Layout(std::vector<int> order_);
  Layout() = default;

  int size() const { return static_cast<int>(order.size()); }
  int position_of(int v) const { return pos_[v]; }
  Layout reversed() const;

 private:
  std::vector<int> pos_;
};

/// All tuples of vertices increasing in l that match p, in lexicographic
/// order of position tuples. Empty result means l excludes p.
std::vector<std::vector<int>> layout_occurrences(const Graph& g,
                                                 const Layout& l,
                                                 const Pattern& p);

/// All ancestor chains x_1 < ... < x_k of t matching p, ordered by the
/// preorder positions of the chain (ascending-vertex-id child order).
std::vector<std::vector<int>> treelayout_occurrences(const Graph& g,
                                                     const TreeLayout& t,
                                                     const Pattern& p);

bool layout_excludes(const Graph& g, const Layout& l, const PatternSet& ps);
bool treelayout_excludes(const Graph& g, const TreeLayout& t,
                         const PatternSet& ps);

/// Exhaustive search over all n! layouts; the oracle-grade membership test
/// for layout classes. Throws if n exceeds max_n.
std::optional<Layout> exists_pattern_free_layout(const Graph& g,
                                                 const PatternSet& ps,
                                                 int max_n = 10);

/// Mirrors the pattern (position i becomes k+1-i).
Pattern reversed_pattern(const Pattern& p);

}  // namespace pchord
