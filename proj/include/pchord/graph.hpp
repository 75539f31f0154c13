#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pchord {

/// A set of vertex identifiers with deterministic ascending iteration order.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<int> elems);

  static VertexSet full(int n);

  bool contains(int v) const;
  void insert(int v);
  void erase(int v);
  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  int min() const;

  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_minus(const VertexSet& other) const;
  VertexSet set_intersect(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  const std::vector<int>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const VertexSet&) const = default;
  bool operator<(const VertexSet& other) const { return elems_ < other.elems_; }

  std::string to_string() const;

 private:
  std::vector<int> elems_;  // sorted, no duplicates
};

/// Finite simple undirected graph over dense vertex ids 0..n-1.
/// Immutable after construction; names are display-only metadata.
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<std::pair<int, int>>& edges,
        std::vector<std::string> names = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors_of(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors_of(v).size()); }
  std::vector<std::pair<int, int>> edges() const;

  bool has_names() const { return !names_.empty(); }
  const std::string& name(int v) const;
  std::optional<int> vertex_by_name(const std::string& name) const;

  /// Adjacency row as 64-bit masks (word i covers vertices 64i..64i+63).
  const std::vector<std::uint64_t>& adjacency_mask(int v) const;
  int mask_words() const { return words_; }

  bool is_connected() const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  int m_ = 0;
  int words_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::uint64_t>> adj_mask_;
  std::vector<std::string> names_;
};

/// N(v): the open neighborhood, ascending.
VertexSet neighbors(const Graph& g, int v);

/// Maximal connected vertex sets of G - removed, sorted by minimum element.
std::vector<VertexSet> connected_components(const Graph& g,
                                            const VertexSet& removed);

/// True iff s \ {x} is contained in N(x).
bool is_universal_to(const Graph& g, int x, const VertexSet& s);

/// Relabels g by perm (vertex v becomes perm[v]).
Graph relabel(const Graph& g, const std::vector<int>& perm);

}  // namespace pchord
