#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pchord/graph.hpp"
#include "pchord/patterns.hpp"
#include "pchord/tree_layout.hpp"

namespace testsupport {

using pchord::Graph;
using pchord::Layout;
using pchord::TreeLayout;
using pchord::VertexSet;

// Standard simplicial-elimination check: scanning the layout right to left,
// each vertex's earlier neighbors must form a clique.
inline bool is_perfect_elimination_right_to_left(const Graph& g,
                                                 const Layout& l) {
  const int n = l.size();
  for (int i = n - 1; i >= 0; --i) {
    int v = l.order[i];
    std::vector<int> earlier;
    for (int j = 0; j < i; ++j)
      if (g.adjacent(v, l.order[j])) earlier.push_back(l.order[j]);
    for (size_t a = 0; a < earlier.size(); ++a)
      for (size_t b = a + 1; b < earlier.size(); ++b)
        if (!g.adjacent(earlier[a], earlier[b])) return false;
  }
  return true;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  while (true) {
    Graph g = random_graph(rng, n, p);
    if (g.is_connected()) return g;
  }
}

// Random rooted tree (Prufer) plus a graph whose edges are a random subset
// of the vertical pairs, so the tree is a tree-layout of the graph.
inline std::pair<Graph, TreeLayout> random_graph_with_tree_layout(
    std::mt19937_64& rng, int n, double p) {
  std::vector<int> parent(n, -1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i)
    parent[order[i]] =
        order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
  int root = order[0];
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int a = parent[v]; a != -1; a = parent[a])
      if (coin(rng) < p) edges.emplace_back(std::min(a, v), std::max(a, v));
  std::vector<int> vertex_of(n);
  std::iota(vertex_of.begin(), vertex_of.end(), 0);
  return {Graph(n, edges),
          TreeLayout::from_parents(root, parent, vertex_of)};
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Canonical code of a rooted tree with per-node labels (AHU with labels):
// used to compare block trees as unlabeled rooted trees with block sizes.
inline std::string rooted_tree_code(
    const std::vector<std::vector<int>>& children,
    const std::vector<std::string>& label, int u) {
  std::vector<std::string> parts;
  for (int c : children[u]) parts.push_back(rooted_tree_code(children, label, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(" + label[u];
  for (const auto& p : parts) out += p;
  return out + ")";
}

// All connected labeled graphs on n vertices (edge subsets filtered).
template <typename F>
void for_each_connected_graph(int n, F&& visit) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < pairs; ++i)
      if ((mask >> i) & 1) edges.push_back(all[i]);
    Graph g(n, edges);
    if (g.is_connected()) visit(g);
  }
}

// Canonical adjacency string over all permutations; small n only.
inline std::string canonical_form(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s(n * n, '0');
    for (auto [u, v] : g.edges()) {
      s[perm[u] * n + perm[v]] = '1';
      s[perm[v] * n + perm[u]] = '1';
    }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Representatives of all connected graphs on up to max_n vertices, grown by
// attaching a new vertex to smaller representatives in every way.
inline std::vector<Graph> connected_reps_up_to(int max_n) {
  std::vector<Graph> out;
  std::vector<Graph> prev{Graph(1, {})};
  out.push_back(prev[0]);
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::string> seen;
    std::vector<Graph> cur;
    for (const Graph& g : prev) {
      for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<std::pair<int, int>> edges = g.edges();
        for (int v = 0; v < n - 1; ++v)
          if ((mask >> v) & 1) edges.emplace_back(v, n - 1);
        Graph h(n, edges);
        std::string key = canonical_form(h);
        if (seen.insert(key).second) cur.push_back(h);
      }
    }
    for (const Graph& g : cur) out.push_back(g);
    prev = std::move(cur);
  }
  return out;
}

}  // namespace testsupport
