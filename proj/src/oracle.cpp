#include "pchord/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pchord {
namespace oracle {

namespace {

struct BudgetGuard {
  const SearchBudget& b;
  std::uint64_t count = 0;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void tick() {
    if (++count > b.max_enumerations)
      throw std::runtime_error("oracle enumeration budget exceeded");
    if ((count & 0x3fff) == 0 &&
        std::chrono::steady_clock::now() - start > b.time_limit)
      throw std::runtime_error("oracle time budget exceeded");
  }
};

// Edges of the labeled tree encoded by a Prufer sequence.
void prufer_decode(const std::vector<int>& seq, int n,
                   std::vector<std::pair<int, int>>& edges) {
  edges.clear();
  if (n == 1) return;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return;
  }
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<char> used(n, 0);
  for (int x : seq) {
    int leaf = -1;
    for (int v = 0; v < n && leaf < 0; ++v)
      if (deg[v] == 1 && !used[v]) leaf = v;
    edges.emplace_back(leaf, x);
    used[leaf] = 1;
    --deg[x];
    --deg[leaf];
  }
  int a = -1, c = -1;
  for (int v = 0; v < n; ++v)
    if (!used[v] && deg[v] == 1) (a < 0 ? a : c) = v;
  edges.emplace_back(a, c);
}

// Visits every rooted labeled tree on n nodes as (root, parent array).
// The callback returns false to stop the enumeration.
template <typename F>
void for_each_rooted_tree(int n, std::optional<int> fixed_root,
                          BudgetGuard& guard, F&& visit) {
  std::vector<int> seq(std::max(0, n - 2), 0);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj(n);
  std::vector<int> parent(n), order(n);
  while (true) {
    prufer_decode(seq, n, edges);
    for (auto& a : adj) a.clear();
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (int root = 0; root < n; ++root) {
      if (fixed_root && *fixed_root != root) continue;
      guard.tick();
      // Parent array by DFS from the root.
      std::fill(parent.begin(), parent.end(), -2);
      parent[root] = -1;
      int head = 0, tail = 0;
      order[tail++] = root;
      while (head < tail) {
        int u = order[head++];
        for (int v : adj[u])
          if (parent[v] == -2) {
            parent[v] = u;
            order[tail++] = v;
          }
      }
      if (!visit(root, parent, order)) return;
    }
    // Next Prufer sequence.
    int k = 0;
    while (k < static_cast<int>(seq.size()) && ++seq[k] == n) {
      seq[k] = 0;
      ++k;
    }
    if (k == static_cast<int>(seq.size())) break;
  }
}

// Tree-layout property with single-word bitmasks (n <= 64).
bool vertical_edges_only(const Graph& g, const std::vector<int>& parent,
                         const std::vector<int>& bfs_order,
                         std::vector<std::uint64_t>& anc,
                         std::vector<std::uint64_t>& reach) {
  const int n = g.vertex_count();
  for (int i = 0; i < n; ++i) {
    int v = bfs_order[i];
    anc[v] = parent[v] < 0 ? 0 : (anc[parent[v]] | (1ULL << parent[v]));
  }
  for (int v = 0; v < n; ++v) reach[v] = anc[v] | (1ULL << v);
  for (int i = n - 1; i >= 0; --i) {
    int v = bfs_order[i];
    if (parent[v] >= 0) reach[parent[v]] |= reach[v];
  }
  for (int v = 0; v < n; ++v) {
    std::uint64_t adj = g.adjacency_mask(v)[0];
    if (adj & ~(anc[v] | reach[v])) return false;
  }
  return true;
}

TreeLayout layout_from_parents(int root, const std::vector<int>& parent) {
  std::vector<int> vertex_of(parent.size());
  std::iota(vertex_of.begin(), vertex_of.end(), 0);
  return TreeLayout::from_parents(root, parent, std::move(vertex_of));
}

void require_size(const Graph& g, const SearchBudget& b) {
  if (g.vertex_count() > b.max_vertices)
    throw std::invalid_argument("graph exceeds the oracle vertex budget");
  if (g.vertex_count() > 64)
    throw std::invalid_argument("oracle supports at most 64 vertices");
  if (g.vertex_count() == 0)
    throw std::invalid_argument("oracle requires a non-empty graph");
}

}  // namespace

std::vector<TreeLayout> all_tree_layouts(const Graph& g,
                                         std::optional<int> root,
                                         const SearchBudget& b) {
  require_size(g, b);
  const int n = g.vertex_count();
  BudgetGuard guard{b};
  std::vector<std::uint64_t> anc(n), reach(n);
  std::vector<TreeLayout> out;
  for_each_rooted_tree(
      n, root, guard,
      [&](int r, const std::vector<int>& parent,
          const std::vector<int>& order) {
        if (vertical_edges_only(g, parent, order, anc, reach))
          out.push_back(layout_from_parents(r, parent));
        return true;
      });
  std::sort(out.begin(), out.end(),
            [](const TreeLayout& a, const TreeLayout& b2) {
              if (a.root != b2.root) return a.root < b2.root;
              return a.parent < b2.parent;
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool brute_recognize(const Graph& g, const SearchBudget& b) {
  require_size(g, b);
  const int n = g.vertex_count();
  BudgetGuard guard{b};
  std::vector<std::uint64_t> anc(n), reach(n);
  bool found = false;
  for_each_rooted_tree(
      n, std::nullopt, guard,
      [&](int r, const std::vector<int>& parent,
          const std::vector<int>& order) {
        if (!vertical_edges_only(g, parent, order, anc, reach)) return true;
        if (is_indifference(g, layout_from_parents(r, parent))) {
          found = true;
          return false;
        }
        return true;
      });
  return found;
}

bool exists_pattern_free_tree_layout(const Graph& g, const PatternSet& ps,
                                     const SearchBudget& b) {
  require_size(g, b);
  const int n = g.vertex_count();
  BudgetGuard guard{b};
  std::vector<std::uint64_t> anc(n), reach(n);
  bool found = false;
  for_each_rooted_tree(
      n, std::nullopt, guard,
      [&](int r, const std::vector<int>& parent,
          const std::vector<int>& order) {
        if (!vertical_edges_only(g, parent, order, anc, reach)) return true;
        if (treelayout_excludes(g, layout_from_parents(r, parent), ps)) {
          found = true;
          return false;
        }
        return true;
      });
  return found;
}

std::vector<TreeLayout> all_indifference_tree_layouts(const Graph& g, int root,
                                                      const SearchBudget& b) {
  std::vector<TreeLayout> out;
  for (const TreeLayout& t : all_tree_layouts(g, root, b))
    if (is_indifference(g, t)) out.push_back(t);
  return out;
}

std::optional<std::vector<int>> brute_isomorphic(const Graph& g1,
                                                 const Graph& g2,
                                                 const SearchBudget& b) {
  if (g1.vertex_count() != g2.vertex_count() ||
      g1.edge_count() != g2.edge_count())
    return std::nullopt;
  const int n = g1.vertex_count();
  if (n > b.max_vertices)
    throw std::invalid_argument("graph exceeds the oracle vertex budget");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BudgetGuard guard{b};
  do {
    guard.tick();
    bool ok = true;
    for (auto [u, v] : g1.edges())
      if (!g2.adjacent(perm[u], perm[v])) {
        ok = false;
        break;
      }
    if (ok) return perm;  // equal edge counts make this a full check
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

PermutationSets brute_permutation_sets(const VertexSet& ground,
                                       const NestedCollection& c) {
  if (ground.size() > 7)
    throw std::invalid_argument("ground set too large for brute enumeration");
  std::vector<VertexSet> sets = c.all_sets();
  std::vector<int> perm(ground.elements());
  PermutationSets out;
  std::vector<int> pos(ground.empty() ? 0 : ground.elements().back() + 1, -1);
  do {
    for (size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
    auto consecutive = [&](const VertexSet& s) {
      int lo = static_cast<int>(perm.size()), hi = -1;
      for (int e : s) {
        lo = std::min(lo, pos[e]);
        hi = std::max(hi, pos[e]);
      }
      return hi - lo + 1 == s.size();
    };
    bool convex_ok = true;
    for (const VertexSet& s : sets)
      if (!consecutive(s)) {
        convex_ok = false;
        break;
      }
    if (!convex_ok) continue;
    out.convex.push_back(perm);
    bool nested_ok = true;
    for (const auto& family : c.families) {
      for (size_t i = 0; i < family.size() && nested_ok; ++i)
        for (size_t j = 0; j < family.size() && nested_ok; ++j) {
          if (i == j) continue;
          const VertexSet& z = family[i];
          const VertexSet& y = family[j];
          if (z.is_subset_of(y) && z.size() < y.size()) {
            // Every element of y\z must precede every element of z.
            int max_diff = -1, min_z = static_cast<int>(perm.size());
            for (int e : y.set_minus(z)) max_diff = std::max(max_diff, pos[e]);
            for (int e : z) min_z = std::min(min_z, pos[e]);
            if (max_diff > min_z) nested_ok = false;
          }
        }
      if (!nested_ok) break;
    }
    if (nested_ok) out.nested_convex.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.convex.begin(), out.convex.end());
  std::sort(out.nested_convex.begin(), out.nested_convex.end());
  return out;
}

bool is_chordal_bruteforce(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("graph too large for subset check");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size < 4) continue;
    // Induced cycle: every member has exactly two neighbors in the subset
    // and the subset is connected.
    bool cycle = true;
    for (int v = 0; v < n && cycle; ++v) {
      if (!((mask >> v) & 1)) continue;
      int deg = 0;
      for (int u : g.neighbors_of(v))
        if ((mask >> u) & 1) ++deg;
      if (deg != 2) cycle = false;
    }
    if (!cycle) continue;
    int start = __builtin_ctz(mask);
    std::uint32_t seen = 1u << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors_of(u))
        if (((mask >> v) & 1) && !((seen >> v) & 1)) {
          seen |= 1u << v;
          stack.push_back(v);
        }
    }
    if (seen == mask) return false;  // found an induced C_{>=4}
  }
  return true;
}

}  // namespace oracle
}  // namespace pchord
