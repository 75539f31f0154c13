#include "pchord/tree_layout.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pchord {

TreeLayout TreeLayout::from_parents(int root, std::vector<int> parent,
                                    std::vector<int> vertex_of) {
  const int n = static_cast<int>(parent.size());
  if (static_cast<int>(vertex_of.size()) != n)
    throw std::invalid_argument("tree-layout field sizes disagree");
  std::vector<int> node_of(n, -1);
  for (int node = 0; node < n; ++node) {
    int v = vertex_of[node];
    if (v < 0 || v >= n || node_of[v] != -1)
      throw std::invalid_argument("vertex_of is not a bijection");
    node_of[v] = node;
  }
  if (root < 0 || root >= n) throw std::invalid_argument("bad root");
  // Normalize node ids to vertex ids; the stored bijection becomes the
  // identity, which keeps serializations and comparisons canonical.
  TreeLayout t;
  t.root = vertex_of[root];
  t.parent.assign(n, -1);
  for (int node = 0; node < n; ++node) {
    if (parent[node] < -1 || parent[node] >= n)
      throw std::invalid_argument("bad parent pointer");
    t.parent[vertex_of[node]] =
        parent[node] == -1 ? -1 : vertex_of[parent[node]];
  }
  t.vertex_of.resize(n);
  t.node_of.resize(n);
  for (int v = 0; v < n; ++v) {
    t.vertex_of[v] = v;
    t.node_of[v] = v;
  }
  t.validate();
  return t;
}

TreeLayout TreeLayout::from_layout(const Layout& l) {
  const int n = l.size();
  std::vector<int> parent(n), vertex_of(n);
  for (int i = 0; i < n; ++i) {
    parent[i] = i - 1;
    vertex_of[i] = l.order[i];
  }
  return from_parents(0, std::move(parent), std::move(vertex_of));
}

void TreeLayout::validate() const {
  const int n = size();
  if (n == 0) throw std::invalid_argument("empty tree-layout");
  if (static_cast<int>(vertex_of.size()) != n ||
      static_cast<int>(node_of.size()) != n)
    throw std::invalid_argument("tree-layout field sizes disagree");
  if (root < 0 || root >= n || parent[root] != -1)
    throw std::invalid_argument("bad root");
  for (int u = 0; u < n; ++u) {
    if (u == root) continue;
    if (parent[u] < 0 || parent[u] >= n)
      throw std::invalid_argument("bad parent pointer");
  }
  // Acyclic and rooted: every node must reach the root.
  for (int u = 0; u < n; ++u) {
    int steps = 0;
    for (int w = u; w != root; w = parent[w])
      if (++steps > n) throw std::invalid_argument("parent cycle");
  }
  for (int v = 0; v < n; ++v)
    if (node_of[v] < 0 || vertex_of[node_of[v]] != v)
      throw std::invalid_argument("node_of is not the inverse bijection");
}

bool TreeLayout::node_is_ancestor(int a, int b) const {
  for (int w = parent[b]; w != -1; w = parent[w])
    if (w == a) return true;
  return false;
}

bool TreeLayout::vertex_precedes(int x, int y) const {
  return node_is_ancestor(node_of[x], node_of[y]);
}

int TreeLayout::depth_of_node(int node) const {
  int d = 0;
  for (int w = parent[node]; w != -1; w = parent[w]) ++d;
  return d;
}

std::vector<int> TreeLayout::children_of(int node) const {
  std::vector<int> out;
  for (int u = 0; u < size(); ++u)
    if (parent[u] == node) out.push_back(u);
  return out;
}

std::vector<int> TreeLayout::preorder_positions() const {
  const int n = size();
  std::vector<std::vector<int>> children(n);
  for (int u = 0; u < n; ++u)
    if (u != root) children[parent[u]].push_back(u);
  for (auto& ch : children)
    std::sort(ch.begin(), ch.end(),
              [&](int a, int b) { return vertex_of[a] < vertex_of[b]; });
  std::vector<int> pos(n, -1);
  int counter = 0;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    pos[u] = counter++;
    for (auto it = children[u].rbegin(); it != children[u].rend(); ++it)
      stack.push_back(*it);
  }
  return pos;
}

std::vector<std::vector<std::uint64_t>> TreeLayout::ancestor_masks(
    int words) const {
  const int n = size();
  std::vector<std::vector<std::uint64_t>> anc(
      n, std::vector<std::uint64_t>(words, 0));
  // Process nodes in BFS order from the root so parents are ready.
  std::vector<std::vector<int>> children(n);
  for (int u = 0; u < n; ++u)
    if (u != root) children[parent[u]].push_back(u);
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int c : children[u]) {
      anc[vertex_of[c]] = anc[vertex_of[u]];
      int pv = vertex_of[u];
      anc[vertex_of[c]][pv / 64] |= 1ULL << (pv % 64);
      q.push(c);
    }
  }
  return anc;
}

std::string TreeLayout::to_json() const {
  nlohmann::json j;
  j["root"] = root;
  j["parent"] = parent;
  j["vertex_of"] = vertex_of;
  return j.dump();
}

TreeLayout TreeLayout::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return from_parents(j.at("root").get<int>(),
                      j.at("parent").get<std::vector<int>>(),
                      j.at("vertex_of").get<std::vector<int>>());
}

std::string TreeLayout::to_dot(const Graph& g) const {
  std::ostringstream os;
  os << "digraph T {\n  rankdir=TB;\n";
  for (int u = 0; u < size(); ++u) {
    os << "  n" << u << " [label=\"";
    if (g.has_names())
      os << g.name(vertex_of[u]);
    else
      os << vertex_of[u];
    os << "\"];\n";
  }
  for (int u = 0; u < size(); ++u)
    if (u != root) os << "  n" << parent[u] << " -> n" << u << ";\n";
  // Graph edges overlay the tree as curved undirected arcs.
  for (auto [x, y] : g.edges())
    os << "  n" << node_of[x] << " -> n" << node_of[y]
       << " [dir=none,style=dashed,color=red,constraint=false];\n";
  os << "}\n";
  return os.str();
}

bool is_tree_layout(const Graph& g, const TreeLayout& t) {
  t.validate();
  if (t.size() != g.vertex_count())
    throw std::invalid_argument("tree-layout size does not match graph");
  auto anc = t.ancestor_masks(g.mask_words());
  for (auto [x, y] : g.edges()) {
    bool xy = (anc[y][x / 64] >> (x % 64)) & 1;
    bool yx = (anc[x][y / 64] >> (y % 64)) & 1;
    if (!xy && !yx) return false;
  }
  return true;
}

namespace {

bool indifference_by_patterns(const Graph& g, const TreeLayout& t) {
  return treelayout_excludes(g, t, builtin_pattern_set("indifference"));
}

bool indifference_by_closed_nbhd(const Graph& g, const TreeLayout& t) {
  const int n = t.size();
  for (int x = 0; x < n; ++x) {
    std::vector<char> in_set(n, 0);
    in_set[t.node_of[x]] = 1;
    int count = 1;
    for (int y : g.neighbors_of(x)) {
      in_set[t.node_of[y]] = 1;
      ++count;
    }
    // Connectivity within the tree restricted to in_set nodes.
    int start = t.node_of[x];
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    std::vector<std::vector<int>> tree_adj(n);
    for (int u = 0; u < n; ++u)
      if (u != t.root) {
        tree_adj[u].push_back(t.parent[u]);
        tree_adj[t.parent[u]].push_back(u);
      }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : tree_adj[u])
        if (in_set[w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    if (reached != count) return false;
  }
  return true;
}

bool indifference_by_cliques(const Graph& g, const TreeLayout& t) {
  for (const VertexSet& k : maximal_cliques(g)) {
    // All members must be pairwise comparable: find top and bottom by depth.
    std::vector<std::pair<int, int>> by_depth;
    for (int v : k) by_depth.emplace_back(t.depth_of_node(t.node_of[v]), v);
    std::sort(by_depth.begin(), by_depth.end());
    for (size_t i = 0; i + 1 < by_depth.size(); ++i) {
      if (by_depth[i].first == by_depth[i + 1].first) return false;
      if (!t.vertex_precedes(by_depth[i].second, by_depth[i + 1].second))
        return false;
    }
    // Consecutive: walking up from the bottom must meet exactly the clique.
    int span = by_depth.back().first - by_depth.front().first + 1;
    if (span != k.size()) return false;
  }
  return true;
}

bool indifference_by_nested(const Graph& g, const TreeLayout& t) {
  const int n = t.size();
  const int words = g.mask_words();
  auto anc = t.ancestor_masks(words);
  std::vector<std::vector<std::uint64_t>> desc(
      n, std::vector<std::uint64_t>(words, 0));
  for (int y = 0; y < n; ++y)
    for (int w = 0; w < words; ++w)
      for (std::uint64_t bits = anc[y][w]; bits;) {
        int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        desc[w * 64 + b][y / 64] |= 1ULL << (y % 64);
      }
  for (int y = 0; y < n; ++y) {
    for (int w = 0; w < words; ++w) {
      for (std::uint64_t bits = anc[y][w]; bits;) {
        int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        int x = w * 64 + b;
        // N(y) inside A(x) must fall inside N(x); N(x) inside D(y) inside N(y).
        for (int ww = 0; ww < words; ++ww) {
          std::uint64_t above =
              g.adjacency_mask(y)[ww] & anc[x][ww] & ~g.adjacency_mask(x)[ww];
          if (above) return false;
          std::uint64_t below =
              g.adjacency_mask(x)[ww] & desc[y][ww] & ~g.adjacency_mask(y)[ww];
          if (below) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool is_indifference(const Graph& g, const TreeLayout& t,
                     IndifferenceMethod method) {
  if (!is_tree_layout(g, t))
    throw std::invalid_argument("not a tree-layout of the graph");
  switch (method) {
    case IndifferenceMethod::patterns:
      return indifference_by_patterns(g, t);
    case IndifferenceMethod::closed_nbhd:
      return indifference_by_closed_nbhd(g, t);
    case IndifferenceMethod::cliques:
      return indifference_by_cliques(g, t);
    case IndifferenceMethod::nested:
      return indifference_by_nested(g, t);
  }
  throw std::logic_error("unknown method");
}

void TreeIntersectionModel::validate() const {
  if (host_nodes <= 0) throw std::invalid_argument("empty host tree");
  if (static_cast<int>(host_edges.size()) != host_nodes - 1)
    throw std::invalid_argument("host is not a tree");
  std::vector<std::vector<int>> adj(host_nodes);
  for (auto [u, v] : host_edges) {
    if (u < 0 || u >= host_nodes || v < 0 || v >= host_nodes)
      throw std::invalid_argument("host edge out of range");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(host_nodes, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++cnt;
        q.push(v);
      }
  }
  if (cnt != host_nodes) throw std::invalid_argument("host is disconnected");
  for (const auto& sub : subtree_of) {
    if (sub.empty()) throw std::invalid_argument("empty subtree");
    std::vector<char> in(host_nodes, 0);
    for (int u : sub) {
      if (u < 0 || u >= host_nodes)
        throw std::invalid_argument("subtree node out of range");
      in[u] = 1;
    }
    std::vector<char> vis(host_nodes, 0);
    std::queue<int> qq;
    qq.push(sub[0]);
    vis[sub[0]] = 1;
    int reach = 1;
    while (!qq.empty()) {
      int u = qq.front();
      qq.pop();
      for (int v : adj[u])
        if (in[v] && !vis[v]) {
          vis[v] = 1;
          ++reach;
          qq.push(v);
        }
    }
    if (reach != static_cast<int>(sub.size()))
      throw std::invalid_argument("subtree is not connected");
  }
}

Graph TreeIntersectionModel::intersection_graph() const {
  const int n = static_cast<int>(subtree_of.size());
  std::vector<std::vector<char>> member(n, std::vector<char>(host_nodes, 0));
  for (int v = 0; v < n; ++v)
    for (int u : subtree_of[v]) member[v][u] = 1;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool meet = false;
      for (int u = 0; u < host_nodes && !meet; ++u)
        meet = member[a][u] && member[b][u];
      if (meet) edges.emplace_back(a, b);
    }
  return Graph(n, edges);
}

TreeLayout treelayout_from_model(const TreeIntersectionModel& m) {
  m.validate();
  const int nv = static_cast<int>(m.subtree_of.size());
  std::vector<std::vector<int>> adj(m.host_nodes);
  for (auto [u, v] : m.host_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  // Root the host at the smallest node covered by some subtree so that the
  // root coincides with a subtree top.
  int root = -1;
  std::vector<char> covered(m.host_nodes, 0);
  for (const auto& sub : m.subtree_of)
    for (int u : sub) covered[u] = 1;
  for (int u = 0; u < m.host_nodes && root < 0; ++u)
    if (covered[u]) root = u;
  if (root < 0) throw std::invalid_argument("no subtree covers any node");

  std::vector<int> host_parent(m.host_nodes, -1), host_depth(m.host_nodes, 0);
  std::vector<int> order;
  std::queue<int> q;
  q.push(root);
  std::vector<char> seen(m.host_nodes, 0);
  seen[root] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    order.push_back(u);
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        host_parent[v] = u;
        host_depth[v] = host_depth[u] + 1;
        q.push(v);
      }
  }

  // Top node of each subtree under this rooting.
  std::vector<int> top(nv, -1);
  for (int v = 0; v < nv; ++v) {
    for (int u : m.subtree_of[v])
      if (top[v] < 0 || host_depth[u] < host_depth[top[v]]) top[v] = u;
  }
  std::vector<char> is_top(m.host_nodes, 0);
  for (int v = 0; v < nv; ++v) is_top[top[v]] = 1;

  // Contract every node that is not a subtree top into its nearest top
  // ancestor (the root is a top by choice of rooting).
  if (!is_top[root]) throw std::logic_error("root is not a subtree top");
  std::vector<int> rep(m.host_nodes, -1);
  for (int u : order) rep[u] = is_top[u] ? u : rep[host_parent[u]];

  // Contracted-tree parent per top node.
  std::vector<int> ctop_parent(m.host_nodes, -1);
  for (int u : order)
    if (is_top[u] && u != root) ctop_parent[u] = rep[host_parent[u]];

  // Expand each top into a path carrying its vertices (ascending id).
  std::vector<std::vector<int>> at_top(m.host_nodes);
  for (int v = 0; v < nv; ++v) at_top[top[v]].push_back(v);
  std::vector<int> parent(nv, -1), vertex_of(nv);
  std::vector<int> first_node(m.host_nodes, -1), last_node(m.host_nodes, -1);
  int next_node = 0;
  for (int u : order) {
    if (!is_top[u]) continue;
    std::sort(at_top[u].begin(), at_top[u].end());
    for (size_t i = 0; i < at_top[u].size(); ++i) {
      int node = next_node++;
      vertex_of[node] = at_top[u][i];
      if (i == 0)
        first_node[u] = node;
      else
        parent[node] = node - 1;
      last_node[u] = node;
    }
  }
  int tl_root = -1;
  for (int u : order) {
    if (!is_top[u]) continue;
    if (u == root)
      tl_root = first_node[u];
    else
      parent[first_node[u]] = last_node[ctop_parent[u]];
  }
  return TreeLayout::from_parents(tl_root, std::move(parent),
                                  std::move(vertex_of));
}

TreeIntersectionModel model_from_treelayout(const Graph& g,
                                            const TreeLayout& t) {
  if (!is_tree_layout(g, t))
    throw std::invalid_argument("not a tree-layout of the graph");
  if (!treelayout_excludes(g, t, builtin_pattern_set("int")))
    throw std::invalid_argument(
        "tree-layout does not exclude the interval patterns");
  const int n = t.size();
  TreeIntersectionModel m;
  m.host_nodes = n;
  for (int u = 0; u < n; ++u)
    if (u != t.root) m.host_edges.emplace_back(t.parent[u], u);
  m.subtree_of.assign(n, {});
  for (int x = 0; x < n; ++x) {
    // delta(x): descendant neighbors with no deeper neighbor of x below them.
    std::vector<int> delta;
    for (int y : g.neighbors_of(x)) {
      if (!t.vertex_precedes(x, y)) continue;
      bool lowest = true;
      for (int z : g.neighbors_of(x))
        if (z != y && t.vertex_precedes(y, z)) {
          lowest = false;
          break;
        }
      if (lowest) delta.push_back(y);
    }
    // Smallest subtree containing x and delta(x): union of the node paths.
    std::vector<char> in(n, 0);
    int xn = t.node_of[x];
    in[xn] = 1;
    for (int y : delta)
      for (int u = t.node_of[y]; u != xn; u = t.parent[u]) in[u] = 1;
    for (int u = 0; u < n; ++u)
      if (in[u]) m.subtree_of[x].push_back(u);
  }
  m.validate();
  return m;
}

Layout flatten_dfs(const Graph& g, const TreeLayout& t) {
  PatternSet chordal = builtin_pattern_set("chordal");
  if (!is_tree_layout(g, t) || !treelayout_excludes(g, t, chordal))
    throw std::invalid_argument(
        "tree-layout does not exclude the chordal pattern");
  const int n = t.size();
  std::vector<std::vector<int>> children(n);
  for (int u = 0; u < n; ++u)
    if (u != t.root) children[t.parent[u]].push_back(u);
  for (auto& ch : children)
    std::sort(ch.begin(), ch.end(), [&](int a, int b) {
      return t.vertex_of[a] < t.vertex_of[b];
    });
  std::vector<int> order;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(t.vertex_of[u]);
    for (auto it = children[u].rbegin(); it != children[u].rend(); ++it)
      stack.push_back(*it);
  }
  return Layout(std::move(order));
}

std::vector<VertexSet> maximal_cliques(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<int> r;
  std::function<void(std::vector<int>, std::vector<int>)> expand =
      [&](std::vector<int> p, std::vector<int> x) {
        if (p.empty() && x.empty()) {
          out.emplace_back(r);
          return;
        }
        // Pivot on the candidate covering most of p.
        int pivot = -1, best = -1;
        for (int u : p) {
          int c = 0;
          for (int v : p)
            if (g.adjacent(u, v)) ++c;
          if (c > best) {
            best = c;
            pivot = u;
          }
        }
        for (int u : x) {
          int c = 0;
          for (int v : p)
            if (g.adjacent(u, v)) ++c;
          if (c > best) {
            best = c;
            pivot = u;
          }
        }
        std::vector<int> cand;
        for (int u : p)
          if (pivot < 0 || !g.adjacent(pivot, u)) cand.push_back(u);
        for (int u : cand) {
          std::vector<int> np, nx;
          for (int v : p)
            if (g.adjacent(u, v)) np.push_back(v);
          for (int v : x)
            if (g.adjacent(u, v)) nx.push_back(v);
          r.push_back(u);
          expand(np, nx);
          r.pop_back();
          p.erase(std::find(p.begin(), p.end(), u));
          x.push_back(u);
        }
      };
  std::vector<int> p(g.vertex_count());
  std::iota(p.begin(), p.end(), 0);
  if (!p.empty()) expand(p, {});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pchord
