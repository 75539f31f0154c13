#include "pchord/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace pchord {

VertexSet::VertexSet(std::vector<int> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

VertexSet VertexSet::full(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  VertexSet s;
  s.elems_ = std::move(v);
  return s;
}

bool VertexSet::contains(int v) const {
  return std::binary_search(elems_.begin(), elems_.end(), v);
}

void VertexSet::insert(int v) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
  if (it == elems_.end() || *it != v) elems_.insert(it, v);
}

void VertexSet::erase(int v) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
  if (it != elems_.end() && *it == v) elems_.erase(it);
}

int VertexSet::min() const {
  if (elems_.empty()) throw std::logic_error("min of empty vertex set");
  return elems_.front();
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<int> out;
  out.reserve(elems_.size() + other.elems_.size());
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                 other.elems_.end(), std::back_inserter(out));
  VertexSet s;
  s.elems_ = std::move(out);
  return s;
}

VertexSet VertexSet::set_minus(const VertexSet& other) const {
  std::vector<int> out;
  std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                      other.elems_.end(), std::back_inserter(out));
  VertexSet s;
  s.elems_ = std::move(out);
  return s;
}

VertexSet VertexSet::set_intersect(const VertexSet& other) const {
  std::vector<int> out;
  std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                        other.elems_.end(), std::back_inserter(out));
  VertexSet s;
  s.elems_ = std::move(out);
  return s;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

std::string VertexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ',';
    os << elems_[i];
  }
  os << '}';
  return os.str();
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges,
             std::vector<std::string> names)
    : n_(n), names_(std::move(names)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (!names_.empty() && static_cast<int>(names_.size()) != n)
    throw std::invalid_argument("name list size does not match vertex count");
  words_ = (n + 63) / 64;
  adj_.assign(n, {});
  adj_mask_.assign(n, std::vector<std::uint64_t>(words_, 0));
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (adj_mask_[u][v / 64] & (1ULL << (v % 64)))
      throw std::invalid_argument("parallel edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    adj_mask_[u][v / 64] |= 1ULL << (v % 64);
    adj_mask_[v][u / 64] |= 1ULL << (u % 64);
    ++m_;
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
}

bool Graph::adjacent(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return (adj_mask_[u][v / 64] >> (v % 64)) & 1;
}

const std::vector<int>& Graph::neighbors_of(int v) const {
  check_vertex(v);
  return adj_[v];
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

const std::string& Graph::name(int v) const {
  check_vertex(v);
  static const std::string empty;
  if (names_.empty()) return empty;
  return names_[v];
}

std::optional<int> Graph::vertex_by_name(const std::string& name) const {
  for (int v = 0; v < static_cast<int>(names_.size()); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

const std::vector<std::uint64_t>& Graph::adjacency_mask(int v) const {
  check_vertex(v);
  return adj_mask_[v];
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj_[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++cnt;
        q.push(v);
      }
  }
  return cnt == n_;
}

VertexSet neighbors(const Graph& g, int v) {
  return VertexSet(g.neighbors_of(v));
}

std::vector<VertexSet> connected_components(const Graph& g,
                                            const VertexSet& removed) {
  const int n = g.vertex_count();
  for (int v : removed)
    if (v < 0 || v >= n) throw std::out_of_range("removed vertex out of range");
  std::vector<char> skip(n, 0);
  for (int v : removed) skip[v] = 1;
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> comps;
  for (int s = 0; s < n; ++s) {
    if (skip[s] || seen[s]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int v : g.neighbors_of(u))
        if (!skip[v] && !seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
    comps.emplace_back(std::move(comp));
  }
  // BFS from ascending start vertices already yields ascending minima.
  return comps;
}

bool is_universal_to(const Graph& g, int x, const VertexSet& s) {
  if (x < 0 || x >= g.vertex_count())
    throw std::out_of_range("vertex out of range");
  for (int v : s) {
    if (v == x) continue;
    if (!g.adjacent(x, v)) return false;
  }
  return true;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  std::vector<std::string> names;
  if (g.has_names()) {
    names.resize(n);
    for (int v = 0; v < n; ++v) names[perm[v]] = g.name(v);
  }
  return Graph(n, edges, std::move(names));
}

}  // namespace pchord
