#include "pchord/patterns.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pchord/tree_layout.hpp"

namespace pchord {

Pattern Pattern::parse(const std::string& text) {
  std::string s = text;
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw std::invalid_argument("pattern must be enclosed in <>: " + text);
  s = s.substr(1, s.size() - 2);
  Pattern p;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    bool nonedge = false;
    size_t k = 0;
    while (k < item.size() && item[k] == ' ') ++k;
    if (k < item.size() && item[k] == '~') {
      nonedge = true;
      ++k;
    }
    if (k + 2 > item.size() || !isdigit(item[k]) || !isdigit(item[k + 1]))
      throw std::invalid_argument("bad pattern entry: " + item);
    int i = item[k] - '0';
    int j = item[k + 1] - '0';
    if (i >= j) throw std::invalid_argument("pattern pair must have i < j");
    (nonedge ? p.nonedges : p.edges).emplace_back(i, j);
    p.size = std::max({p.size, i, j});
  }
  p.validate();
  return p;
}

std::string Pattern::to_string() const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= size; ++i)
    for (int j = i + 1; j <= size; ++j) pairs.emplace_back(i, j);
  std::ostringstream os;
  os << '<';
  bool first = true;
  for (auto [i, j] : pairs) {
    if (!first) os << ',';
    first = false;
    if (!requires_edge(i, j)) os << '~';
    os << i << j;
  }
  os << '>';
  return os.str();
}

bool Pattern::requires_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::find(edges.begin(), edges.end(), std::make_pair(i, j)) !=
         edges.end();
}

void Pattern::validate() const {
  if (size < 2 || size > 4)
    throw std::invalid_argument("pattern size must be 2..4");
  int expected = size * (size - 1) / 2;
  if (static_cast<int>(edges.size() + nonedges.size()) != expected)
    throw std::invalid_argument("pattern must constrain every pair");
  for (auto& e : edges)
    if (std::find(nonedges.begin(), nonedges.end(), e) != nonedges.end())
      throw std::invalid_argument("pair both edge and non-edge");
}

namespace {

Pattern pat(const char* text) { return Pattern::parse(text); }

}  // namespace

PatternSet builtin_pattern_set(const std::string& name) {
  if (name == "chordal") return {name, {pat("<~12,13,23>")}};
  if (name == "int")
    return {name, {pat("<~12,13,23>"), pat("<~12,13,~23>")}};
  if (name == "proper")
    return {name, {pat("<~12,13,23>"), pat("<12,13,~23>")}};
  if (name == "indifference")
    return {name,
            {pat("<~12,13,23>"), pat("<~12,13,~23>"), pat("<12,13,~23>")}};
  if (name == "cograph")
    return {name,
            {pat("<12,~13,23>"), pat("<~12,13,~23>"),
             pat("<~12,13,~14,23,24,~34>"), pat("<12,~13,14,~23,~24,34>")}};
  if (name == "bip") return {name, {pat("<12,13,23>"), pat("<12,~13,23>")}};
  if (name == "forest")
    return {name, {pat("<12,13,23>"), pat("<~12,13,23>")}};
  if (name == "cocomp") return {name, {pat("<~12,13,~23>")}};
  if (name == "trivPer")
    return {name, {pat("<~12,13,23>"), pat("<12,~13,23>")}};
  throw std::invalid_argument("unknown pattern set: " + name);
}

Layout::Layout(std::vector<int> order_) : order(std::move(order_)) {
  const int n = static_cast<int>(order.size());
  pos_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    if (v < 0 || v >= n || pos_[v] != -1)
      throw std::invalid_argument("layout is not a permutation");
    pos_[v] = i;
  }
}

Layout Layout::reversed() const {
  std::vector<int> rev(order.rbegin(), order.rend());
  return Layout(std::move(rev));
}

namespace {

bool tuple_matches(const Graph& g, const std::vector<int>& verts,
                   const Pattern& p) {
  for (auto [i, j] : p.edges)
    if (!g.adjacent(verts[i - 1], verts[j - 1])) return false;
  for (auto [i, j] : p.nonedges)
    if (g.adjacent(verts[i - 1], verts[j - 1])) return false;
  return true;
}

void combos(int n, int k, const std::function<void(const std::vector<int>&)>& f,
            std::vector<int>& cur, int start) {
  if (static_cast<int>(cur.size()) == k) {
    f(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combos(n, k, f, cur, i + 1);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> layout_occurrences(const Graph& g,
                                                 const Layout& l,
                                                 const Pattern& p) {
  if (l.size() != g.vertex_count())
    throw std::invalid_argument("layout size does not match graph");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<int> verts(p.size);
  combos(
      l.size(), p.size,
      [&](const std::vector<int>& positions) {
        for (int i = 0; i < p.size; ++i) verts[i] = l.order[positions[i]];
        if (tuple_matches(g, verts, p)) out.push_back(verts);
      },
      cur, 0);
  return out;
}

std::vector<std::vector<int>> treelayout_occurrences(const Graph& g,
                                                     const TreeLayout& t,
                                                     const Pattern& p) {
  t.validate();
  if (t.size() != g.vertex_count())
    throw std::invalid_argument("tree-layout size does not match graph");
  // Enumerate chains bottom-up: for each vertex as the deepest element,
  // choose the rest from its ancestor path. Sorting key is the preorder
  // position tuple so that path-shaped tree-layouts reproduce the layout
  // enumeration order exactly.
  std::vector<int> pre = t.preorder_positions();
  std::vector<std::vector<int>> out;
  for (int node = 0; node < t.size(); ++node) {
    std::vector<int> path;  // vertices from root down to node, inclusive
    for (int u = node; u != -1; u = t.parent[u]) path.push_back(t.vertex_of[u]);
    std::reverse(path.begin(), path.end());
    if (static_cast<int>(path.size()) < p.size) continue;
    std::vector<int> cur;
    std::vector<int> verts(p.size);
    combos(
        static_cast<int>(path.size()) - 1, p.size - 1,
        [&](const std::vector<int>& idx) {
          for (int i = 0; i + 1 < p.size; ++i) verts[i] = path[idx[i]];
          verts[p.size - 1] = path.back();
          if (tuple_matches(g, verts, p)) out.push_back(verts);
        },
        cur, 0);
  }
  std::sort(out.begin(), out.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              for (size_t i = 0; i < a.size(); ++i) {
                int pa = pre[t.node_of[a[i]]], pb = pre[t.node_of[b[i]]];
                if (pa != pb) return pa < pb;
              }
              return false;
            });
  return out;
}

bool layout_excludes(const Graph& g, const Layout& l, const PatternSet& ps) {
  for (const Pattern& p : ps.patterns)
    if (!layout_occurrences(g, l, p).empty()) return false;
  return true;
}

bool treelayout_excludes(const Graph& g, const TreeLayout& t,
                         const PatternSet& ps) {
  for (const Pattern& p : ps.patterns)
    if (!treelayout_occurrences(g, t, p).empty()) return false;
  return true;
}

std::optional<Layout> exists_pattern_free_layout(const Graph& g,
                                                 const PatternSet& ps,
                                                 int max_n) {
  const int n = g.vertex_count();
  if (n > max_n)
    throw std::invalid_argument("graph too large for exhaustive layout search");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    Layout l(order);
    if (layout_excludes(g, l, ps)) return l;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

Pattern reversed_pattern(const Pattern& p) {
  Pattern r;
  r.size = p.size;
  for (auto [i, j] : p.edges)
    r.edges.emplace_back(p.size + 1 - j, p.size + 1 - i);
  for (auto [i, j] : p.nonedges)
    r.nonedges.emplace_back(p.size + 1 - j, p.size + 1 - i);
  std::sort(r.edges.begin(), r.edges.end());
  std::sort(r.nonedges.begin(), r.nonedges.end());
  return r;
}

}  // namespace pchord
