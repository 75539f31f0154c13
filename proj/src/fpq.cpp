#include "pchord/fpq.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pchord {

FpqTree FpqTree::single(int element) {
  FpqTree t;
  Node q;
  q.type = NodeType::Q;
  q.children = {1};
  Node leaf;
  leaf.type = NodeType::Leaf;
  leaf.element = element;
  leaf.parent = 0;
  t.nodes_ = {q, leaf};
  t.root_ = 0;
  return t;
}

FpqTree FpqTree::build(std::vector<Node> nodes, int root) {
  FpqTree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  t.normalize();
  t.renumber_preorder();
  return t;
}

int FpqTree::leaf_count() const {
  int c = 0;
  for (const Node& n : nodes_)
    if (n.type == NodeType::Leaf) ++c;
  return c;
}

std::vector<int> FpqTree::frontier() const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int id) {
    const Node& n = nodes_[id];
    if (n.type == NodeType::Leaf) {
      out.push_back(n.element);
      return;
    }
    for (int c : n.children) walk(c);
  };
  if (root_ >= 0) walk(root_);
  return out;
}

VertexSet FpqTree::ground() const { return VertexSet(frontier()); }

std::vector<int> FpqTree::leaves_below(int id) const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int u) {
    const Node& n = nodes_[u];
    if (n.type == NodeType::Leaf) {
      out.push_back(n.element);
      return;
    }
    for (int c : n.children) walk(c);
  };
  walk(id);
  return out;
}

int FpqTree::lca(const VertexSet& elems) const {
  if (elems.empty()) throw std::invalid_argument("lca of empty set");
  std::vector<int> leaf_node(
      1 + *std::max_element(elems.begin(), elems.end()), -1);
  for (int id = 0; id < node_count(); ++id)
    if (nodes_[id].type == NodeType::Leaf &&
        nodes_[id].element < static_cast<int>(leaf_node.size()))
      leaf_node[nodes_[id].element] = id;
  std::vector<int> depth(node_count(), 0);
  for (int id = 0; id < node_count(); ++id)
    if (nodes_[id].parent >= 0) depth[id] = depth[nodes_[id].parent] + 1;
  int cur = -1;
  for (int e : elems) {
    if (e >= static_cast<int>(leaf_node.size()) || leaf_node[e] < 0)
      throw std::invalid_argument("element not in ground set");
    int u = leaf_node[e];
    if (cur < 0) {
      cur = u;
      continue;
    }
    while (cur != u) {
      if (depth[cur] >= depth[u])
        cur = nodes_[cur].parent;
      else
        u = nodes_[u].parent;
    }
  }
  return cur;
}

void FpqTree::reverse_children(int id) {
  if (nodes_[id].type != NodeType::Q && nodes_[id].type != NodeType::F)
    throw std::invalid_argument("reverse on non-Q node");
  std::reverse(nodes_[id].children.begin(), nodes_[id].children.end());
}

void FpqTree::freeze(int id) {
  if (nodes_[id].type != NodeType::Q)
    throw std::invalid_argument("freeze on non-Q node");
  nodes_[id].type = NodeType::F;
}

void FpqTree::normalize() {
  // Collapse single-child internal nodes (except the degenerate root over a
  // single leaf), retype two-child P nodes as Q, and orient every Q node so
  // that its frontier is the smaller of the two reversals.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id = 0; id < node_count(); ++id) {
      Node& n = nodes_[id];
      if (n.type == NodeType::Leaf) continue;
      if (n.children.size() == 1) {
        int c = n.children[0];
        bool degenerate_root =
            id == root_ && nodes_[c].type == NodeType::Leaf;
        if (degenerate_root) continue;
        if (id == root_) {
          root_ = c;
          nodes_[c].parent = -1;
        } else {
          Node& p = nodes_[n.parent];
          auto it = std::find(p.children.begin(), p.children.end(), id);
          *it = c;
          nodes_[c].parent = n.parent;
        }
        n.children.clear();
        n.parent = -2;  // orphaned; dropped on renumber
        changed = true;
      } else if (n.type == NodeType::P && n.children.size() == 2) {
        n.type = NodeType::Q;
        changed = true;
      }
    }
  }
  std::function<std::vector<int>(int)> orient;
  orient = [&](int id) -> std::vector<int> {
    Node& n = nodes_[id];
    if (n.type == NodeType::Leaf) return {n.element};
    std::vector<std::vector<int>> parts;
    for (int c : n.children) parts.push_back(orient(c));
    if (n.type == NodeType::Q && n.children.size() >= 2) {
      std::vector<int> fwd, rev;
      for (const auto& p : parts) fwd.insert(fwd.end(), p.begin(), p.end());
      for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        rev.insert(rev.end(), it->begin(), it->end());
      if (rev < fwd) {
        std::reverse(n.children.begin(), n.children.end());
        return rev;
      }
      return fwd;
    }
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };
  orient(root_);
}

void FpqTree::renumber_preorder() {
  std::vector<Node> out;
  std::vector<int> remap(node_count(), -1);
  std::function<void(int, int)> walk = [&](int id, int new_parent) {
    int nid = static_cast<int>(out.size());
    remap[id] = nid;
    out.push_back(nodes_[id]);
    out[nid].parent = new_parent;
    out[nid].children.clear();
    for (int c : nodes_[id].children) {
      walk(c, nid);
      out[nid].children.push_back(remap[c]);
    }
  };
  walk(root_, -1);
  nodes_ = std::move(out);
  root_ = 0;
}

namespace {

// Appends each achievable leaf sequence of the subtree to sink; counts raw
// combinations against limit.
void gen_orders(const FpqTree& t, int id, std::uint64_t limit,
                std::uint64_t& produced,
                std::vector<std::vector<int>>& sink) {
  const auto& n = t.node(id);
  if (n.type == FpqTree::NodeType::Leaf) {
    sink.push_back({n.element});
    return;
  }
  std::vector<std::vector<std::vector<int>>> child_orders(n.children.size());
  for (size_t i = 0; i < n.children.size(); ++i)
    gen_orders(t, n.children[i], limit, produced, child_orders[i]);

  auto emit_for = [&](const std::vector<int>& child_idx) {
    // Cartesian product of the chosen children's order lists.
    std::vector<size_t> pick(child_idx.size(), 0);
    while (true) {
      std::vector<int> seq;
      for (size_t i = 0; i < child_idx.size(); ++i) {
        const auto& part = child_orders[child_idx[i]][pick[i]];
        seq.insert(seq.end(), part.begin(), part.end());
      }
      if (++produced > limit)
        throw std::invalid_argument("frontier enumeration limit exceeded");
      sink.push_back(std::move(seq));
      size_t k = 0;
      while (k < pick.size() &&
             ++pick[k] == child_orders[child_idx[k]].size()) {
        pick[k] = 0;
        ++k;
      }
      if (k == pick.size()) break;
    }
  };

  std::vector<int> idx(n.children.size());
  std::iota(idx.begin(), idx.end(), 0);
  switch (n.type) {
    case FpqTree::NodeType::F:
      emit_for(idx);
      break;
    case FpqTree::NodeType::Q:
      emit_for(idx);
      if (idx.size() >= 2) {
        std::reverse(idx.begin(), idx.end());
        emit_for(idx);
      }
      break;
    case FpqTree::NodeType::P: {
      std::sort(idx.begin(), idx.end());
      do {
        emit_for(idx);
      } while (std::next_permutation(idx.begin(), idx.end()));
      break;
    }
    case FpqTree::NodeType::Leaf:
      break;
  }
}

}  // namespace

std::vector<std::vector<int>> frontier_set(const FpqTree& t,
                                           std::uint64_t limit) {
  std::vector<std::vector<int>> out;
  std::uint64_t produced = 0;
  gen_orders(t, t.root(), limit, produced, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexSet> factors(const FpqTree& t) {
  std::vector<VertexSet> out;
  for (int id = 0; id < t.node_count(); ++id) {
    const auto& n = t.node(id);
    if (n.type == FpqTree::NodeType::Leaf) {
      out.emplace_back(std::vector<int>{n.element});
      continue;
    }
    out.emplace_back(t.leaves_below(id));
    if (n.type == FpqTree::NodeType::Q || n.type == FpqTree::NodeType::F) {
      for (size_t i = 0; i < n.children.size(); ++i) {
        std::vector<int> acc;
        for (size_t j = i; j < n.children.size(); ++j) {
          auto part = t.leaves_below(n.children[j]);
          acc.insert(acc.end(), part.begin(), part.end());
          if (j > i && (i > 0 || j + 1 < n.children.size()))
            out.emplace_back(acc);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string FpqTree::to_sexpr() const {
  std::function<std::string(int)> walk = [&](int id) -> std::string {
    const Node& n = nodes_[id];
    if (n.type == NodeType::Leaf) return std::to_string(n.element);
    std::string tag = n.type == NodeType::F   ? "F"
                      : n.type == NodeType::P ? "P"
                                              : "Q";
    std::string s = "(" + tag;
    for (int c : n.children) s += " " + walk(c);
    return s + ")";
  };
  return walk(root_);
}

FpqTree FpqTree::parse_sexpr(const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && isspace(text[pos])) ++pos;
  };
  std::vector<Node> nodes;
  std::function<int()> parse = [&]() -> int {
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("truncated s-expr");
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && isalpha(text[pos])) ++pos;
      std::string tag = text.substr(start, pos - start);
      Node n;
      if (tag == "F")
        n.type = NodeType::F;
      else if (tag == "P")
        n.type = NodeType::P;
      else if (tag == "Q")
        n.type = NodeType::Q;
      else
        throw std::invalid_argument("bad node tag: " + tag);
      int id = static_cast<int>(nodes.size());
      nodes.push_back(n);
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        int c = parse();
        nodes[id].children.push_back(c);
        nodes[c].parent = id;
        skip_ws();
      }
      if (pos >= text.size()) throw std::invalid_argument("missing )");
      ++pos;
      if (nodes[id].children.empty())
        throw std::invalid_argument("internal node without children");
      return id;
    }
    size_t start = pos;
    while (pos < text.size() && (isalnum(text[pos]) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw std::invalid_argument("bad leaf token");
    Node leaf;
    leaf.type = NodeType::Leaf;
    leaf.element = std::stoi(text.substr(start, pos - start));
    int id = static_cast<int>(nodes.size());
    nodes.push_back(leaf);
    return id;
  };
  int root = parse();
  skip_ws();
  if (pos != text.size()) throw std::invalid_argument("trailing input");
  if (nodes[root].type == NodeType::Leaf) {
    // Promote a bare leaf to the degenerate tree.
    return FpqTree::single(nodes[root].element);
  }
  FpqTree t = FpqTree::build(std::move(nodes), root);
  // Validate arities after normalization.
  for (int id = 0; id < t.node_count(); ++id) {
    const Node& n = t.node(id);
    if (n.type == NodeType::Leaf) continue;
    size_t min_children = n.type == NodeType::P ? 3 : 2;
    bool degenerate =
        id == t.root() && n.type == NodeType::Q && n.children.size() == 1;
    if (!degenerate && n.children.size() < min_children)
      throw std::invalid_argument("node arity violates the normal form");
  }
  std::vector<int> g = t.frontier();
  std::sort(g.begin(), g.end());
  if (std::adjacent_find(g.begin(), g.end()) != g.end())
    throw std::invalid_argument("duplicate leaf element");
  return t;
}

std::string FpqTree::to_json() const {
  std::function<nlohmann::json(int)> walk = [&](int id) -> nlohmann::json {
    const Node& n = nodes_[id];
    if (n.type == NodeType::Leaf)
      return {{"type", "leaf"}, {"element", n.element}};
    std::string tag = n.type == NodeType::F   ? "F"
                      : n.type == NodeType::P ? "P"
                                              : "Q";
    nlohmann::json children = nlohmann::json::array();
    for (int c : n.children) children.push_back(walk(c));
    return {{"type", tag}, {"children", children}};
  };
  return walk(root_).dump();
}

namespace {

// The contiguous run of u's children whose leaf sets lie inside s, provided
// s is exactly their union; nullopt when s is not a child-run at u.
std::optional<std::pair<int, int>> child_run(const FpqTree& t, int u,
                                             const VertexSet& s) {
  const auto& children = t.node(u).children;
  int lo = -1, hi = -1;
  bool gap_after_run = false;
  for (size_t i = 0; i < children.size(); ++i) {
    bool any = false, all = true;
    for (int e : t.leaves_below(children[i])) {
      if (s.contains(e))
        any = true;
      else
        all = false;
    }
    if (any && !all) return std::nullopt;  // s cuts a child
    if (all) {
      if (gap_after_run) return std::nullopt;  // s is not contiguous
      if (lo < 0) lo = static_cast<int>(i);
      hi = static_cast<int>(i);
    } else if (lo >= 0) {
      gap_after_run = true;
    }
  }
  if (lo < 0) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace

bool always_suffix(const FpqTree& t, const VertexSet& y, const VertexSet& z) {
  if (!z.is_subset_of(y)) throw std::invalid_argument("z must be inside y");
  if (z == y) return true;
  if (z.empty()) return false;
  int u = t.lca(y);
  if (t.node(u).type == FpqTree::NodeType::Leaf)
    throw std::logic_error("lca of a non-singleton set is a leaf");
  auto y_run = child_run(t, u, y);
  if (!y_run) return false;  // y is not even a factor here
  auto [run_lo, run_hi] = *y_run;
  int zl = t.lca(z);
  if (zl == u) {
    // z occupies a consecutive sub-run; it must sit at the right end of a
    // frozen node.
    if (t.node(u).type != FpqTree::NodeType::F) return false;
    auto z_run = child_run(t, u, z);
    return z_run && z_run->second == run_hi && z_run->first > run_lo;
  }
  // z lives inside a single child; that child must be the last of y's run
  // and, when the run has other children, the node must be frozen.
  int c = zl;
  while (t.node(c).parent != u) c = t.node(c).parent;
  const auto& children = t.node(u).children;
  if (children[run_hi] != c) return false;
  if (run_hi > run_lo && t.node(u).type != FpqTree::NodeType::F) return false;
  VertexSet child_set(t.leaves_below(c));
  if (child_set == z) return true;  // z is exactly the final child
  return always_suffix(t, child_set, z);
}

}  // namespace pchord
