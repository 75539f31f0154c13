#include "pchord/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pchord {

void FpqHierarchy::validate() const {
  if (trees.empty()) throw std::invalid_argument("hierarchy without trees");
  if (skeleton.size() + 1 != trees.size())
    throw std::invalid_argument("skeleton must link every non-root tree");
  std::vector<char> has_edge(trees.size(), 0);
  for (const SkeletonEdge& e : skeleton) {
    if (e.tree <= 0 || e.tree >= static_cast<int>(trees.size()))
      throw std::invalid_argument("skeleton child index out of range");
    if (e.host_tree < 0 || e.host_tree >= static_cast<int>(trees.size()))
      throw std::invalid_argument("skeleton host index out of range");
    if (has_edge[e.tree])
      throw std::invalid_argument("tree has two incoming skeleton edges");
    has_edge[e.tree] = 1;
    const FpqTree& host = trees[e.host_tree];
    if (e.host_node < 0 || e.host_node >= host.node_count())
      throw std::invalid_argument("host node out of range");
    const auto& hn = host.node(e.host_node);
    if (hn.type == FpqTree::NodeType::Leaf) {
      // Singleton attachments anchor at the leaf itself.
      if (!(e.a == 1 && e.b == 1))
        throw std::invalid_argument("leaf-hosted skeleton label must be (1,1)");
    } else {
      int c = static_cast<int>(hn.children.size());
      if (!(1 <= e.a && e.a <= e.b && e.b <= c))
        throw std::invalid_argument("skeleton label out of range");
      if (hn.type == FpqTree::NodeType::P && !(e.a == 1 && e.b == c))
        throw std::invalid_argument(
            "P-node skeleton label must span all children");
    }
  }
  // Acyclic over tree indices: walk each tree to the root.
  for (size_t i = 1; i < trees.size(); ++i) {
    int steps = 0;
    int cur = static_cast<int>(i);
    while (cur != 0) {
      cur = edge_into(cur).host_tree;
      if (++steps > static_cast<int>(trees.size()))
        throw std::invalid_argument("skeleton contains a cycle");
    }
  }
  // Leaf elements must be globally distinct.
  VertexSet all;
  int total = 0;
  for (const FpqTree& t : trees) {
    all = all.set_union(t.ground());
    total += t.leaf_count();
  }
  if (all.size() != total)
    throw std::invalid_argument("duplicate leaf elements across trees");
}

bool FpqHierarchy::decorated() const {
  for (const SkeletonEdge& e : skeleton)
    if (!e.a_hat) return false;
  return true;
}

VertexSet FpqHierarchy::leaf_elements() const {
  VertexSet all;
  for (const FpqTree& t : trees) all = all.set_union(t.ground());
  return all;
}

std::vector<int> FpqHierarchy::edges_at(int tree, int node) const {
  std::vector<int> out;
  for (size_t i = 0; i < skeleton.size(); ++i)
    if (skeleton[i].host_tree == tree && skeleton[i].host_node == node)
      out.push_back(static_cast<int>(i));
  std::sort(out.begin(), out.end(), [&](int i, int j) {
    return skeleton[i].tree < skeleton[j].tree;
  });
  return out;
}

const SkeletonEdge& FpqHierarchy::edge_into(int tree) const {
  for (const SkeletonEdge& e : skeleton)
    if (e.tree == tree) return e;
  throw std::out_of_range("no skeleton edge into tree");
}

std::string FpqHierarchy::to_json() const {
  nlohmann::json j;
  j["trees"] = nlohmann::json::array();
  for (const FpqTree& t : trees) j["trees"].push_back(t.to_sexpr());
  j["skeleton"] = nlohmann::json::array();
  for (const SkeletonEdge& e : skeleton) {
    nlohmann::json je = {{"tree", e.tree},
                         {"host_tree", e.host_tree},
                         {"host_node", e.host_node},
                         {"a", e.a},
                         {"b", e.b}};
    if (e.a_hat) je["a_hat"] = *e.a_hat;
    j["skeleton"].push_back(je);
  }
  return j.dump();
}

FpqHierarchy FpqHierarchy::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FpqHierarchy h;
  for (const auto& ts : j.at("trees"))
    h.trees.push_back(FpqTree::parse_sexpr(ts.get<std::string>()));
  for (const auto& je : j.at("skeleton")) {
    SkeletonEdge e;
    e.tree = je.at("tree").get<int>();
    e.host_tree = je.at("host_tree").get<int>();
    e.host_node = je.at("host_node").get<int>();
    e.a = je.at("a").get<int>();
    e.b = je.at("b").get<int>();
    if (je.contains("a_hat")) e.a_hat = je.at("a_hat").get<int>();
    h.skeleton.push_back(e);
  }
  h.validate();
  return h;
}

std::string FpqHierarchy::to_dot() const {
  std::ostringstream os;
  os << "digraph H {\n";
  for (size_t ti = 0; ti < trees.size(); ++ti) {
    const FpqTree& t = trees[ti];
    for (int id = 0; id < t.node_count(); ++id) {
      const auto& n = t.node(id);
      os << "  t" << ti << "n" << id << " [label=\"";
      switch (n.type) {
        case FpqTree::NodeType::Leaf:
          os << n.element;
          break;
        case FpqTree::NodeType::F:
          os << "F";
          break;
        case FpqTree::NodeType::P:
          os << "P";
          break;
        case FpqTree::NodeType::Q:
          os << "Q";
          break;
      }
      os << "\"";
      if (n.type != FpqTree::NodeType::Leaf) os << ",shape=circle";
      os << "];\n";
      for (int c : n.children)
        os << "  t" << ti << "n" << id << " -> t" << ti << "n" << c << ";\n";
    }
  }
  for (const SkeletonEdge& e : skeleton) {
    os << "  t" << e.host_tree << "n" << e.host_node << " -> t" << e.tree
       << "n" << trees[e.tree].root() << " [style=dashed,label=\"[" << e.a
       << "," << e.b << "]";
    if (e.a_hat) os << " (" << *e.a_hat << ")";
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

// Child order of a node under a choice, plus the adjusted label interval of
// a hosted edge.
std::vector<int> chosen_children(const FpqTree& t, int node,
                                 const RealizationChoice& c, int tree_idx) {
  const auto& n = t.node(node);
  std::vector<int> order = n.children;
  if (n.type == FpqTree::NodeType::P) {
    auto it = c.p_perm.find({tree_idx, node});
    if (it != c.p_perm.end()) {
      const std::vector<int>& perm = it->second;
      if (perm.size() != order.size())
        throw std::invalid_argument("choice permutation arity mismatch");
      std::vector<int> reord(order.size());
      std::vector<char> seen(order.size(), 0);
      for (size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] < 0 || perm[i] >= static_cast<int>(order.size()) ||
            seen[perm[i]])
          throw std::invalid_argument("choice permutation is not a bijection");
        seen[perm[i]] = 1;
        reord[i] = order[perm[i]];
      }
      order = std::move(reord);
    }
  } else if (n.type == FpqTree::NodeType::Q) {
    auto it = c.q_reversed.find({tree_idx, node});
    if (it != c.q_reversed.end() && it->second)
      std::reverse(order.begin(), order.end());
  } else {
    if (c.p_perm.count({tree_idx, node}) || c.q_reversed.count({tree_idx, node}))
      throw std::invalid_argument("choice targets a non-P/Q node");
  }
  return order;
}

struct RealizedTree {
  std::vector<int> leaf_order;            // vertex sequence
  std::vector<std::vector<int>> under;    // original child slot -> leaves
};

// Leaf order of one tree under a choice, tracking which leaves descend from
// each original child slot of each node (needed for interval labels).
RealizedTree realize_tree(const FpqTree& t, int tree_idx,
                          const RealizationChoice& c,
                          std::map<int, std::vector<int>>& leaves_under_node) {
  RealizedTree out;
  std::function<void(int)> walk = [&](int id) {
    const auto& n = t.node(id);
    if (n.type == FpqTree::NodeType::Leaf) {
      out.leaf_order.push_back(n.element);
      leaves_under_node[id].push_back(n.element);
      return;
    }
    std::vector<int> order = chosen_children(t, id, c, tree_idx);
    auto& mine = leaves_under_node[id];
    for (int child : order) {
      walk(child);
      const auto& sub = leaves_under_node[child];
      mine.insert(mine.end(), sub.begin(), sub.end());
    }
  };
  walk(t.root());
  return out;
}

}  // namespace

TreeLayout realize(const FpqHierarchy& h, const RealizationChoice& c) {
  h.validate();
  const int p = static_cast<int>(h.trees.size());
  std::vector<std::vector<int>> leaf_order(p);
  // leaves_in_order[tree][node] = leaves below node in chosen order.
  std::vector<std::map<int, std::vector<int>>> leaves_below(p);
  for (int i = 0; i < p; ++i)
    leaf_order[i] = realize_tree(h.trees[i], i, c, leaves_below[i]).leaf_order;

  VertexSet verts = h.leaf_elements();
  const int n = verts.size();
  std::vector<int> node_of_vertex(
      verts.empty() ? 0 : verts.elements().back() + 1, -1);
  std::vector<int> vertex_of(n), parent(n, -1);
  int next = 0;
  for (int i = 0; i < p; ++i)
    for (int v : leaf_order[i]) {
      node_of_vertex[v] = next;
      vertex_of[next] = v;
      ++next;
    }
  // Each tree's leaf order is a path.
  for (int i = 0; i < p; ++i)
    for (size_t k = 1; k < leaf_order[i].size(); ++k)
      parent[node_of_vertex[leaf_order[i][k]]] =
          node_of_vertex[leaf_order[i][k - 1]];
  // Attach each child tree below the largest leaf under the b-th chosen
  // child of its host node.
  for (const SkeletonEdge& e : h.skeleton) {
    const FpqTree& host = h.trees[e.host_tree];
    const auto& hn = host.node(e.host_node);
    int attach_vertex;
    if (hn.type == FpqTree::NodeType::Leaf) {
      attach_vertex = hn.element;
    } else {
      int cc = static_cast<int>(hn.children.size());
      int b = e.b;
      if (hn.type == FpqTree::NodeType::Q) {
        auto it = c.q_reversed.find({e.host_tree, e.host_node});
        if (it != c.q_reversed.end() && it->second) b = cc + 1 - e.a;
      }
      std::vector<int> chosen =
          chosen_children(host, e.host_node, c, e.host_tree);
      int slot = chosen[b - 1];
      attach_vertex = leaves_below[e.host_tree].at(slot).back();
    }
    int first = leaf_order[e.tree].front();
    parent[node_of_vertex[first]] = node_of_vertex[attach_vertex];
  }
  int root_vertex = leaf_order[0].front();
  return TreeLayout::from_parents(node_of_vertex[root_vertex],
                                  std::move(parent), std::move(vertex_of));
}

namespace {

struct ChoicePoint {
  int tree;
  int node;
  bool is_p;
  int arity;
};

std::vector<ChoicePoint> choice_points(const FpqHierarchy& h) {
  std::vector<ChoicePoint> out;
  for (size_t i = 0; i < h.trees.size(); ++i) {
    const FpqTree& t = h.trees[i];
    for (int id = 0; id < t.node_count(); ++id) {
      const auto& n = t.node(id);
      if (n.type == FpqTree::NodeType::P)
        out.push_back({static_cast<int>(i), id, true,
                       static_cast<int>(n.children.size())});
      else if (n.type == FpqTree::NodeType::Q && n.children.size() >= 2)
        out.push_back({static_cast<int>(i), id, false,
                       static_cast<int>(n.children.size())});
    }
  }
  return out;
}

}  // namespace

std::vector<TreeLayout> enumerate_realizations(const FpqHierarchy& h,
                                               std::uint64_t limit) {
  h.validate();
  std::vector<ChoicePoint> points = choice_points(h);
  std::uint64_t total = 1;
  for (const ChoicePoint& cp : points) {
    std::uint64_t f = 1;
    if (cp.is_p)
      for (int i = 2; i <= cp.arity; ++i) {
        f *= i;
        if (f > limit) break;
      }
    else
      f = 2;
    if (total > limit / std::max<std::uint64_t>(f, 1))
      throw std::invalid_argument("realization enumeration limit exceeded");
    total *= f;
  }
  if (total > limit)
    throw std::invalid_argument("realization enumeration limit exceeded");

  std::vector<TreeLayout> out;
  RealizationChoice choice;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == points.size()) {
      out.push_back(realize(h, choice));
      return;
    }
    const ChoicePoint& cp = points[k];
    if (cp.is_p) {
      std::vector<int> perm(cp.arity);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        choice.p_perm[{cp.tree, cp.node}] = perm;
        rec(k + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
      choice.p_perm.erase({cp.tree, cp.node});
    } else {
      for (bool rev : {false, true}) {
        choice.q_reversed[{cp.tree, cp.node}] = rev;
        rec(k + 1);
      }
      choice.q_reversed.erase({cp.tree, cp.node});
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(),
            [](const TreeLayout& a, const TreeLayout& b) {
              if (a.root != b.root) return a.root < b.root;
              if (a.parent != b.parent) return a.parent < b.parent;
              return a.vertex_of < b.vertex_of;
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<FpqHierarchy> hierarchy_from_block_tree(const Graph& g,
                                                      const BlockTree& bt) {
  FpqHierarchy h;
  for (size_t b = 0; b < bt.blocks.size(); ++b) {
    NestedCollection coll = nested_collection_of_block(g, bt, static_cast<int>(b));
    if (!coll.is_nested()) return std::nullopt;
    auto tree = nested_convex_fpq(coll);
    if (!tree) return std::nullopt;
    h.trees.push_back(std::move(*tree));
  }
  for (size_t b = 1; b < bt.blocks.size(); ++b) {
    int pb = bt.parent[b];
    const FpqTree& host = h.trees[pb];
    // Every block vertex shares its trace on the parent block.
    int z = bt.blocks[b].min();
    VertexSet attach = neighbors(g, z).set_intersect(bt.blocks[pb]);
    if (attach.empty())
      throw std::logic_error("child block has no neighbors in its parent");
    SkeletonEdge e;
    e.tree = static_cast<int>(b);
    e.host_tree = pb;
    int u = host.lca(attach);
    e.host_node = u;
    if (host.node(u).type == FpqTree::NodeType::Leaf) {
      // Singleton trace: the child block hangs below this leaf.
      e.a = 1;
      e.b = 1;
      h.skeleton.push_back(e);
      continue;
    }
    // Interval of host children covered by the attachment set.
    const auto& children = host.node(u).children;
    int lo = -1, hi = -1;
    for (size_t i = 0; i < children.size(); ++i) {
      VertexSet leaves(host.leaves_below(children[i]));
      auto inter = leaves.set_intersect(attach);
      if (inter.empty()) continue;
      if (inter != leaves)
        throw std::logic_error("attachment set cuts a host child");
      if (lo < 0) lo = static_cast<int>(i);
      hi = static_cast<int>(i);
    }
    if (lo < 0) throw std::logic_error("attachment set missing below lca");
    for (int i = lo; i <= hi; ++i) {
      VertexSet leaves(host.leaves_below(children[i]));
      if (leaves.set_intersect(attach).empty())
        throw std::logic_error("attachment interval is not contiguous");
    }
    e.a = lo + 1;
    e.b = hi + 1;
    h.skeleton.push_back(e);
  }
  h.validate();
  return h;
}

FpqHierarchy canonical_hierarchy(const Graph& g, const TreeLayout& t) {
  if (!is_indifference(g, t))
    throw std::invalid_argument("not an indifference tree-layout");
  int x = t.vertex_of[t.root];
  auto bt = block_tree(g, x);
  if (!bt)
    throw std::logic_error(
        "block search failed although an indifference tree-layout exists");
  auto h = hierarchy_from_block_tree(g, *bt);
  if (!h)
    throw std::logic_error(
        "hierarchy construction failed although an indifference tree-layout "
        "exists");
  return std::move(*h);
}

FpqHierarchy decorate(const Graph& g, const TreeLayout& t,
                      const FpqHierarchy& h) {
  FpqHierarchy out = h;
  out.validate();
  int root_vertex = t.vertex_of[t.root];
  auto bt = block_tree(g, root_vertex);
  if (!bt) throw std::invalid_argument("graph has no block tree at this root");
  // Match hierarchy trees to blocks by ground set.
  for (SkeletonEdge& e : out.skeleton) {
    VertexSet block = out.trees[e.tree].ground();
    int b = -1;
    for (size_t i = 0; i < bt->blocks.size(); ++i)
      if (bt->blocks[i] == block) b = static_cast<int>(i);
    if (b < 0)
      throw std::invalid_argument("hierarchy tree is not a block of the graph");
    VertexSet above = bt->ancestor_vertices(b);
    VertexSet nbrs;
    for (int v : block) nbrs = nbrs.set_union(neighbors(g, v));
    e.a_hat = nbrs.set_intersect(above).size();
  }
  return out;
}

Graph reconstruct_graph(const FpqHierarchy& h, const RealizationChoice& c) {
  if (!h.decorated())
    throw std::invalid_argument("reconstruction requires a_hat labels");
  TreeLayout t = realize(h, c);
  const int n = t.size();
  // Block of each vertex = ground set of its tree.
  std::vector<int> ahat_of_vertex(n, 0);
  std::vector<VertexSet> block_of_vertex(n);
  for (size_t i = 0; i < h.trees.size(); ++i) {
    VertexSet ground = h.trees[i].ground();
    int ahat = 0;
    if (i > 0) ahat = *h.edge_into(static_cast<int>(i)).a_hat;
    for (int v : ground) {
      if (v < 0 || v >= n)
        throw std::invalid_argument("leaf elements must be dense 0..n-1");
      ahat_of_vertex[v] = ahat;
      block_of_vertex[v] = ground;
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int z = 0; z < n; ++z) {
    // Ancestors from the nearest upward.
    std::vector<int> up;
    for (int u = t.parent[t.node_of[z]]; u != -1; u = t.parent[u])
      up.push_back(t.vertex_of[u]);
    int in_block = 0;
    for (int v : up)
      if (block_of_vertex[z].contains(v)) ++in_block;
    int want = in_block + ahat_of_vertex[z];
    if (want > static_cast<int>(up.size()))
      throw std::invalid_argument(
          "a_hat label exceeds the available ancestors");
    for (int k = 0; k < want; ++k) edges.emplace_back(std::min(up[k], z),
                                                      std::max(up[k], z));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

}  // namespace pchord
