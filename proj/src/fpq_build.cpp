#include <algorithm>
#include <map>
#include <stdexcept>

#include "pchord/fpq.hpp"

namespace pchord {

namespace {

struct Infeasible {};

bool properly_overlap(const VertexSet& a, const VertexSet& b) {
  auto inter = a.set_intersect(b);
  if (inter.empty()) return false;
  return inter.size() < a.size() && inter.size() < b.size();
}

// Rigid arrangement of an overlap-connected family: ordered atom cells such
// that every member is a contiguous cell run. Unique up to reversal; the
// insertion of each set is forced, so any dead end means no arrangement.
struct RigidOrder {
  VertexSet covered;
  std::vector<VertexSet> cells;

  void init(const VertexSet& first) {
    covered = first;
    cells = {first};
  }

  void insert(const VertexSet& b) {
    VertexSet new_part = b.set_minus(covered);
    int lo = -1, hi = -1;
    bool gap_after = false;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].set_intersect(b).empty()) {
        if (lo >= 0) gap_after = true;
        continue;
      }
      if (gap_after) throw Infeasible{};  // run must be contiguous
      if (lo < 0) lo = static_cast<int>(i);
      hi = static_cast<int>(i);
    }
    if (lo < 0) throw std::logic_error("inserted set misses processed union");
    auto full = [&](int i) { return cells[i].is_subset_of(b); };
    for (int i = lo + 1; i < hi; ++i)
      if (!full(i)) throw Infeasible{};  // interior cells must be covered

    const int last = static_cast<int>(cells.size()) - 1;
    if (new_part.empty()) {
      if (lo == hi)
        throw std::logic_error("set inside one cell cannot overlap family");
      // Split partial extremes inward.
      if (!full(hi)) {
        VertexSet in = cells[hi].set_intersect(b);
        VertexSet out = cells[hi].set_minus(b);
        cells[hi] = in;
        cells.insert(cells.begin() + hi + 1, out);
      }
      if (!full(lo)) {
        VertexSet in = cells[lo].set_intersect(b);
        VertexSet out = cells[lo].set_minus(b);
        cells[lo] = out;
        cells.insert(cells.begin() + lo + 1, in);
      }
    } else {
      bool left_ok = lo == 0 && (lo == hi || full(lo));
      bool right_ok = hi == last && (lo == hi || full(hi));
      if (!left_ok && !right_ok) throw Infeasible{};
      if (left_ok) {
        if (lo == hi && !full(lo)) {
          VertexSet in = cells[lo].set_intersect(b);
          VertexSet out = cells[lo].set_minus(b);
          cells[lo] = in;
          cells.insert(cells.begin() + lo + 1, out);
        } else if (lo < hi && !full(hi)) {
          VertexSet in = cells[hi].set_intersect(b);
          VertexSet out = cells[hi].set_minus(b);
          cells[hi] = in;
          cells.insert(cells.begin() + hi + 1, out);
        }
        cells.insert(cells.begin(), new_part);
      } else {
        if (lo == hi && !full(hi)) {
          VertexSet in = cells[hi].set_intersect(b);
          VertexSet out = cells[hi].set_minus(b);
          cells[hi] = out;
          cells.insert(cells.begin() + hi + 1, in);
        } else if (lo < hi && !full(lo)) {
          VertexSet in = cells[lo].set_intersect(b);
          VertexSet out = cells[lo].set_minus(b);
          cells[lo] = out;
          cells.insert(cells.begin() + lo + 1, in);
        }
        cells.push_back(new_part);
      }
    }
    covered = covered.set_union(b);
  }
};

struct Component {
  std::vector<VertexSet> members;
  VertexSet unionset;
  bool rigid = false;
  std::vector<VertexSet> cells;  // ordered atoms when rigid
};

std::vector<Component> overlap_components(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  const int k = static_cast<int>(sets.size());
  std::vector<int> comp(k, -1);
  std::vector<Component> out;
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    Component c;
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size());
    std::vector<int> order{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < k; ++v)
        if (comp[v] < 0 && properly_overlap(sets[u], sets[v])) {
          comp[v] = comp[s];
          stack.push_back(v);
          order.push_back(v);
        }
    }
    for (int idx : order) c.members.push_back(sets[idx]);
    out.push_back(std::move(c));
  }
  for (Component& c : out) {
    c.unionset = c.members[0];
    for (const auto& m : c.members) c.unionset = c.unionset.set_union(m);
    if (c.members.size() >= 2) {
      c.rigid = true;
      // Re-derive a BFS insertion order: each set must overlap a processed one.
      RigidOrder ro;
      std::vector<char> done(c.members.size(), 0);
      ro.init(c.members[0]);
      done[0] = 1;
      for (size_t step = 1; step < c.members.size(); ++step) {
        size_t pick = c.members.size();
        for (size_t i = 0; i < c.members.size() && pick == c.members.size();
             ++i) {
          if (done[i]) continue;
          for (size_t j = 0; j < c.members.size(); ++j)
            if (done[j] && properly_overlap(c.members[i], c.members[j])) {
              pick = i;
              break;
            }
        }
        if (pick == c.members.size())
          throw std::logic_error("overlap component is not connected");
        ro.insert(c.members[pick]);
        done[pick] = 1;
      }
      c.cells = std::move(ro.cells);
    }
  }
  return out;
}

struct Arena {
  std::vector<FpqTree::Node> nodes;

  int make_leaf(int element) {
    FpqTree::Node n;
    n.type = FpqTree::NodeType::Leaf;
    n.element = element;
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
  int make(FpqTree::NodeType type, const std::vector<int>& children) {
    FpqTree::Node n;
    n.type = type;
    n.children = children;
    int id = static_cast<int>(nodes.size());
    nodes.push_back(n);
    for (int c : children) nodes[c].parent = id;
    return id;
  }
};

int build_convex(const VertexSet& ground, const std::vector<VertexSet>& cons,
                 Arena& arena);

int build_for_cells(const std::vector<VertexSet>& cells,
                    const std::vector<VertexSet>& cons, Arena& arena) {
  std::vector<int> children;
  for (const VertexSet& cell : cells) {
    std::vector<VertexSet> inside;
    for (const VertexSet& s : cons)
      if (s.size() < cell.size() && s.is_subset_of(cell)) inside.push_back(s);
    children.push_back(build_convex(cell, inside, arena));
  }
  return arena.make(FpqTree::NodeType::Q, children);
}

int build_convex(const VertexSet& ground, const std::vector<VertexSet>& cons,
                 Arena& arena) {
  if (ground.size() == 1) return arena.make_leaf(ground.min());
  std::vector<VertexSet> cleaned;
  for (const VertexSet& s : cons)
    if (s.size() >= 2 && s.size() < ground.size()) cleaned.push_back(s);
  std::vector<Component> comps = overlap_components(std::move(cleaned));

  // Distinct components have nested-or-disjoint unions; drop redundant
  // single-set components whose union coincides with a rigid component.
  std::map<VertexSet, int> rigid_of_union;
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i].rigid) {
      auto [it, fresh] =
          rigid_of_union.emplace(comps[i].unionset, static_cast<int>(i));
      if (!fresh)
        throw std::logic_error("two rigid components share a union");
    }
  std::vector<int> kept;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (!comps[i].rigid) {
      auto it = rigid_of_union.find(comps[i].unionset);
      if (it != rigid_of_union.end()) continue;  // already forced consecutive
    }
    kept.push_back(static_cast<int>(i));
  }

  // Maximal unions are pairwise disjoint; they and the loose elements are
  // the children of this level.
  std::vector<int> maximal;
  for (int i : kept) {
    bool below = false;
    for (int j : kept)
      if (i != j && comps[i].unionset.is_subset_of(comps[j].unionset) &&
          comps[i].unionset.size() < comps[j].unionset.size())
        below = true;
    if (!below) maximal.push_back(i);
  }

  if (maximal.size() == 1 && comps[maximal[0]].unionset == ground) {
    const Component& c = comps[maximal[0]];
    if (!c.rigid)
      throw std::logic_error("ground-spanning single-set component survived");
    return build_for_cells(c.cells, cons, arena);
  }

  std::vector<int> children;
  VertexSet used;
  for (int i : maximal) {
    const Component& c = comps[i];
    used = used.set_union(c.unionset);
    if (c.rigid) {
      children.push_back(build_for_cells(c.cells, cons, arena));
    } else {
      std::vector<VertexSet> inside;
      for (const VertexSet& s : cons)
        if (s.size() < c.unionset.size() && s.is_subset_of(c.unionset))
          inside.push_back(s);
      children.push_back(build_convex(c.unionset, inside, arena));
    }
  }
  for (int e : ground.set_minus(used)) children.push_back(arena.make_leaf(e));
  if (children.size() < 2)
    throw std::logic_error("node with fewer than two children");
  FpqTree::NodeType type =
      children.size() == 2 ? FpqTree::NodeType::Q : FpqTree::NodeType::P;
  return arena.make(type, children);
}

// Structural check that every constraint is a factor of the built tree.
void verify_constraints(const FpqTree& t, const VertexSet& ground,
                        const std::vector<VertexSet>& cons) {
  for (const VertexSet& s : cons) {
    if (s.size() <= 1 || s == ground) continue;
    int u = t.lca(s);
    const auto& n = t.node(u);
    VertexSet at(t.leaves_below(u));
    if (at == s) continue;
    if (n.type != FpqTree::NodeType::Q && n.type != FpqTree::NodeType::F)
      throw std::logic_error("constraint not represented as a factor");
    // Must be a contiguous full-children run.
    bool in_run = false, ended = false;
    for (int c : n.children) {
      VertexSet leaves(t.leaves_below(c));
      auto inter = leaves.set_intersect(s);
      if (inter.empty()) {
        if (in_run) ended = true;
        continue;
      }
      if (inter != leaves || ended)
        throw std::logic_error("constraint not represented as a factor");
      in_run = true;
    }
  }
}

}  // namespace

std::optional<FpqTree> convex_pq(const VertexSet& ground,
                                 const std::vector<VertexSet>& constraints) {
  if (ground.empty()) throw std::invalid_argument("empty ground set");
  for (const VertexSet& s : constraints)
    if (!s.is_subset_of(ground))
      throw std::invalid_argument("constraint leaves the ground set");
  if (ground.size() == 1) return FpqTree::single(ground.min());
  Arena arena;
  int root;
  try {
    root = build_convex(ground, constraints, arena);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
  FpqTree t = FpqTree::build(std::move(arena.nodes), root);
  verify_constraints(t, ground, constraints);
  return t;
}

bool NestedCollection::is_nested() const {
  for (const auto& family : families) {
    std::vector<VertexSet> f = family;
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t j = i + 1; j < f.size(); ++j)
        if (!f[i].is_subset_of(f[j]) && !f[j].is_subset_of(f[i])) return false;
  }
  return true;
}

std::vector<VertexSet> NestedCollection::all_sets() const {
  std::vector<VertexSet> out;
  for (const auto& family : families)
    out.insert(out.end(), family.begin(), family.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<FpqTree> nested_convex_fpq(const NestedCollection& c) {
  if (!c.is_nested())
    throw std::invalid_argument("collection families must be nested");
  for (const auto& family : c.families)
    for (const VertexSet& s : family) {
      if (s.empty()) throw std::invalid_argument("empty member set");
      if (!s.is_subset_of(c.ground))
        throw std::invalid_argument("member leaves the ground set");
    }

  // Chains sorted by size; the difference set of each non-trivial chain
  // joins the convexity constraints.
  struct Chain {
    std::vector<VertexSet> sets;  // ascending by size
  };
  std::vector<Chain> chains;
  for (const auto& family : c.families) {
    Chain ch;
    ch.sets = family;
    std::sort(ch.sets.begin(), ch.sets.end());
    ch.sets.erase(std::unique(ch.sets.begin(), ch.sets.end()), ch.sets.end());
    std::sort(ch.sets.begin(), ch.sets.end(),
              [](const VertexSet& a, const VertexSet& b) {
                return a.size() < b.size();
              });
    if (!ch.sets.empty()) chains.push_back(std::move(ch));
  }

  std::vector<VertexSet> cons = c.all_sets();
  for (const Chain& ch : chains)
    if (ch.sets.size() >= 2)
      cons.push_back(ch.sets.back().set_minus(ch.sets.front()));

  auto built = convex_pq(c.ground, cons);
  if (!built) return std::nullopt;
  FpqTree t = std::move(*built);

  // Freeze the lca of each chain's largest set so the smallest set lands at
  // the trailing end.
  for (const Chain& ch : chains) {
    if (ch.sets.size() < 2) continue;
    const VertexSet& smax = ch.sets.back();
    const VertexSet& smin = ch.sets.front();
    int u = t.lca(smax);
    if (t.node(u).type == FpqTree::NodeType::Leaf)
      throw std::logic_error("chain maximum collapses to a leaf");
    if (t.node(u).type == FpqTree::NodeType::P)
      throw std::logic_error("chain maximum anchored at a P node");
    // Locate the run of smax and the position of smin inside it.
    const auto& children = t.node(u).children;
    int run_lo = -1, run_hi = -1;
    std::vector<VertexSet> child_leaves;
    for (size_t i = 0; i < children.size(); ++i) {
      child_leaves.emplace_back(t.leaves_below(children[i]));
      if (child_leaves.back().set_intersect(smax).empty()) continue;
      if (run_lo < 0) run_lo = static_cast<int>(i);
      run_hi = static_cast<int>(i);
    }
    auto min_at = [&](int idx) {
      // smin occupies the end child idx: either as a child run boundary or
      // wholly inside that child.
      return !child_leaves[idx].set_intersect(smin).empty();
    };
    bool at_right = min_at(run_hi) && !min_at(run_lo);
    bool at_left = min_at(run_lo) && !min_at(run_hi);
    if (run_lo == run_hi)
      throw std::logic_error("chain maximum spans a single child");
    if (!at_left && !at_right) {
      // smin strictly interior contradicts the difference set being a
      // factor; treat as empty permutation set.
      return std::nullopt;
    }
    if (at_left) {
      if (t.node(u).type == FpqTree::NodeType::F)
        return std::nullopt;  // conflicting chain orientations
      t.reverse_children(u);
    }
    if (t.node(u).type == FpqTree::NodeType::Q) t.freeze(u);
  }

  // Certify the full nested-convex condition on the final tree.
  for (const Chain& ch : chains)
    for (size_t i = 0; i < ch.sets.size(); ++i)
      for (size_t j = i + 1; j < ch.sets.size(); ++j)
        if (ch.sets[i] != ch.sets[j] &&
            !always_suffix(t, ch.sets[j], ch.sets[i]))
          return std::nullopt;
  return t;
}

}  // namespace pchord
