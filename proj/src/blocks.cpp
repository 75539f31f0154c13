#include "pchord/blocks.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace pchord {

int BlockTree::block_of(int vertex) const {
  for (size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].contains(vertex)) return static_cast<int>(b);
  throw std::out_of_range("vertex not covered by the block tree");
}

int BlockTree::depth(int block) const {
  int d = 0;
  for (int w = parent[block]; w != -1; w = parent[w]) ++d;
  return d;
}

VertexSet BlockTree::ancestor_vertices(int b) const {
  VertexSet out;
  for (int w = parent[b]; w != -1; w = parent[w])
    out = out.set_union(blocks[w]);
  return out;
}

std::vector<int> BlockTree::children_of(int b) const {
  std::vector<int> out;
  for (size_t i = 0; i < parent.size(); ++i)
    if (parent[i] == b) out.push_back(static_cast<int>(i));
  return out;
}

std::string BlockTree::to_json() const {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (const VertexSet& b : blocks) j["blocks"].push_back(b.elements());
  j["parent"] = parent;
  return j.dump();
}

BlockTree BlockTree::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BlockTree bt;
  for (const auto& b : j.at("blocks"))
    bt.blocks.emplace_back(b.get<std::vector<int>>());
  bt.parent = j.at("parent").get<std::vector<int>>();
  bt.attach_order.resize(bt.blocks.size());
  for (size_t i = 0; i < bt.blocks.size(); ++i)
    bt.attach_order[i] = static_cast<int>(i);
  return bt;
}

namespace {

void check_component(const Graph& g, const VertexSet& s, const VertexSet& c) {
  if (c.empty()) throw std::invalid_argument("component is empty");
  if (!c.set_intersect(s).empty())
    throw std::invalid_argument("component meets the removed set");
  auto comps = connected_components(g, s);
  for (const VertexSet& comp : comps)
    if (comp == c) return;
  throw std::invalid_argument("set is not a connected component of g - s");
}

}  // namespace

VertexSet s_maximal_vertices(const Graph& g, const VertexSet& s,
                             const VertexSet& c) {
  check_component(g, s, c);
  std::vector<VertexSet> trace;
  trace.reserve(c.size());
  for (int v : c) trace.push_back(neighbors(g, v).set_intersect(s));
  // A maximal vertex's trace must contain every trace; all maximal vertices
  // then share one trace.
  int best = 0;
  for (int i = 1; i < c.size(); ++i)
    if (trace[best].is_subset_of(trace[i])) best = i;
  for (int i = 0; i < c.size(); ++i)
    if (!trace[i].is_subset_of(trace[best])) return VertexSet{};
  VertexSet out;
  for (int i = 0; i < c.size(); ++i)
    if (trace[i] == trace[best]) out.insert(c.elements()[i]);
  return out;
}

std::optional<VertexSet> s_block(const Graph& g, const VertexSet& s,
                                 const VertexSet& c) {
  VertexSet maximal = s_maximal_vertices(g, s, c);
  if (maximal.empty()) return std::nullopt;
  // N(s) within the component.
  VertexSet frontier;
  for (int v : c)
    if (!neighbors(g, v).set_intersect(s).empty()) frontier.insert(v);
  VertexSet block;
  for (int x : maximal)
    if (is_universal_to(g, x, frontier)) block.insert(x);
  if (block.empty()) return std::nullopt;
  return block;
}

std::optional<BlockTree> block_tree(const Graph& g, int x) {
  if (x < 0 || x >= g.vertex_count())
    throw std::out_of_range("root vertex out of range");
  if (!g.is_connected())
    throw std::invalid_argument("block tree requires a connected graph");
  BlockTree bt;
  bt.blocks.push_back(VertexSet{std::vector<int>{x}});
  bt.parent.push_back(-1);
  VertexSet searched = bt.blocks[0];
  while (searched.size() < g.vertex_count()) {
    auto comps = connected_components(g, searched);
    const VertexSet& c = comps.front();  // ascending minimum order
    auto block = s_block(g, searched, c);
    if (!block) return std::nullopt;
    // Parent: the deepest existing block adjacent to the new one. The
    // search invariant makes it unique; a tie is an internal error.
    VertexSet nbrs;
    for (int v : *block) nbrs = nbrs.set_union(neighbors(g, v));
    int best = -1, best_depth = -1;
    bool tie = false;
    for (size_t i = 0; i < bt.blocks.size(); ++i) {
      if (bt.blocks[i].set_intersect(nbrs).empty()) continue;
      int d = bt.depth(static_cast<int>(i));
      if (d > best_depth) {
        best_depth = d;
        best = static_cast<int>(i);
        tie = false;
      } else if (d == best_depth) {
        tie = true;
      }
    }
    if (best < 0)
      throw std::logic_error("new block has no neighbor among blocks");
    if (tie)
      throw std::logic_error(
          "deepest adjacent block is not unique; search invariant violated");
    bt.blocks.push_back(*block);
    bt.parent.push_back(best);
    searched = searched.set_union(*block);
  }
  bt.attach_order.resize(bt.blocks.size());
  for (size_t i = 0; i < bt.blocks.size(); ++i)
    bt.attach_order[i] = static_cast<int>(i);
  return bt;
}

NestedCollection nested_collection_of_block(const Graph& g,
                                            const BlockTree& bt, int b) {
  if (b < 0 || b >= static_cast<int>(bt.blocks.size()))
    throw std::out_of_range("block index out of range");
  const VertexSet& block = bt.blocks[b];
  VertexSet above = bt.ancestor_vertices(b);
  // Territory: the component of g - ancestors containing the block.
  VertexSet territory;
  for (const VertexSet& comp : connected_components(g, above))
    if (block.is_subset_of(comp)) {
      territory = comp;
      break;
    }
  if (territory.empty())
    throw std::logic_error("block is split across components");
  NestedCollection out;
  out.ground = block;
  // Components of the territory minus the block.
  VertexSet outside = VertexSet::full(g.vertex_count())
                          .set_minus(territory)
                          .set_union(block);
  for (const VertexSet& comp : connected_components(g, outside)) {
    std::vector<VertexSet> family;
    for (int y : comp) {
      VertexSet tr = neighbors(g, y).set_intersect(block);
      if (!tr.empty()) family.push_back(tr);
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    if (!family.empty()) out.families.push_back(std::move(family));
  }
  return out;
}

}  // namespace pchord
