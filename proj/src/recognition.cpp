#include "pchord/recognition.hpp"

#include <stdexcept>

namespace pchord {

std::optional<std::pair<TreeLayout, FpqHierarchy>> recognize_rooted(
    const Graph& g, int x, RejectStage* stage) {
  if (!g.is_connected())
    throw std::invalid_argument("recognition requires a connected graph");
  auto bt = block_tree(g, x);
  if (!bt) {
    if (stage) *stage = RejectStage::no_block;
    return std::nullopt;
  }
  FpqHierarchy h;
  h.trees.reserve(bt->blocks.size());
  for (size_t b = 0; b < bt->blocks.size(); ++b) {
    NestedCollection coll =
        nested_collection_of_block(g, *bt, static_cast<int>(b));
    if (!coll.is_nested()) {
      if (stage) *stage = RejectStage::not_nested;
      return std::nullopt;
    }
    auto tree = nested_convex_fpq(coll);
    if (!tree) {
      if (stage) *stage = RejectStage::empty_nested_convex;
      return std::nullopt;
    }
    h.trees.push_back(std::move(*tree));
  }
  // All blocks admit FPQ-trees; assemble the hierarchy and realize the
  // canonical first member. Any failure past this point is a bug, not a
  // negative answer.
  auto full = hierarchy_from_block_tree(g, *bt);
  if (!full)
    throw std::logic_error(
        "hierarchy assembly failed after all blocks were verified");
  TreeLayout witness = realize(*full, RealizationChoice::identity());
  if (!is_indifference(g, witness))
    throw std::logic_error("realized witness failed the indifference check");
  FpqHierarchy decorated = decorate(g, witness, *full);
  return std::make_pair(std::move(witness), std::move(decorated));
}

RecognitionResult recognize(const Graph& g, bool verdict_only) {
  if (!g.is_connected())
    throw std::invalid_argument("recognition requires a connected graph");
  if (g.vertex_count() < 1)
    throw std::invalid_argument("recognition requires at least one vertex");
  RecognitionResult result;
  for (int x = 0; x < g.vertex_count(); ++x) {
    RejectStage stage;
    auto w = recognize_rooted(g, x, &stage);
    if (w) {
      result.witnesses.emplace_back(x, std::move(w->first),
                                    std::move(w->second));
      result.proper_chordal = true;
      if (verdict_only) break;
    } else {
      result.rejected_roots.emplace(x, stage);
    }
  }
  return result;
}

VertexSet feasible_roots(const Graph& g) {
  VertexSet out;
  for (const auto& [root, layout, hierarchy] : recognize(g).witnesses) {
    (void)layout;
    (void)hierarchy;
    out.insert(root);
  }
  return out;
}

}  // namespace pchord
