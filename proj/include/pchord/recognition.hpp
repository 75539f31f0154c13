#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pchord/hierarchy.hpp"

namespace pchord {

enum class RejectStage { no_block, not_nested, empty_nested_convex };

struct RecognitionResult {
  bool proper_chordal = false;
  /// (root vertex, witness indifference tree-layout, decorated hierarchy),
  /// ascending by root.
  std::vector<std::tuple<int, TreeLayout, FpqHierarchy>> witnesses;
  std::map<int, RejectStage> rejected_roots;
};

/// Tries to build an indifference tree-layout of g rooted at x plus its
/// decorated canonical hierarchy. The witness is re-verified with
/// is_indifference before being returned. stage, when given, receives the
/// failure stage on absence.
std::optional<std::pair<TreeLayout, FpqHierarchy>> recognize_rooted(
    const Graph& g, int x, RejectStage* stage = nullptr);

/// Tries every root in ascending order. With verdict_only the search stops
/// at the first feasible root.
RecognitionResult recognize(const Graph& g, bool verdict_only = false);

/// All roots admitting an indifference tree-layout.
VertexSet feasible_roots(const Graph& g);

}  // namespace pchord
