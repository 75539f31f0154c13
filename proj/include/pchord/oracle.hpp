#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "pchord/fpq.hpp"
#include "pchord/graph.hpp"
#include "pchord/patterns.hpp"
#include "pchord/tree_layout.hpp"

namespace pchord {
namespace oracle {

struct SearchBudget {
  int max_vertices = 8;
  std::uint64_t max_enumerations = 500'000'000;
  std::chrono::seconds time_limit{600};
};

/// Every rooted labeled tree (Prufer sequences x all roots, identity vertex
/// assignment) that satisfies the tree-layout property, optionally filtered
/// to a fixed root vertex. Sorted by parent arrays.
std::vector<TreeLayout> all_tree_layouts(const Graph& g,
                                         std::optional<int> root,
                                         const SearchBudget& b = {});

/// True iff some tree-layout of g passes is_indifference.
bool brute_recognize(const Graph& g, const SearchBudget& b = {});

/// True iff some tree-layout of g excludes every pattern of ps.
bool exists_pattern_free_tree_layout(const Graph& g, const PatternSet& ps,
                                     const SearchBudget& b = {});

/// All indifference tree-layouts of g rooted at root.
std::vector<TreeLayout> all_indifference_tree_layouts(const Graph& g, int root,
                                                      const SearchBudget& b = {});

/// Search over all n! vertex bijections.
std::optional<std::vector<int>> brute_isomorphic(const Graph& g1,
                                                 const Graph& g2,
                                                 const SearchBudget& b = {});

struct PermutationSets {
  std::vector<std::vector<int>> convex;
  std::vector<std::vector<int>> nested_convex;
};

/// Filters all |ground|! permutations by the literal definitions of the
/// convex and nested-convex permutation sets.
PermutationSets brute_permutation_sets(const VertexSet& ground,
                                       const NestedCollection& c);

/// No induced cycle of length >= 4 (checked by subset enumeration, n <= 20).
bool is_chordal_bruteforce(const Graph& g);

}  // namespace oracle
}  // namespace pchord
