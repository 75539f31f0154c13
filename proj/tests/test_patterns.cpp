#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>

#include "pchord/generators.hpp"
#include "pchord/patterns.hpp"
#include "pchord/tree_layout.hpp"

using namespace pchord;

namespace {

// Test-side brute enumeration of ordered k-tuples matching a pattern,
// independent of the library's enumeration.
int count_matches(const Graph& g, const Layout& l, const Pattern& p) {
  int n = l.size(), count = 0;
  std::vector<int> idx(p.size);
  std::function<void(int, int)> rec = [&](int k, int start) {
    if (k == p.size) {
      bool ok = true;
      for (auto [i, j] : p.edges)
        if (!g.adjacent(l.order[idx[i - 1]], l.order[idx[j - 1]])) ok = false;
      for (auto [i, j] : p.nonedges)
        if (g.adjacent(l.order[idx[i - 1]], l.order[idx[j - 1]])) ok = false;
      if (ok) ++count;
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  return count;
}

}  // namespace

TEST_SUITE("patterns") {
  TEST_CASE("parse and print") {
    Pattern p = Pattern::parse("<~12,13,23>");
    CHECK(p.size == 3);
    CHECK(p.requires_edge(1, 3));
    CHECK_FALSE(p.requires_edge(1, 2));
    CHECK(p.to_string() == "<~12,13,23>");

    Pattern two = Pattern::parse("<~12>");
    CHECK(two.size == 2);
    CHECK_FALSE(two.requires_edge(1, 2));
    CHECK_THROWS_AS(Pattern::parse("12,13"), std::invalid_argument);
    CHECK_THROWS_AS(Pattern::parse("<12,13>"), std::invalid_argument);
  }

  TEST_CASE("builtin sets match the published templates") {
    auto proper = builtin_pattern_set("proper");
    REQUIRE(proper.patterns.size() == 2);
    CHECK(proper.patterns[0] == Pattern::parse("<~12,13,23>"));
    CHECK(proper.patterns[1] == Pattern::parse("<12,13,~23>"));

    auto chordal = builtin_pattern_set("chordal");
    REQUIRE(chordal.patterns.size() == 1);
    CHECK(chordal.patterns[0] == Pattern::parse("<~12,13,23>"));

    auto cograph = builtin_pattern_set("cograph");
    REQUIRE(cograph.patterns.size() == 4);
    CHECK(cograph.patterns[0].size == 3);
    CHECK(cograph.patterns[1].size == 3);
    CHECK(cograph.patterns[2].size == 4);
    CHECK(cograph.patterns[3].size == 4);

    CHECK(builtin_pattern_set("indifference").patterns.size() == 3);
    CHECK_THROWS_AS(builtin_pattern_set("unknown"), std::invalid_argument);
  }

  TEST_CASE("layout occurrences on P3") {
    Graph p3 = generate_path(3);  // edges 0-1, 1-2
    Layout abc({0, 1, 2});
    CHECK(layout_occurrences(p3, abc, Pattern::parse("<~12,13,23>")).empty());

    // In the order a, c, b the only triple has its first pair non-adjacent
    // and the others adjacent (checked by the enumerator below).
    Layout acb({0, 2, 1});
    auto occ = layout_occurrences(p3, acb, Pattern::parse("<~12,13,23>"));
    REQUIRE(occ.size() == 1);
    CHECK(occ[0] == std::vector<int>{0, 2, 1});
    CHECK(layout_occurrences(p3, acb, Pattern::parse("<12,~13,23>")).empty());
  }

  TEST_CASE("every layout of C4 contains the chordal pattern") {
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Pattern p = Pattern::parse("<~12,13,23>");
    std::vector<int> order{0, 1, 2, 3};
    do {
      CHECK_FALSE(layout_occurrences(c4, Layout(order), p).empty());
    } while (std::next_permutation(order.begin(), order.end()));
  }

  TEST_CASE("occurrence lists agree with an independent enumerator") {
    Graph g = generate_proper_interval(11, 6);
    std::vector<int> order(6);
    std::iota(order.begin(), order.end(), 0);
    for (const auto& name : {"chordal", "proper", "cograph"}) {
      for (const Pattern& p : builtin_pattern_set(name).patterns) {
        Layout l(order);
        CHECK(static_cast<int>(layout_occurrences(g, l, p).size()) ==
              count_matches(g, l, p));
      }
    }
  }

  TEST_CASE("tree-layout occurrences and star example") {
    Graph star = generate_star(4);
    // Center-rooted star: three leaf children.
    TreeLayout t = TreeLayout::from_parents(0, {-1, 0, 0, 0}, {0, 1, 2, 3});
    for (const Pattern& p : builtin_pattern_set("proper").patterns)
      CHECK(treelayout_occurrences(star, t, p).empty());

    // Complete graphs never contain a pattern with a non-edge.
    Graph k4 = generate_clique(4);
    TreeLayout path = TreeLayout::from_layout(Layout({0, 1, 2, 3}));
    for (const Pattern& p : builtin_pattern_set("indifference").patterns)
      if (!p.nonedges.empty())
        CHECK(treelayout_occurrences(k4, path, p).empty());
  }

  TEST_CASE("path-shaped tree-layouts reproduce layout occurrences") {
    Graph g = generate_proper_interval(3, 6);
    std::vector<int> order{3, 0, 5, 1, 4, 2};
    Layout l(order);
    TreeLayout t = TreeLayout::from_layout(l);
    for (const auto& name : {"chordal", "proper", "int"})
      for (const Pattern& p : builtin_pattern_set(name).patterns)
        CHECK(layout_occurrences(g, l, p) == treelayout_occurrences(g, t, p));
  }

  TEST_CASE("reversal duality") {
    Graph g = generate_proper_interval(5, 6);
    std::vector<int> order{2, 4, 0, 1, 5, 3};
    Layout l(order);
    for (const auto& name : {"proper", "cograph"})
      for (const Pattern& p : builtin_pattern_set(name).patterns) {
        bool fwd = layout_occurrences(g, l, p).empty();
        bool rev =
            layout_occurrences(g, l.reversed(), reversed_pattern(p)).empty();
        CHECK(fwd == rev);
      }
  }

  TEST_CASE("exhaustive layout search") {
    Graph star = generate_star(4);  // K_{1,3}
    CHECK_FALSE(
        exists_pattern_free_layout(star, builtin_pattern_set("proper")));

    Graph p4 = generate_path(4);
    CHECK_FALSE(
        exists_pattern_free_layout(p4, builtin_pattern_set("cograph")));
    CHECK(exists_pattern_free_layout(p4, builtin_pattern_set("proper")));

    Graph big = generate_path(11);
    CHECK_THROWS_AS(
        exists_pattern_free_layout(big, builtin_pattern_set("proper")),
        std::invalid_argument);
  }

  TEST_CASE("remaining builtin sets separate their classes") {
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Graph k3 = generate_clique(3);
    Graph p4 = generate_path(4);
    Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});

    auto bip = builtin_pattern_set("bip");
    CHECK(exists_pattern_free_layout(c4, bip));
    CHECK_FALSE(exists_pattern_free_layout(k3, bip));

    auto forest = builtin_pattern_set("forest");
    CHECK(exists_pattern_free_layout(p4, forest));
    CHECK_FALSE(exists_pattern_free_layout(k3, forest));

    auto cocomp = builtin_pattern_set("cocomp");
    CHECK(exists_pattern_free_layout(p4, cocomp));
    CHECK_FALSE(exists_pattern_free_layout(c5, cocomp));

    auto triv = builtin_pattern_set("trivPer");
    CHECK(exists_pattern_free_layout(generate_star(4), triv));
    CHECK_FALSE(exists_pattern_free_layout(p4, triv));
    CHECK_FALSE(exists_pattern_free_layout(c4, triv));
    CHECK(exists_pattern_free_layout(generate_trivially_perfect(3, 6), triv));
  }

  TEST_CASE("proper-interval generator always has a proper-free layout") {
    for (int seed = 1; seed <= 12; ++seed) {
      Graph g = generate_proper_interval(seed, 1 + seed % 8);
      CHECK(exists_pattern_free_layout(g, builtin_pattern_set("proper")));
    }
  }

  TEST_CASE("minimality: proper-free layouts of connected graphs exclude "
            "the third indifference pattern") {
    Pattern third = Pattern::parse("<~12,13,~23>");
    auto proper = builtin_pattern_set("proper");
    int exercised = 0;
    for (int seed = 1; seed <= 30; ++seed) {
      Graph g = generate_proper_interval(seed, 2 + seed % 6);
      if (connected_components(g, {}).size() != 1) continue;
      auto l = exists_pattern_free_layout(g, proper);
      REQUIRE(l);
      CHECK(layout_occurrences(g, *l, third).empty());
      ++exercised;
    }
    CHECK(exercised > 10);
  }
}
