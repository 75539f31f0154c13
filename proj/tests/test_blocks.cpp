#include <doctest.h>

#include <random>
#include <stdexcept>

#include "pchord/blocks.hpp"
#include "pchord/generators.hpp"
#include "pchord/oracle.hpp"
#include "support/util.hpp"

using namespace pchord;

namespace {

// Brute block computation straight from the definition, independent of the
// library path.
std::optional<VertexSet> brute_block(const Graph& g, const VertexSet& s,
                                     const VertexSet& c) {
  std::vector<int> cand;
  for (int x : c) {
    VertexSet tx = neighbors(g, x).set_intersect(s);
    bool maximal = true;
    for (int y : c) {
      VertexSet ty = neighbors(g, y).set_intersect(s);
      if (!ty.is_subset_of(tx)) maximal = false;
    }
    if (!maximal) continue;
    bool universal = true;
    for (int w : c) {
      if (w == x) continue;
      if (neighbors(g, w).set_intersect(s).empty()) continue;
      if (!g.adjacent(x, w)) universal = false;
    }
    if (universal) cand.push_back(x);
  }
  if (cand.empty()) return std::nullopt;
  return VertexSet(cand);
}

// The per-vertex block of an indifference tree-layout.
VertexSet layout_block_of(const Graph& g, const TreeLayout& t, int vertex) {
  VertexSet anc;
  for (int u = t.parent[t.node_of[vertex]]; u != -1; u = t.parent[u])
    anc.insert(t.vertex_of[u]);
  if (anc.empty()) return VertexSet({vertex});
  for (const VertexSet& comp : connected_components(g, anc))
    if (comp.contains(vertex)) {
      auto b = s_block(g, anc, comp);
      REQUIRE(b.has_value());
      return *b;
    }
  FAIL("vertex not found in any component");
  return {};
}

}  // namespace

TEST_SUITE("blocks") {
  TEST_CASE("s-maximal vertices") {
    Graph p3 = generate_path(3);
    CHECK(s_maximal_vertices(p3, VertexSet({0}), VertexSet({1, 2})) ==
          VertexSet({1}));

    Graph k4 = generate_clique(4);
    CHECK(s_maximal_vertices(k4, VertexSet({0}), VertexSet({1, 2, 3})) ==
          VertexSet({1, 2, 3}));

    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(s_maximal_vertices(c4, VertexSet({0}), VertexSet({1, 2, 3})) ==
          VertexSet({1, 3}));

    CHECK_THROWS_AS(
        s_maximal_vertices(p3, VertexSet({0}), VertexSet({2})),
        std::invalid_argument);
  }

  TEST_CASE("s-block examples and brute agreement") {
    Graph p3 = generate_path(3);
    auto b = s_block(p3, VertexSet({0}), VertexSet({1, 2}));
    REQUIRE(b);
    CHECK(*b == VertexSet({1}));

    Graph kn = generate_clique(5);
    auto kb = s_block(kn, VertexSet({0}), VertexSet({1, 2, 3, 4}));
    REQUIRE(kb);
    CHECK(*kb == VertexSet({1, 2, 3, 4}));

    Graph sun = generate_k_sun(3);
    auto comps = connected_components(sun, VertexSet({0}));
    REQUIRE(comps.size() == 1);
    CHECK(s_block(sun, VertexSet({0}), comps[0]) ==
          brute_block(sun, VertexSet({0}), comps[0]));

    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 200; ++iter) {
      int n = 2 + static_cast<int>(rng() % 6);
      Graph g = testsupport::random_connected_graph(rng, n, 0.45);
      VertexSet s({static_cast<int>(rng() % n)});
      for (const VertexSet& comp : connected_components(g, s))
        CHECK(s_block(g, s, comp) == brute_block(g, s, comp));
    }
  }

  TEST_CASE("block tree of a path") {
    Graph p3 = generate_path(3);
    auto bt = block_tree(p3, 0);
    REQUIRE(bt);
    REQUIRE(bt->blocks.size() == 3);
    CHECK(bt->blocks[0] == VertexSet({0}));
    CHECK(bt->blocks[1] == VertexSet({1}));
    CHECK(bt->blocks[2] == VertexSet({2}));
    CHECK(bt->parent == std::vector<int>{-1, 0, 1});
  }

  TEST_CASE("block tree of the seven-vertex fixture at root 1") {
    // Blocks derived by brute force from the definition: at S = {1,a} all
    // of b, c, d share the trace {a} and are pairwise adjacent, so the
    // block is {b,c,d}; the pendants 2 and 3 follow as singletons.
    Graph f8 = generate_fig8();
    auto id = [&](const char* s) { return *f8.vertex_by_name(s); };
    auto bt = block_tree(f8, id("1"));
    REQUIRE(bt);
    REQUIRE(bt->blocks.size() == 5);
    CHECK(bt->blocks[0] == VertexSet({id("1")}));
    CHECK(bt->blocks[1] == VertexSet({id("a")}));
    CHECK(bt->blocks[2] == VertexSet({id("b"), id("c"), id("d")}));
    CHECK(bt->blocks[3] == VertexSet({id("2")}));
    CHECK(bt->blocks[4] == VertexSet({id("3")}));
    CHECK(bt->parent == std::vector<int>{-1, 0, 1, 2, 2});
    // Agreement with the literal definition at each search step.
    VertexSet s({id("1"), id("a")});
    auto comps = connected_components(f8, s);
    REQUIRE(comps.size() == 1);
    CHECK(brute_block(f8, s, comps[0]) ==
          std::optional<VertexSet>(VertexSet({id("b"), id("c"), id("d")})));
  }

  TEST_CASE("block search is deterministic") {
    Graph fan = generate_k_fan(5);
    for (int x = 0; x < fan.vertex_count(); ++x) {
      auto bt = block_tree(fan, x);
      auto bt2 = block_tree(fan, x);
      CHECK(bt.has_value() == bt2.has_value());
      if (bt) CHECK(bt->blocks == bt2->blocks);
    }
  }

  TEST_CASE("blocks partition the vertex set and induce cliques") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 120) {
      int n = 1 + static_cast<int>(rng() % 7);
      Graph g = testsupport::random_connected_graph(rng, n, 0.5);
      auto bt = block_tree(g, static_cast<int>(rng() % n));
      if (!bt) continue;
      ++done;
      VertexSet all;
      int total = 0;
      for (const VertexSet& b : bt->blocks) {
        all = all.set_union(b);
        total += b.size();
        for (int u : b)
          for (int v : b)
            if (u < v) CHECK(g.adjacent(u, v));
      }
      CHECK(all.size() == n);
      CHECK(total == n);
    }
  }

  TEST_CASE("disconnected input is rejected") {
    Graph two(2, {});
    CHECK_THROWS_AS(block_tree(two, 0), std::invalid_argument);
  }

  TEST_CASE("nested collections of blocks") {
    Graph p3 = generate_path(3);
    auto bt = block_tree(p3, 0);
    REQUIRE(bt);
    NestedCollection c1 = nested_collection_of_block(p3, *bt, 1);
    CHECK(c1.ground == VertexSet({1}));
    REQUIRE(c1.families.size() == 1);
    CHECK(c1.families[0] == std::vector<VertexSet>{VertexSet({1})});
    NestedCollection c2 = nested_collection_of_block(p3, *bt, 2);
    CHECK(c2.families.empty());
  }

  TEST_CASE("block membership inside indifference tree-layouts is nested") {
    std::mt19937_64 rng(555);
    int done = 0;
    while (done < 20) {
      int n = 2 + static_cast<int>(rng() % 5);
      Graph g = testsupport::random_connected_graph(rng, n, 0.55);
      bool found = false;
      for (const TreeLayout& t : oracle::all_tree_layouts(g, std::nullopt)) {
        if (!is_indifference(g, t)) continue;
        found = true;
        for (int x = 0; x < n; ++x) {
          VertexSet bx = layout_block_of(g, t, x);
          for (int y : bx)
            if (y != x && t.vertex_precedes(x, y)) {
              VertexSet by = layout_block_of(g, t, y);
              CHECK(by.is_subset_of(bx));
              CHECK(by.size() < bx.size());
            }
        }
        break;
      }
      if (found) ++done;
    }
  }

  TEST_CASE("extensions of a block tree are tree-layouts") {
    std::mt19937_64 rng(808);
    int done = 0;
    while (done < 60) {
      int n = 2 + static_cast<int>(rng() % 6);
      Graph g = testsupport::random_connected_graph(rng, n, 0.5);
      auto bt = block_tree(g, static_cast<int>(rng() % n));
      if (!bt) continue;
      ++done;
      std::vector<std::vector<int>> order(bt->blocks.size());
      for (size_t b = 0; b < bt->blocks.size(); ++b) {
        order[b] = bt->blocks[b].elements();
        std::shuffle(order[b].begin(), order[b].end(), rng);
      }
      std::vector<int> parent(n, -1), vertex_of(n), node_of(n);
      int next = 0;
      for (size_t b = 0; b < bt->blocks.size(); ++b)
        for (size_t i = 0; i < order[b].size(); ++i) {
          vertex_of[next] = order[b][i];
          node_of[order[b][i]] = next;
          if (i > 0) parent[next] = next - 1;
          ++next;
        }
      int root_node = node_of[order[0][0]];
      for (size_t b = 1; b < bt->blocks.size(); ++b)
        parent[node_of[order[b][0]]] = node_of[order[bt->parent[b]].back()];
      TreeLayout t = TreeLayout::from_parents(root_node, parent, vertex_of);
      CHECK(is_tree_layout(g, t));
    }
  }

  TEST_CASE("block partition is independent of processing order") {
    std::mt19937_64 rng(4321);
    int done = 0;
    while (done < 40) {
      int n = 2 + static_cast<int>(rng() % 6);
      Graph g = testsupport::random_connected_graph(rng, n, 0.5);
      int x = static_cast<int>(rng() % n);
      auto bt = block_tree(g, x);
      if (!bt) continue;
      ++done;
      std::vector<int> rev(n);
      for (int v = 0; v < n; ++v) rev[v] = n - 1 - v;
      Graph gr = relabel(g, rev);
      auto btr = block_tree(gr, rev[x]);
      REQUIRE(btr);
      std::vector<VertexSet> mapped;
      for (const VertexSet& b : bt->blocks) {
        std::vector<int> m;
        for (int v : b) m.push_back(rev[v]);
        mapped.emplace_back(m);
      }
      std::sort(mapped.begin(), mapped.end());
      std::vector<VertexSet> got = btr->blocks;
      std::sort(got.begin(), got.end());
      CHECK(mapped == got);
    }
  }

  TEST_CASE("automorphic roots give isomorphic block trees with sizes") {
    // The path reversal maps root 0 to root 4; a star fixes the center and
    // permutes the leaves.
    auto shape = [&](const Graph& g, int x) {
      auto bt = block_tree(g, x);
      REQUIRE(bt);
      std::vector<std::vector<int>> children(bt->blocks.size());
      std::vector<std::string> label(bt->blocks.size());
      int root = -1;
      for (size_t b = 0; b < bt->blocks.size(); ++b) {
        label[b] = std::to_string(bt->blocks[b].size());
        if (bt->parent[b] == -1)
          root = static_cast<int>(b);
        else
          children[bt->parent[b]].push_back(static_cast<int>(b));
      }
      return testsupport::rooted_tree_code(children, label, root);
    };
    Graph p5 = generate_path(5);
    CHECK(shape(p5, 0) == shape(p5, 4));
    Graph star = generate_star(5);
    CHECK(shape(star, 1) == shape(star, 4));
    Graph f9 = generate_fig9_g();
    int w = *f9.vertex_by_name("w");
    int wp = *f9.vertex_by_name("w'");
    CHECK(shape(f9, w) == shape(f9, wp));
  }

  TEST_CASE("json round trip") {
    Graph f8 = generate_fig8();
    auto bt = block_tree(f8, 0);
    REQUIRE(bt);
    BlockTree back = BlockTree::from_json(bt->to_json());
    CHECK(back.blocks == bt->blocks);
    CHECK(back.parent == bt->parent);
  }
}
