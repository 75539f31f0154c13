#include <doctest.h>

#include <random>
#include <stdexcept>

#include "pchord/generators.hpp"
#include "pchord/isomorphism.hpp"
#include "pchord/oracle.hpp"
#include "pchord/recognition.hpp"
#include "support/util.hpp"

using namespace pchord;

namespace {

FpqHierarchy hierarchy_at(const Graph& g, int root) {
  auto w = recognize_rooted(g, root);
  REQUIRE(w.has_value());
  return w->second;
}

std::mt19937_64 rng(987654);

Graph random_proper_chordal(int max_n) {
  while (true) {
    int n = 1 + static_cast<int>(rng() % max_n);
    Graph g = testsupport::random_connected_graph(rng, n, 0.35 + 0.1 * (rng() % 4));
    if (recognize(g, true).proper_chordal) return g;
  }
}

}  // namespace

TEST_SUITE("isomorphism") {
  TEST_CASE("single-leaf code renders as 2 Q 1 L") {
    FpqHierarchy h;
    h.trees.push_back(FpqTree::single(0));
    CHECK(code_of(h).render() == "2 Q 1 L");
  }

  TEST_CASE("code is invariant under free rewrites") {
    Graph g = generate_fig8();
    int root = *g.vertex_by_name("1");
    FpqHierarchy h = hierarchy_at(g, root);
    IsoCode base = code_of(h);
    // Reversing any Q node (with label adjustment via the code path) keeps
    // the code; here we recompute from other witnesses of the same root.
    auto layouts = oracle::all_indifference_tree_layouts(g, root);
    REQUIRE(layouts.size() >= 2);
    for (const TreeLayout& t : layouts) {
      FpqHierarchy other = decorate(g, t, canonical_hierarchy(g, t));
      CHECK(code_of(other) == base);
    }
  }

  TEST_CASE("codes of the non-isomorphic pair") {
    Graph g = generate_fig9_g();
    Graph gp = generate_fig9_gprime();
    // At root x the layout sets have different sizes (1 vs 2), so even the
    // undecorated hierarchies differ there. The information-loss trap shows
    // at root a: equal hierarchies up to decoration, distinct a_hat labels.
    FpqHierarchy h1x = hierarchy_at(g, *g.vertex_by_name("x"));
    FpqHierarchy h2x = hierarchy_at(gp, *gp.vertex_by_name("x"));
    CHECK_FALSE(hierarchies_equivalent(h1x, h2x));
    FpqHierarchy h1a = hierarchy_at(g, *g.vertex_by_name("a"));
    FpqHierarchy h2a = hierarchy_at(gp, *gp.vertex_by_name("a"));
    CHECK(hierarchies_equivalent_undecorated(h1a, h2a));
    CHECK_FALSE(hierarchies_equivalent(h1a, h2a));
    CHECK(code_of(h1x) == code_of(h1x));
  }

  TEST_CASE("undecorated equivalence does not imply isomorphism") {
    // The rooted-at-a hierarchies of the pair share every tree, interval
    // and skeleton shape; only the a_hat decoration separates the graphs.
    Graph g = generate_fig9_g();
    Graph gp = generate_fig9_gprime();
    FpqHierarchy h1 = hierarchy_at(g, *g.vertex_by_name("a"));
    FpqHierarchy h2 = hierarchy_at(gp, *gp.vertex_by_name("a"));
    CHECK(code_of_undecorated(h1) == code_of_undecorated(h2));
    CHECK_FALSE(code_of(h1) == code_of(h2));
    CHECK_FALSE(oracle::brute_isomorphic(g, gp).has_value());
  }

  TEST_CASE("code survives direct rewrites with label adjustment") {
    for (int iter = 0; iter < 15; ++iter) {
      Graph g = random_proper_chordal(7);
      auto r = recognize(g);
      const FpqHierarchy& h = std::get<2>(r.witnesses.front());
      IsoCode base = code_of(h);
      FpqHierarchy rewritten = h;
      for (size_t ti = 0; ti < rewritten.trees.size(); ++ti) {
        FpqTree& t = rewritten.trees[ti];
        for (int id = 0; id < t.node_count(); ++id) {
          if (t.node(id).type != FpqTree::NodeType::Q) continue;
          if (t.node(id).children.size() < 2 || (rng() % 2)) continue;
          int c = static_cast<int>(t.node(id).children.size());
          t.reverse_children(id);
          for (SkeletonEdge& e : rewritten.skeleton)
            if (e.host_tree == static_cast<int>(ti) && e.host_node == id) {
              int a = e.a, b = e.b;
              e.a = c + 1 - b;
              e.b = c + 1 - a;
            }
        }
      }
      CHECK(code_of(rewritten) == base);
    }
  }

  TEST_CASE("code ordering matches rendered token order") {
    std::vector<IsoCode> codes;
    for (int i = 0; i < 12; ++i) {
      Graph g = random_proper_chordal(6);
      auto r = recognize(g);
      codes.push_back(code_of(std::get<2>(r.witnesses.front())));
    }
    std::vector<IsoCode> by_cmp = codes;
    std::sort(by_cmp.begin(), by_cmp.end());
    std::vector<IsoCode> by_render = codes;
    std::sort(by_render.begin(), by_render.end(),
              [](const IsoCode& a, const IsoCode& b) {
                // Re-tokenize the rendered strings and compare with the
                // stated alphabet, skipping delimiters.
                return IsoCode::compare(IsoCode::from_string(a.render()),
                                        IsoCode::from_string(b.render())) < 0;
              });
    for (size_t i = 0; i < codes.size(); ++i)
      CHECK(by_cmp[i].render() == by_render[i].render());
  }

  TEST_CASE("parse_code round trips") {
    FpqHierarchy single;
    single.trees.push_back(FpqTree::single(0));
    FpqHierarchy parsed = parse_code(IsoCode::from_string("2 Q 1 L"));
    CHECK(code_of(parsed).render() == "2 Q 1 L");

    for (int i = 0; i < 20; ++i) {
      Graph g = random_proper_chordal(7);
      auto r = recognize(g);
      IsoCode c = code_of(std::get<2>(r.witnesses.front()));
      FpqHierarchy rep = parse_code(c);
      CHECK(code_of(rep) == c);
    }

    CHECK_THROWS_AS(parse_code(IsoCode::from_string("4 Q 1 L")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_code(IsoCode::from_string("2 Q")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_code(IsoCode::from_string("3 L 1 L 1 L")),
                    std::invalid_argument);
  }

  TEST_CASE("undecorated code required for code_of is an error") {
    Graph p3 = generate_path(3);
    TreeLayout t = TreeLayout::from_layout(Layout({0, 1, 2}));
    FpqHierarchy h = canonical_hierarchy(p3, t);
    CHECK_THROWS_AS(code_of(h), std::invalid_argument);
    CHECK_NOTHROW(code_of_undecorated(h));
  }

  TEST_CASE("fig9 pair is not isomorphic") {
    CHECK_FALSE(isomorphic(generate_fig9_g(), generate_fig9_gprime()));
  }

  TEST_CASE("self-isomorphism under relabeling") {
    for (int iter = 0; iter < 25; ++iter) {
      Graph g = random_proper_chordal(7);
      auto perm = testsupport::random_permutation(rng, g.vertex_count());
      Graph shuffled = relabel(g, perm);
      auto f = isomorphic(g, shuffled);
      REQUIRE(f.has_value());
      CHECK(g.edge_count() == shuffled.edge_count());
      for (auto [u, v] : g.edges()) CHECK(shuffled.adjacent((*f)[u], (*f)[v]));
    }
  }

  TEST_CASE("verdicts match the brute oracle") {
    int agree = 0;
    for (int iter = 0; iter < 120; ++iter) {
      Graph g1 = random_proper_chordal(6);
      Graph g2 = (iter % 2 == 0)
                     ? relabel(g1, testsupport::random_permutation(
                                       rng, g1.vertex_count()))
                     : random_proper_chordal(6);
      auto lib = isomorphic(g1, g2);
      auto brute = oracle::brute_isomorphic(g1, g2);
      CHECK(lib.has_value() == brute.has_value());
      if (lib) {
        for (auto [u, v] : g1.edges())
          CHECK(g2.adjacent((*lib)[u], (*lib)[v]));
      }
      ++agree;
    }
    CHECK(agree == 120);
  }

  TEST_CASE("non proper chordal inputs are refused") {
    Graph sun = generate_k_sun(3);
    CHECK_THROWS_AS(isomorphic(sun, sun), std::invalid_argument);
  }
}
