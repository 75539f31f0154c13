#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pchord/generators.hpp"
#include "pchord/graph_io.hpp"
#include "pchord/isomorphism.hpp"
#include "pchord/oracle.hpp"
#include "pchord/recognition.hpp"

using namespace pchord;

namespace {

Graph load_graph(const std::string& path) {
  if (path == "-") return read_edge_list(std::cin);
  return read_edge_list_file(path);
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

oracle::SearchBudget env_budget() {
  oracle::SearchBudget b;
  if (const char* raw = std::getenv("PCHORD_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end && *end == '\0' && v > 0) b.max_enumerations = v;
  }
  return b;
}

int run_recognize(const std::string& file, int root, bool verdict_only) {
  Graph g = load_graph(file);
  if (root >= 0) {
    auto w = recognize_rooted(g, root);
    if (!w) {
      std::cerr << "not proper chordal rooted at " << root << "\n";
      return 1;
    }
    std::cout << "proper-chordal\nroot: " << root << "\n";
    return 0;
  }
  RecognitionResult r = recognize(g, verdict_only);
  if (!r.proper_chordal) {
    std::cerr << "not proper chordal\n";
    std::cout << "not-proper-chordal\n";
    return 1;
  }
  std::cerr << "proper chordal\n";
  std::cout << "proper-chordal\n";
  if (!verdict_only) {
    std::cout << "roots:";
    for (const auto& [x, t, h] : r.witnesses) std::cout << ' ' << x;
    std::cout << "\n";
  }
  return 0;
}

int run_certify(const std::string& file, int root, const std::string& out) {
  Graph g = load_graph(file);
  auto w = recognize_rooted(g, root);
  if (!w) {
    std::cerr << "no indifference tree-layout rooted at " << root << "\n";
    return 1;
  }
  // The witness must re-validate against the pattern checker before it is
  // written anywhere.
  if (!treelayout_excludes(g, w->first, builtin_pattern_set("proper")))
    throw std::logic_error("witness failed re-validation");
  std::string json = w->first.to_json();
  if (out == "-" || out.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot write file: " + out);
    os << json << "\n";
  }
  std::cerr << "certified root " << root << "\n";
  return 0;
}

int run_hierarchy(const std::string& file, int root, bool dot,
                  bool decorated) {
  Graph g = load_graph(file);
  auto w = recognize_rooted(g, root);
  if (!w) {
    std::cerr << "no indifference tree-layout rooted at " << root << "\n";
    return 1;
  }
  FpqHierarchy h = w->second;
  if (!decorated)
    for (SkeletonEdge& e : h.skeleton) e.a_hat.reset();
  std::cout << (dot ? h.to_dot() : h.to_json() + "\n");
  return 0;
}

int run_isomorphic(const std::string& f1, const std::string& f2) {
  Graph g1 = load_graph(f1);
  Graph g2 = load_graph(f2);
  auto f = isomorphic(g1, g2);
  if (!f) {
    std::cout << "NOT-ISOMORPHIC\n";
    return 1;
  }
  for (int u = 0; u < g1.vertex_count(); ++u)
    std::cout << u << " -> " << (*f)[u] << "\n";
  return 0;
}

int run_check_layout(const std::string& file, const std::string& layout_file,
                     const std::string& patterns) {
  Graph g = load_graph(file);
  TreeLayout t = TreeLayout::from_json(read_file(layout_file));
  if (!is_tree_layout(g, t)) {
    std::cerr << "not a tree-layout of the graph\n";
    return 1;
  }
  PatternSet ps = builtin_pattern_set(patterns);
  bool clean = true;
  for (const Pattern& p : ps.patterns) {
    auto occ = treelayout_occurrences(g, t, p);
    for (const auto& tuple : occ) {
      clean = false;
      std::cout << p.to_string() << ":";
      for (int v : tuple) std::cout << ' ' << v;
      std::cout << "\n";
    }
  }
  std::cerr << (clean ? "excludes" : "contains") << " pattern set "
            << patterns << "\n";
  return clean ? 0 : 1;
}

int run_enumerate(const std::string& file, int root, std::uint64_t limit) {
  Graph g = load_graph(file);
  auto w = recognize_rooted(g, root);
  if (!w) {
    std::cerr << "no indifference tree-layout rooted at " << root << "\n";
    return 1;
  }
  auto all = enumerate_realizations(w->second, limit);
  for (const TreeLayout& t : all) std::cout << t.to_json() << "\n";
  std::cerr << all.size() << " indifference tree-layouts rooted at " << root
            << "\n";
  return 0;
}

int run_oracle_recognize(const std::string& file) {
  Graph g = load_graph(file);
  bool ok = oracle::brute_recognize(g, env_budget());
  std::cout << (ok ? "proper-chordal" : "not-proper-chordal") << "\n";
  return ok ? 0 : 1;
}

int run_oracle_isomorphic(const std::string& f1, const std::string& f2) {
  auto f = oracle::brute_isomorphic(load_graph(f1), load_graph(f2),
                                    env_budget());
  if (!f) {
    std::cout << "NOT-ISOMORPHIC\n";
    return 1;
  }
  for (size_t u = 0; u < f->size(); ++u)
    std::cout << u << " -> " << (*f)[u] << "\n";
  return 0;
}

int run_oracle_treelayouts(const std::string& file, int root,
                           bool indifference_only) {
  Graph g = load_graph(file);
  std::optional<int> r;
  if (root >= 0) r = root;
  auto all = oracle::all_tree_layouts(g, r, env_budget());
  int printed = 0;
  for (const TreeLayout& t : all) {
    if (indifference_only && !is_indifference(g, t)) continue;
    std::cout << t.to_json() << "\n";
    ++printed;
  }
  std::cerr << printed << " tree-layouts\n";
  return 0;
}

int run_selftest(int scale) {
  std::mt19937_64 rng(1);
  int checks = 0, failures = 0;
  auto verdict = [&](bool ok, const char* what) {
    ++checks;
    if (!ok) {
      ++failures;
      std::cerr << "selftest failure: " << what << "\n";
    }
  };

  // Convex / nested-convex machinery against brute permutation filtering.
  for (int iter = 0; iter < 40 * scale; ++iter) {
    int n = 2 + static_cast<int>(rng() % 4);
    NestedCollection c;
    c.ground = VertexSet::full(n);
    for (int f = 0; f < static_cast<int>(rng() % 3); ++f) {
      std::vector<int> pool = c.ground.elements();
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(1 + rng() % pool.size());
      std::vector<VertexSet> chain{VertexSet(pool)};
      while (chain.back().size() > 1 && rng() % 2) {
        std::vector<int> v = chain.back().elements();
        std::shuffle(v.begin(), v.end(), rng);
        v.resize(1 + rng() % v.size());
        chain.push_back(VertexSet(v));
      }
      c.families.push_back(chain);
    }
    auto brute = oracle::brute_permutation_sets(c.ground, c);
    auto tree = nested_convex_fpq(c);
    bool ok = tree ? (frontier_set(*tree) == brute.nested_convex)
                   : brute.nested_convex.empty();
    verdict(ok, "nested-convex frontier mismatch");
  }

  // Recognition against the brute oracle.
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int iter = 0; iter < 30 * scale; ++iter) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < 0.45) edges.emplace_back(u, v);
    Graph g(n, edges);
    if (!g.is_connected()) continue;
    verdict(recognize(g).proper_chordal == oracle::brute_recognize(g),
            "recognition verdict mismatch");
  }

  // Indifference characterizations agree pairwise.
  for (int iter = 0; iter < 40 * scale; ++iter) {
    int n = 1 + static_cast<int>(rng() % 7);
    std::vector<int> parent(n, -1), order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i)
      parent[order[i]] = order[rng() % i];
    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;
    TreeLayout t = TreeLayout::from_parents(order[0], parent, identity);
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
      for (int a = parent[v]; a != -1; a = parent[a])
        if (coin(rng) < 0.4) edges.emplace_back(std::min(a, v), std::max(a, v));
    Graph g(n, edges);
    bool m1 = is_indifference(g, t, IndifferenceMethod::patterns);
    bool m2 = is_indifference(g, t, IndifferenceMethod::closed_nbhd);
    bool m3 = is_indifference(g, t, IndifferenceMethod::cliques);
    bool m4 = is_indifference(g, t, IndifferenceMethod::nested);
    verdict(m1 == m2 && m2 == m3 && m3 == m4,
            "indifference methods disagree");
  }

  std::cerr << "selftest: " << checks << " checks, " << failures
            << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proper chordal graph toolkit"};
  app.require_subcommand(1);

  std::string file, file2, layout_file, out, patterns = "proper";
  std::string kind;
  std::vector<std::string> gen_args;
  int root = -1;
  bool verdict_only = false, dot = false, json = false, decorated = false;
  bool indifference_only = false;
  std::uint64_t limit = 1'000'000;
  int scale = 1;

  auto* rec = app.add_subcommand("recognize", "decide proper chordality");
  rec->add_option("file", file)->required();
  rec->add_option("--root", root);
  rec->add_flag("--verdict-only", verdict_only);

  auto* cert = app.add_subcommand("certify", "write a witness tree-layout");
  cert->add_option("file", file)->required();
  cert->add_option("--root", root)->required();
  cert->add_option("--out", out);

  auto* hier = app.add_subcommand("hierarchy", "export the canonical hierarchy");
  hier->add_option("file", file)->required();
  hier->add_option("--root", root)->required();
  hier->add_flag("--dot", dot);
  hier->add_flag("--json", json);
  hier->add_flag("--decorated", decorated);

  auto* iso = app.add_subcommand("isomorphic", "isomorphism test");
  iso->add_option("file1", file)->required();
  iso->add_option("file2", file2)->required();

  auto* gen = app.add_subcommand("generate", "emit a named graph");
  gen->add_option("kind", kind)->required();
  gen->add_option("args", gen_args);

  auto* chk = app.add_subcommand("check-layout", "pattern-check a tree-layout");
  chk->add_option("file", file)->required();
  chk->add_option("layout", layout_file)->required();
  chk->add_option("--patterns", patterns);

  auto* enu = app.add_subcommand("enumerate", "list indifference tree-layouts");
  enu->add_option("file", file)->required();
  enu->add_option("--root", root)->required();
  enu->add_option("--limit", limit);

  auto* orc = app.add_subcommand("oracle", "brute-force references");
  orc->require_subcommand(1);
  auto* orec = orc->add_subcommand("recognize", "exhaustive recognition");
  orec->add_option("file", file)->required();
  auto* oiso = orc->add_subcommand("isomorphic", "exhaustive isomorphism");
  oiso->add_option("file1", file)->required();
  oiso->add_option("file2", file2)->required();
  auto* otl = orc->add_subcommand("treelayouts", "enumerate tree-layouts");
  otl->add_option("file", file)->required();
  otl->add_option("--root", root);
  otl->add_flag("--indifference", indifference_only);

  auto* self = app.add_subcommand("selftest", "reduced-scale oracle suites");
  self->add_option("--scale", scale);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rec->parsed()) return run_recognize(file, root, verdict_only);
    if (cert->parsed()) return run_certify(file, root, out);
    if (hier->parsed()) return run_hierarchy(file, root, dot, decorated);
    if (iso->parsed()) return run_isomorphic(file, file2);
    if (gen->parsed()) {
      write_edge_list(std::cout, generate(kind, gen_args));
      return 0;
    }
    if (chk->parsed()) return run_check_layout(file, layout_file, patterns);
    if (enu->parsed()) return run_enumerate(file, root, limit);
    if (orc->parsed()) {
      if (orec->parsed()) return run_oracle_recognize(file);
      if (oiso->parsed()) return run_oracle_isomorphic(file, file2);
      if (otl->parsed())
        return run_oracle_treelayouts(file, root, indifference_only);
    }
    if (self->parsed()) return run_selftest(scale);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
