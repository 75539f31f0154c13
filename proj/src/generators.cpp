#include "pchord/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fixture_data.hpp"
#include "pchord/graph_io.hpp"

namespace pchord {

Graph generate_k_sun(int k) {
  if (k < 3) throw std::invalid_argument("k-sun requires k >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
  for (int i = 0; i < k; ++i) {
    edges.emplace_back(i, k + i);
    edges.emplace_back((i + 1) % k, k + i);
  }
  return Graph(2 * k, edges);
}

Graph generate_k_fan(int k) {
  if (k < 3) throw std::invalid_argument("k-fan requires k >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, i + 1);
  for (int i = 0; i <= k; ++i) edges.emplace_back(i, k + 1);
  return Graph(k + 2, edges);
}

Graph generate_path(int n) {
  if (n < 1) throw std::invalid_argument("path requires n >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph generate_clique(int n) {
  if (n < 1) throw std::invalid_argument("clique requires n >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph generate_star(int n) {
  if (n < 1) throw std::invalid_argument("star requires n >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph(n, edges);
}

Graph generate_trivially_perfect(std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("trivially_perfect requires n >= 1");
  std::mt19937_64 rng(seed);
  // Random rooted tree: parent of i is uniform over 0..i-1 after a random
  // relabeling, which covers all rooted trees.
  std::vector<int> parent(n, -1);
  for (int i = 1; i < n; ++i)
    parent[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    // Connect to every ancestor.
    for (int a = parent[i]; a != -1; a = parent[a]) {
      int u = label[i], v = label[a];
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  return Graph(n, edges);
}

Graph generate_proper_interval(std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("proper_interval requires n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, std::max(1.0, n * 0.35));
  std::vector<double> start(n);
  for (double& s : start) s = dist(rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(start[i] - start[j]) <= 1.0) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph generate_cevenol() {
  return read_edge_list_string(fixtures::cevenol_graph);
}

Graph generate_fig8() { return read_edge_list_string(fixtures::fig8_graph); }

Graph generate_fig9_g() {
  return read_edge_list_string(fixtures::fig9_g_graph);
}

Graph generate_fig9_gprime() {
  return read_edge_list_string(fixtures::fig9_gprime_graph);
}

namespace {

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  size_t pos = 0;
  std::uint64_t v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

void expect_args(const std::vector<std::string>& args, size_t count,
                 const std::string& kind) {
  if (args.size() != count)
    throw std::invalid_argument("generator '" + kind + "' expects " +
                                std::to_string(count) + " argument(s)");
}

}  // namespace

Graph generate(const std::string& kind, const std::vector<std::string>& args) {
  if (kind == "k_sun") {
    expect_args(args, 1, kind);
    return generate_k_sun(parse_int(args[0]));
  }
  if (kind == "k_fan") {
    expect_args(args, 1, kind);
    return generate_k_fan(parse_int(args[0]));
  }
  if (kind == "path") {
    expect_args(args, 1, kind);
    return generate_path(parse_int(args[0]));
  }
  if (kind == "clique") {
    expect_args(args, 1, kind);
    return generate_clique(parse_int(args[0]));
  }
  if (kind == "star") {
    expect_args(args, 1, kind);
    return generate_star(parse_int(args[0]));
  }
  if (kind == "trivially_perfect") {
    expect_args(args, 2, kind);
    return generate_trivially_perfect(parse_u64(args[0]), parse_int(args[1]));
  }
  if (kind == "proper_interval") {
    expect_args(args, 2, kind);
    return generate_proper_interval(parse_u64(args[0]), parse_int(args[1]));
  }
  if (kind == "cevenol") {
    expect_args(args, 0, kind);
    return generate_cevenol();
  }
  if (kind == "fig8") {
    expect_args(args, 0, kind);
    return generate_fig8();
  }
  if (kind == "fig9_g") {
    expect_args(args, 0, kind);
    return generate_fig9_g();
  }
  if (kind == "fig9_gprime") {
    expect_args(args, 0, kind);
    return generate_fig9_gprime();
  }
  throw std::invalid_argument("unknown generator kind: " + kind);
}

}  // namespace pchord
