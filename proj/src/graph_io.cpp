#include "pchord/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pchord {

namespace {

struct NameDirective {
  int vertex;
  std::string label;
};

bool parse_name_directive(const std::string& line, NameDirective& out) {
  std::istringstream is(line);
  std::string tag;
  is >> tag;
  if (tag != "#name") return false;
  if (!(is >> out.vertex >> out.label)) return false;
  return true;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::vector<NameDirective> name_lines;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  int edges_read = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      NameDirective nd;
      if (parse_name_directive(line, nd)) name_lines.push_back(nd);
      continue;
    }
    std::istringstream is(line);
    if (n < 0) {
      if (!(is >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("bad edge-list header line");
      continue;
    }
    int u, v;
    if (!(is >> u >> v)) throw std::invalid_argument("bad edge line: " + line);
    if (!(0 <= u && u < v && v < n))
      throw std::invalid_argument("edge must satisfy 0 <= u < v < n: " + line);
    edges.emplace_back(u, v);
    ++edges_read;
  }
  if (n < 0) throw std::invalid_argument("missing edge-list header");
  if (edges_read != m)
    throw std::invalid_argument("edge count does not match header");
  std::vector<std::string> names;
  if (!name_lines.empty()) {
    names.assign(n, "");
    for (const auto& nd : name_lines) {
      if (nd.vertex < 0 || nd.vertex >= n)
        throw std::invalid_argument("#name vertex out of range");
      names[nd.vertex] = nd.label;
    }
    for (int v = 0; v < n; ++v)
      if (names[v].empty()) names[v] = std::to_string(v);
  }
  return Graph(n, edges, std::move(names));
}

Graph read_edge_list_string(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  if (g.has_names())
    for (int v = 0; v < g.vertex_count(); ++v)
      out << "#name " << v << ' ' << g.name(v) << '\n';
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list_string(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v;
    if (g.has_names()) os << " [label=\"" << g.name(v) << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pchord
