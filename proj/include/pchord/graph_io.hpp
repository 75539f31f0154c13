#pragma once

#include <iosfwd>
#include <string>

#include "pchord/graph.hpp"

namespace pchord {

/// Edge-list text format: optional `#` comment lines, a `n m` header line,
/// then m lines `u v` with 0 <= u < v < n. Comment lines of the form
/// `#name <id> <label>` attach display names.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_string(const std::string& text);
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list_string(const Graph& g);

std::string to_dot(const Graph& g);

}  // namespace pchord
