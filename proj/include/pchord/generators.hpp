#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pchord/graph.hpp"

namespace pchord {

/// k-sun: clique x_0..x_{k-1} plus independent y_0..y_{k-1} where y_i is
/// adjacent to x_i and x_{(i+1) mod k}. Vertex ids: x_i = i, y_i = k + i.
Graph generate_k_sun(int k);

/// k-fan: a path v_1..v_{k+1} (ids 0..k) plus a universal vertex (id k+1).
Graph generate_k_fan(int k);

Graph generate_path(int n);
Graph generate_clique(int n);

/// Star K_{1,n-1}: center 0, leaves 1..n-1.
Graph generate_star(int n);

/// Comparability graph of a uniformly random rooted tree on n nodes.
Graph generate_trivially_perfect(std::uint64_t seed, int n);

/// Intersection graph of n random unit intervals.
Graph generate_proper_interval(std::uint64_t seed, int n);

Graph generate_cevenol();
Graph generate_fig8();
Graph generate_fig9_g();
Graph generate_fig9_gprime();

/// Dispatch by kind name; args as the CLI passes them.
Graph generate(const std::string& kind, const std::vector<std::string>& args);

}  // namespace pchord
