#pragma once

#include <random>
#include <vector>

#include "cfl/generators.hpp"
#include "cfl/graph.hpp"

namespace fixtures {

using namespace cfl;

inline constexpr ColorId kRed = 0, kBlue = 1;
inline constexpr ColorId kA = 0, kB = 1, kC = 2;

// (0,1,red), (0,2,blue), (1,2,red)
inline ColoredGraph triangle() {
  return ColoredGraph::edge_colored(3, 2, {{0, 1, kRed}, {0, 2, kBlue}, {1, 2, kRed}});
}

// 0 -a- 1 -b- 2 -a- 3
inline ColoredGraph path_aba() {
  return ColoredGraph::edge_colored(4, 2, {{0, 1, kA}, {1, 2, kB}, {2, 3, kA}});
}

inline ColoredGraph random_graph(std::size_t n, std::size_t m, std::size_t palette,
                                 std::uint64_t seed, ColorMode mode = ColorMode::kEdge) {
  ColorSpec spec;
  spec.palette = palette;
  spec.seed = seed;
  spec.mode = mode;
  return gen_random(n, m, spec);
}

inline ColoredGraph random_connected(std::size_t n, std::size_t m, std::size_t palette,
                                     std::uint64_t seed, ColorMode mode = ColorMode::kEdge) {
  ColorSpec spec;
  spec.palette = palette;
  spec.seed = seed;
  spec.mode = mode;
  return gen_random_connected(n, m, spec);
}

// Multigraph with loops and parallel edges.
inline ColoredGraph random_multigraph(std::size_t n, std::size_t m, std::size_t palette,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> v(0, static_cast<VertexId>(n - 1));
  std::uniform_int_distribution<ColorId> c(0, static_cast<ColorId>(palette - 1));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.push_back({v(rng), v(rng), c(rng)});
  return ColoredGraph::edge_colored(n, palette, std::move(edges));
}

// Union-find partition check independent of the library.
inline std::vector<VertexId> uf_cids(const ColoredGraph& g, const std::vector<char>& edge_alive,
                                     const std::vector<char>& vertex_alive) {
  std::vector<VertexId> p(g.n());
  for (VertexId v = 0; v < g.n(); ++v) p[v] = v;
  auto find = [&](VertexId x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (!edge_alive[e] || !vertex_alive[g.edge(e).u] || !vertex_alive[g.edge(e).v]) continue;
    VertexId a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  std::vector<VertexId> out(g.n());
  for (VertexId v = 0; v < g.n(); ++v) out[v] = vertex_alive[v] ? find(v) : kNoVertex;
  return out;
}

}  // namespace fixtures
