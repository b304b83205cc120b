#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

enum class Coloring {
  kUniform,        // each element draws a color uniformly from the palette
  kPerEdgeUnique,  // element i gets color i; the palette grows to the element count
  kBlocks,         // contiguous runs of elements share a color
};

Coloring parse_coloring(const std::string& name);
const char* to_string(Coloring coloring);

struct ColorSpec {
  std::size_t palette = 4;
  Coloring coloring = Coloring::kUniform;
  ColorMode mode = ColorMode::kEdge;
  std::uint64_t seed = 1;
};

/// Colors an uncolored topology. In vertex mode the vertices are colored and
/// edges carry none.
ColoredGraph color_topology(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                            const ColorSpec& spec);

/// Simple graph with m distinct edges chosen uniformly. Throws
/// std::invalid_argument when m exceeds n(n-1)/2.
ColoredGraph gen_random(std::size_t n, std::size_t m, const ColorSpec& spec);

/// Random spanning tree plus m-(n-1) further distinct edges.
ColoredGraph gen_random_connected(std::size_t n, std::size_t m, const ColorSpec& spec);

/// Random labelled tree (each vertex i>0 attaches to a uniform earlier vertex).
ColoredGraph gen_random_tree(std::size_t n, const ColorSpec& spec);

ColoredGraph gen_path(std::size_t n, const ColorSpec& spec = {});

/// Hub 0 joined to the cycle 1..n-1.
ColoredGraph gen_wheel(std::size_t n, const ColorSpec& spec = {});

/// a x b grid; vertex (i,j) is i*b+j.
ColoredGraph gen_grid(std::size_t a, std::size_t b, const ColorSpec& spec = {});

}  // namespace cfl
