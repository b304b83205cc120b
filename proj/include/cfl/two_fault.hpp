#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

struct HittingSet {
  std::vector<VertexId> members;  // sorted
};

/// Greedy hitting set: repeatedly take the vertex lying in most unhit sets,
/// smallest id on ties. Throws std::invalid_argument on an empty set.
HittingSet greedy_hitting_set(const std::vector<std::vector<VertexId>>& sets, std::size_t n);

/// BFS from `origin` in G-c that stops once `cap` vertices are reached.
struct TruncatedBfsTree {
  VertexId origin = kNoVertex;
  ColorId excluded = kNoColor;
  std::vector<VertexId> vertices;  // BFS order
  std::vector<EdgeId> edges;       // tree edges
};

TruncatedBfsTree truncated_bfs(const ColoredGraph& g, VertexId origin, ColorId excluded,
                               std::size_t cap);

using ColorCidMap = std::vector<std::pair<ColorId, VertexId>>;  // sorted by color

struct TwoFaultEntry {
  ColorId color = kNoColor;     // c on T[s,v]
  VertexId cid_without = 0;     // cid(v, G-c)
  ColorCidMap tree;             // d in T_{v,c} -> cid(v, G-{c,d})
  bool full = false;
  VertexId pivot = kNoVertex;   // u_{v,c}
  ColorCidMap pivot_map;        // d in T[s,u] -> cid(u, G-{c,d})

  bool operator==(const TwoFaultEntry&) const = default;
};

struct TwoFaultVertexLabel {
  VertexId root = kNoVertex;
  ColorId own_color = kNoColor;  // vertex mode only
  std::vector<TwoFaultEntry> entries;  // sorted by color

  bool operator==(const TwoFaultVertexLabel&) const = default;
};

struct TwoFaultColorLabel {
  ColorId color = kNoColor;
  std::vector<std::pair<VertexId, ColorCidMap>> by_vertex;  // u in U -> d -> cid(u, G-{c,d})

  bool operator==(const TwoFaultColorLabel&) const = default;
};

struct TwoFaultLabels {
  ColorMode mode = ColorMode::kEdge;
  std::size_t n = 0;
  std::size_t work_n = 0;  // vertices of the (possibly subdivided) labeled graph
  std::size_t palette = 0;
  std::size_t cap = 0;     // ceil(sqrt(work_n))
  std::uint32_t depth = 0; // max BFS depth over components
  std::size_t full_trees = 0;
  HittingSet hitting;
  std::vector<TwoFaultVertexLabel> vertex;  // first n vertices
  std::vector<TwoFaultColorLabel> color;

  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
  std::vector<std::size_t> vertex_entry_counts() const;
  std::vector<std::size_t> color_entry_counts() const;
};

TwoFaultLabels label_two_fault(const ColoredGraph& g);

/// cid(v, G-{c,d}); c may equal d for a single fault.
VertexId query_two_fault_cid(const TwoFaultVertexLabel& lv, const TwoFaultColorLabel& lc,
                             const TwoFaultColorLabel& ld);

bool query_two_fault(const TwoFaultVertexLabel& lu, const TwoFaultVertexLabel& lv,
                     const TwoFaultColorLabel& lc, const TwoFaultColorLabel& ld);

}  // namespace cfl
