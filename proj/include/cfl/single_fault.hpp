#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cfl/bits.hpp"
#include "cfl/graph.hpp"

namespace cfl {

/// Output of the distance-i selection loop. Every vertex is within distance
/// k-1 of a0 ∪ a.
struct RulingSet {
  std::vector<VertexId> a0;  // minimum id of each component
  std::vector<VertexId> a;   // a_1, ..., a_{k-1}; a_i at distance exactly i
  std::uint32_t k = 1;

  std::vector<VertexId> all() const;
};

RulingSet build_ruling_set(const ColoredGraph& g);

/// Shortest-path forest towards a0 ∪ a. parent pointers define P(v); because a
/// single BFS produced them, P(u) is a suffix of P(v) whenever u lies on P(v).
struct AnchorForest {
  std::vector<VertexId> anchor;
  std::vector<VertexId> parent;  // kNoVertex at anchors
  std::vector<EdgeId> parent_edge;
  std::vector<std::uint32_t> depth;
};

AnchorForest build_anchor_forest(const ColoredGraph& g, const RulingSet& rs);

/// Field widths of the canonical encoding for one graph.
struct LabelWidths {
  unsigned id;
  unsigned color;

  static LabelWidths of(const ColoredGraph& g);
  static LabelWidths of(std::size_t n, std::size_t palette);
};

struct SingleFaultVertexLabel {
  VertexId anchor = kNoVertex;
  ColorId own_color = kNoColor;  // vertex mode only
  std::vector<std::pair<ColorId, VertexId>> entries;  // sorted by color

  bool operator==(const SingleFaultVertexLabel&) const = default;
};

struct SingleFaultColorLabel {
  ColorId color = kNoColor;
  std::vector<std::pair<VertexId, VertexId>> entries;  // anchor id -> cid, sorted

  bool operator==(const SingleFaultColorLabel&) const = default;
};

struct SingleFaultLabels {
  ColorMode mode = ColorMode::kEdge;
  std::size_t n = 0;
  std::size_t palette = 0;
  RulingSet ruling;
  std::vector<SingleFaultVertexLabel> vertex;
  std::vector<SingleFaultColorLabel> color;

  LabelWidths widths() const { return LabelWidths::of(n, palette); }
  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
};

SingleFaultLabels label_single_fault(const ColoredGraph& g);

/// cid(v, G-c) from L(v) and L(c). Throws RemovedVertexError when v's own
/// color is c in vertex mode.
VertexId query_single_fault(const SingleFaultVertexLabel& lv, const SingleFaultColorLabel& lc);

bool single_fault_connected(const SingleFaultVertexLabel& lu, const SingleFaultVertexLabel& lv,
                            const SingleFaultColorLabel& lc);

void encode(BitWriter& out, const SingleFaultVertexLabel& label, LabelWidths w, ColorMode mode);
void encode(BitWriter& out, const SingleFaultColorLabel& label, LabelWidths w);
SingleFaultVertexLabel decode_vertex_label(BitReader& in, LabelWidths w, ColorMode mode);
SingleFaultColorLabel decode_color_label(BitReader& in, LabelWidths w);

std::size_t encoded_bits(const SingleFaultVertexLabel& label, LabelWidths w, ColorMode mode);
std::size_t encoded_bits(const SingleFaultColorLabel& label, LabelWidths w);

/// Halting iteration k of the ruling-set loop; floor(k/4) <= bp(G).
std::uint32_t ball_packing_greedy(const ColoredGraph& g);

struct BallPacking {
  std::uint32_t r = 0;
  std::vector<VertexId> centers;  // r centers of disjoint proper r-balls
};

inline constexpr std::size_t kBallPackingMaxVertices = 32;

/// Exact ball packing number by exhaustive search; throws GraphError for
/// n > kBallPackingMaxVertices.
BallPacking ball_packing_exact(const ColoredGraph& g);

/// All-pairs hop distances ignoring colors; BfsTree::kUnreached if apart.
std::vector<std::vector<std::uint32_t>> hop_distances(const ColoredGraph& g);

}  // namespace cfl
