#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfl/graph.hpp"
#include "cfl/single_fault.hpp"

namespace cfl {

using Port = std::uint32_t;
inline constexpr Port kNoPort = std::numeric_limits<Port>::max();

/// Ports of a vertex number its incident edges 0..deg-1 in edge-id order.
/// A self-loop takes a single port.
class PortedNetwork {
 public:
  PortedNetwork() = default;
  explicit PortedNetwork(const ColoredGraph& g);

  std::size_t degree(VertexId v) const { return ports_[v].size(); }
  EdgeId edge_at(VertexId v, Port p) const { return ports_[v].at(p).first; }
  Port port_of(VertexId v, EdgeId e) const;
  VertexId follow(VertexId v, Port p) const;
  unsigned port_bits() const;

 private:
  std::vector<std::vector<std::pair<EdgeId, VertexId>>> ports_;  // (edge, neighbor)
};

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// s and t are not connected once the color is removed.
class Unreachable : public RoutingError {
 public:
  using RoutingError::RoutingError;
};

/// The scheme failed an internal guarantee (missing table, loop, bad hop).
class RoutingBug : public RoutingError {
 public:
  using RoutingError::RoutingError;
};

/// Interval routing on a rooted forest: a vertex knows its DFS interval, its
/// parent port and the interval start and port of each child.
struct TreeTable {
  Port parent_port = kNoPort;
  std::uint32_t pre = 0;
  std::uint32_t end = 0;
  std::vector<std::pair<std::uint32_t, Port>> children;  // (child pre, port), sorted

  bool operator==(const TreeTable&) const = default;
};

struct TreeStep {
  bool arrived = false;
  Port port = kNoPort;
};

/// Next hop toward the vertex whose label (DFS index) is `target`.
TreeStep tree_next(const TreeTable& table, std::uint32_t target);

class TreeRouting {
 public:
  TreeRouting() = default;
  TreeRouting(const PortedNetwork& net, const std::vector<VertexId>& parent,
              const std::vector<EdgeId>& parent_edge);

  const TreeTable& table(VertexId v) const { return tables_[v]; }
  std::uint32_t label(VertexId v) const { return tables_[v].pre; }
  VertexId vertex_of(std::uint32_t label) const { return by_label_[label]; }

 private:
  std::vector<TreeTable> tables_;
  std::vector<VertexId> by_label_;
};

struct FirstRecEdgeBlock {
  bool defined = false;
  Port port = 0;                 // from the first endpoint x
  std::uint32_t tail_label = 0;  // L_T(x)
  bool reaches_target = false;   // second endpoint shares the target's fragment

  bool operator==(const FirstRecEdgeBlock&) const = default;
};

/// Spanning forest of G-c: the fragments of T-c joined by recovery edges.
struct RecoveryTree {
  ColorId color = kNoColor;
  std::vector<VertexId> fragment;  // fragment root of each vertex
  std::vector<char> recovery;      // per edge id
  std::vector<EdgeId> recovery_edges;
  std::vector<char> a_fragment;    // indexed by fragment root
  std::vector<VertexId> parent;    // T_c rooted at component minima
  std::vector<EdgeId> parent_edge;
  TreeRouting routing;
};

struct RoutingTable {
  TreeTable tree;                // R_T(v), parent port included
  ColorId parent_color = kNoColor;  // c(v)
  std::vector<std::pair<VertexId, FirstRecEdgeBlock>> blocks;  // a -> FirstRecEdge(v,a,c(v))
  std::vector<std::pair<ColorId, TreeTable>> recovery;          // c in P(v) -> R_{T_c}(v)
};

struct RoutingVertexColorEntry {
  ColorId color = kNoColor;
  VertexId nearest_a = kNoVertex;  // a(v,c), kNoVertex if no A-fragment is reachable
  FirstRecEdgeBlock block;         // FirstRecEdge(a(v,c), v, c)
  std::uint32_t recovery_label = 0;  // L_{T_c}(v)
};

struct RoutingVertexLabel {
  std::uint32_t tree_label = 0;  // L_T(v)
  VertexId anchor = kNoVertex;   // a(v)
  std::vector<RoutingVertexColorEntry> per_color;  // sorted by color
};

struct RoutingColorLabel {
  ColorId color = kNoColor;
  std::vector<std::pair<VertexId, FirstRecEdgeBlock>> blocks;  // a -> FirstRecEdge(r,a,c)
};

enum class UpState : std::uint8_t { kTrue, kFalse, kNull };

struct MessageHeader {
  struct Permanent {
    ColorId color = kNoColor;
    VertexId a_star = kNoVertex;
    FirstRecEdgeBlock from_root;
    std::uint32_t target_tree_label = 0;
    bool has_target_part = false;
    FirstRecEdgeBlock toward_target;
    std::uint32_t target_recovery_label = 0;
    bool direct = false;  // t's component of G-c has no anchor: route on T_c only
  };
  Permanent permanent;
  UpState up = UpState::kTrue;
  FirstRecEdgeBlock next;
};

struct Hop {
  VertexId from;
  Port port;
  VertexId to;
  EdgeId edge;
  ColorId color;
};

struct RouteTrace {
  std::vector<Hop> hops;
  std::size_t invariant_checks = 0;
};

struct RoutingSizes {
  std::vector<std::size_t> table_bits;     // excluding child intervals
  std::vector<std::size_t> child_bits;     // child-interval structures, per vertex
  std::vector<std::size_t> vertex_label_bits;
  std::vector<std::size_t> color_label_bits;
  std::size_t header_permanent_bits = 0;   // worst case
  std::size_t header_mutable_bits = 0;
};

class RoutingScheme {
 public:
  /// Edge-colored graphs only.
  explicit RoutingScheme(const ColoredGraph& g);

  const ColoredGraph& graph() const { return g_; }
  const PortedNetwork& network() const { return net_; }
  const std::vector<VertexId>& anchors() const { return anchors_; }
  std::uint32_t k() const { return k_; }
  const std::vector<VertexId>& tree_parent() const { return parent_; }
  const std::vector<EdgeId>& tree_parent_edge() const { return parent_edge_; }
  const TreeRouting& tree_routing() const { return tree_; }
  const RecoveryTree* recovery_tree(ColorId c) const;

  const RoutingTable& table(VertexId v) const { return tables_[v]; }
  const RoutingVertexLabel& vertex_label(VertexId v) const { return vertex_labels_[v]; }
  const RoutingColorLabel& color_label(ColorId c) const { return color_labels_[c]; }

  /// Directed first recovery edge on the u-to-v path of T_c (edge, tail);
  /// kNoEdge when the path has none. Global knowledge, used for checking.
  std::pair<EdgeId, VertexId> first_recovery_edge(VertexId u, VertexId v, ColorId c) const;

  /// Header that s writes from L(t) and L(c).
  MessageHeader initial_header(const RoutingVertexLabel& lt, const RoutingColorLabel& lc) const;

  /// Hop-by-hop simulation; every decision uses only the current table and
  /// the header. Invariant (I) is checked on arrival at every vertex.
  RouteTrace route(VertexId s, VertexId t, ColorId c) const;

  RoutingSizes sizes() const;

 private:
  FirstRecEdgeBlock block_for(const std::vector<std::pair<EdgeId, VertexId>>& first,
                              VertexId from, VertexId target, const RecoveryTree& rt) const;
  std::vector<std::pair<EdgeId, VertexId>> first_edges_toward(VertexId z,
                                                              const RecoveryTree& rt) const;
  void check_invariant(VertexId v, const MessageHeader& h, RouteTrace& trace) const;

  ColoredGraph g_;
  PortedNetwork net_;
  SingleFaultLabels single_;
  std::vector<VertexId> anchors_;
  std::uint32_t k_ = 1;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::vector<ColorId>> path_colors_;  // colors on P(v)
  TreeRouting tree_;
  std::vector<std::optional<RecoveryTree>> recovery_;
  std::vector<RoutingTable> tables_;
  std::vector<RoutingVertexLabel> vertex_labels_;
  std::vector<RoutingColorLabel> color_labels_;
};

}  // namespace cfl
