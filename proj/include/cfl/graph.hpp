#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfl {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using ColorId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr ColorId kNoColor = std::numeric_limits<ColorId>::max();

enum class ColorMode { kEdge, kVertex };

const char* to_string(ColorMode mode);

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidFaultSet : public GraphError {
 public:
  using GraphError::GraphError;
};

/// Raised when a vertex-mode query names a vertex whose own color failed.
class RemovedVertexError : public GraphError {
 public:
  using GraphError::GraphError;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  VertexId u;
  VertexId v;
  ColorId color;  // kNoColor in vertex mode

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool is_loop() const { return u == v; }
  bool operator==(const Edge&) const = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Undirected multigraph whose edges (edge mode) or vertices (vertex mode)
/// carry colors from the palette 0..palette()-1. Immutable once built.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  static ColoredGraph edge_colored(std::size_t n, std::size_t palette, std::vector<Edge> edges);
  static ColoredGraph vertex_colored(std::size_t n, std::size_t palette,
                                     std::vector<ColorId> vertex_colors,
                                     const std::vector<std::pair<VertexId, VertexId>>& edges);

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  std::size_t palette() const { return palette_; }
  ColorMode mode() const { return mode_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  ColorId vertex_color(VertexId v) const { return vertex_colors_[v]; }
  const std::vector<ColorId>& vertex_colors() const { return vertex_colors_; }

  /// Incident non-loop edges of v ordered by (neighbor id, edge id).
  std::span<const Incidence> incident(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  /// True when failing color c deletes edge e (directly, or through an endpoint
  /// in vertex mode).
  bool edge_fails_with(EdgeId e, ColorId c) const;

  bool operator==(const ColoredGraph& o) const {
    return n_ == o.n_ && palette_ == o.palette_ && mode_ == o.mode_ && edges_ == o.edges_ &&
           vertex_colors_ == o.vertex_colors_;
  }

 private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::size_t palette_ = 0;
  ColorMode mode_ = ColorMode::kEdge;
  std::vector<Edge> edges_;
  std::vector<ColorId> vertex_colors_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Incidence> adjacency_;
};

/// A set of at most f faulty colors; duplicates collapse, members sorted.
class FaultSet {
 public:
  FaultSet() = default;
  FaultSet(std::initializer_list<ColorId> colors) : FaultSet(std::vector<ColorId>(colors)) {}
  explicit FaultSet(std::vector<ColorId> colors);

  std::span<const ColorId> colors() const { return colors_; }
  std::size_t size() const { return colors_.size(); }
  bool empty() const { return colors_.empty(); }
  bool contains(ColorId c) const;

  /// Throws InvalidFaultSet if some member is outside the palette of g.
  void validate(const ColoredGraph& g) const;

  bool operator==(const FaultSet&) const = default;

 private:
  std::vector<ColorId> colors_;
};

/// A subgraph of a ColoredGraph sharing its vertex ids: some vertices and
/// edges are marked dead. Edges touching dead vertices are always dead.
class GraphView {
 public:
  explicit GraphView(const ColoredGraph& g);
  GraphView(const ColoredGraph& g, std::vector<char> edge_alive);

  const ColoredGraph& graph() const { return *g_; }
  std::size_t n() const { return g_->n(); }
  bool vertex_alive(VertexId v) const { return vertex_alive_[v] != 0; }
  bool edge_alive(EdgeId e) const { return edge_alive_[e] != 0; }

  void remove_edge(EdgeId e) { edge_alive_[e] = 0; }
  void remove_vertex(VertexId v);

  template <class Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const {
    for (const Incidence& inc : g_->incident(v))
      if (edge_alive_[inc.edge]) fn(inc);
  }

  std::vector<EdgeId> alive_edges() const;

 private:
  const ColoredGraph* g_;
  std::vector<char> vertex_alive_;
  std::vector<char> edge_alive_;
};

GraphView remove_colors(const ColoredGraph& g, const FaultSet& faults);

/// cid of every vertex of the view (minimum id in its component), kNoVertex
/// for dead vertices.
std::vector<VertexId> component_ids(const GraphView& view);

VertexId cid(const ColoredGraph& g, VertexId v, const FaultSet& faults);

/// Maximal spanning forest, scanning alive edges in increasing id.
std::vector<EdgeId> spanning_forest(const GraphView& view);

struct BfsTree {
  static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

  VertexId root = kNoVertex;
  std::vector<VertexId> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<std::uint32_t> depth;
  std::vector<VertexId> order;  // vertices in visiting order
};

/// BFS of root's component; neighbors explored by (neighbor id, edge id).
BfsTree bfs_tree(const GraphView& view, VertexId root);

/// Subdivides every edge e={u,v} into u - x_e - v (x_e = n + e). Edge mode
/// becomes vertex mode (x_e takes e's color, originals get the fresh color
/// C); vertex mode becomes edge mode (each half takes its original endpoint's
/// color).
ColoredGraph reduce_between_modes(const ColoredGraph& g);

ColoredGraph parse_graph(std::string_view text);
std::string serialize_graph(const ColoredGraph& g);
ColoredGraph load_graph(const std::string& path);
void save_graph(const ColoredGraph& g, const std::string& path);

}  // namespace cfl
