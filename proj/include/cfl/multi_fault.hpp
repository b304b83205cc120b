#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cfl/edge_fault_sketch.hpp"
#include "cfl/graph.hpp"
#include "cfl/single_fault.hpp"

namespace cfl {

/// H = union over colors c of a spanning forest T_c of (V, E_c). Edge mode
/// only; vertex-mode callers subdivide first.
struct ColorForestCertificate {
  std::vector<std::vector<EdgeId>> forest;  // T_c per color, increasing edge id
  std::vector<EdgeId> edges;                // H, increasing edge id
};

ColorForestCertificate build_certificate(const ColoredGraph& g);
ColorForestCertificate build_certificate(const GraphView& view);

/// Scheme for any number of faults: vertices keep sketch labels over H, a
/// color keeps the sketch labels of its forest edges.
struct LargeFLabels {
  ColorMode mode = ColorMode::kEdge;
  std::size_t n = 0;
  std::size_t palette = 0;
  std::vector<ColorId> own_color;  // vertex mode only
  ColorForestCertificate certificate;
  EdgeFaultSketch sketch;
  std::vector<std::vector<EdgeSketchLabel>> color;

  bool connected(VertexId u, VertexId v, const FaultSet& faults) const;
  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
};

LargeFLabels label_large_f(const ColoredGraph& g, SketchParams params);

/// One node of the prevalence recursion. Nodes with budget 1 hold single-fault
/// labels; the others hold sketches, the high-prevalence split and children.
struct RecursiveNode {
  std::size_t budget = 1;
  std::vector<ColorId> removed;  // colors deleted on the way from the root
  std::uint64_t seed = 0;

  std::optional<SingleFaultLabels> single;

  std::size_t m_prime = 0;
  double delta = 0;
  std::size_t estimate_bits = 0;  // b(n, budget-1) used for delta
  std::vector<ColorId> high;       // sorted
  std::vector<std::int32_t> branch;  // color -> index into high, or -1
  EdgeFaultSketch sketch;
  std::vector<std::vector<EdgeSketchLabel>> low_edges;  // per color, empty if high
  std::vector<std::unique_ptr<RecursiveNode>> children;  // aligned with high
};

struct RecursiveLabels {
  ColorMode mode = ColorMode::kEdge;
  std::size_t n = 0;
  std::size_t palette = 0;
  std::size_t f = 1;
  std::vector<ColorId> own_color;  // vertex mode only
  std::unique_ptr<RecursiveNode> root;

  bool connected(VertexId u, VertexId v, const FaultSet& faults) const;
  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
  std::size_t node_count() const;
  /// One line per node: path, budget, m', delta and the high colors.
  std::vector<std::string> manifest() const;
};

RecursiveLabels label_recursive(const ColoredGraph& g, std::size_t f, SketchParams params);

/// Error raised when a query needs a branch the labels do not contain.
class LabelMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfl
