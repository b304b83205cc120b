#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

using LabelBits = std::vector<bool>;

struct SingleSourceLabels {
  std::vector<LabelBits> vertex;
  std::vector<LabelBits> color;
};

/// A labeling scheme answering "is u still connected to the source after the
/// colors F fail?" from L(u) and the color labels of F.
class SingleSourceScheme {
 public:
  virtual ~SingleSourceScheme() = default;
  virtual std::string name() const = 0;
  virtual double error_rate() const = 0;
  virtual SingleSourceLabels build(const ColoredGraph& g, VertexId source, std::size_t f) const = 0;
  virtual bool query(const LabelBits& lu, const std::vector<const LabelBits*>& faults) const = 0;
};

/// Table scheme: L(u) holds one answer bit per fault set of size <= f, L(c)
/// holds c. Exact, and only practical for small palettes.
class ExactSingleSource : public SingleSourceScheme {
 public:
  std::string name() const override { return "exact"; }
  double error_rate() const override { return 0.0; }
  SingleSourceLabels build(const ColoredGraph& g, VertexId source, std::size_t f) const override;
  bool query(const LabelBits& lu, const std::vector<const LabelBits*>& faults) const override;
};

/// Index of a sorted fault set among all subsets of size <= f of a palette of
/// size p: sizes in increasing order, colex inside one size.
std::size_t fault_set_rank(const std::vector<ColorId>& sorted, std::size_t palette);

struct GridShape {
  std::size_t rows = 0;  // ceil(alpha ln n / ln(10/9))
  std::size_t cols = 0;  // ceil(log2 n) + 2
};

GridShape grid_shape(std::size_t n, double alpha);

/// G plus a source n joined to each vertex with probability 2^-(j+1) (j is
/// 0-based) by edges of the never-failing color C. Deterministic in (seed, i, j).
ColoredGraph augment_cell(const ColoredGraph& g, std::size_t i, std::size_t j, std::uint64_t seed);

struct AllPairsLabels {
  std::size_t n = 0;
  std::size_t palette = 0;  // original palette; color `palette` never fails
  std::size_t f = 0;
  double alpha = 1;
  std::uint64_t seed = 0;
  GridShape shape;
  std::vector<std::vector<LabelBits>> vertex;  // [v][cell]
  std::vector<std::vector<LabelBits>> color;   // [c][cell]

  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
};

/// Edge-colored graphs. Throws std::invalid_argument when alpha < 1.
AllPairsLabels build_all_pairs(const ColoredGraph& g, std::size_t f, const SingleSourceScheme& inner,
                               double alpha, std::uint64_t seed);

bool query_all_pairs(const SingleSourceScheme& inner, const std::vector<LabelBits>& lu,
                     const std::vector<LabelBits>& lw,
                     const std::vector<const std::vector<LabelBits>*>& faults);

/// Connectivity to the source in a single cell, for the planted-row estimate.
bool cell_distinguishes(const ColoredGraph& g, std::size_t i, std::size_t j, std::uint64_t seed,
                        VertexId u, VertexId w, const FaultSet& faults);

}  // namespace cfl
