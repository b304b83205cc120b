#include "cfl/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cfl/bits.hpp"
#include "cfl/disjoint_sets.hpp"
#include "cfl/edge_fault_sketch.hpp"
#include "cfl/encoders.hpp"

namespace cfl {

namespace {

constexpr unsigned kHeaderBits = 16;  // palette and f fields of an exact vertex label

void put(LabelBits& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back((value >> i) & 1);
}

std::uint64_t get(const LabelBits& in, std::size_t& pos, unsigned width) {
  if (pos + width > in.size()) throw DecodeError("single-source label too short");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | in[pos++];
  return v;
}

// Calls fn(sorted subset) for every subset of 0..p-1 with size <= f, in rank order.
template <class Fn>
void for_each_fault_set(std::size_t p, std::size_t f, Fn&& fn) {
  for (std::size_t s = 0; s <= std::min(f, p); ++s)
    for (std::size_t l = 0; l < binomial(p, s); ++l) fn(colex_subset(l, s));
}

std::vector<VertexId> cids_without(const ColoredGraph& g, const std::vector<ColorId>& faults) {
  DisjointSets sets(g.n());
  for (const Edge& e : g.edges())
    if (std::find(faults.begin(), faults.end(), e.color) == faults.end()) sets.unite(e.u, e.v);
  std::vector<VertexId> out(g.n());
  for (VertexId v = 0; v < g.n(); ++v) out[v] = sets.find(v);
  return out;
}

}  // namespace

std::size_t fault_set_rank(const std::vector<ColorId>& sorted, std::size_t palette) {
  std::size_t rank = 0;
  for (std::size_t s = 0; s < sorted.size(); ++s) rank += binomial(palette, s);
  for (std::size_t i = 0; i < sorted.size(); ++i) rank += binomial(sorted[i], i + 1);
  return rank;
}

SingleSourceLabels ExactSingleSource::build(const ColoredGraph& g, VertexId source,
                                            std::size_t f) const {
  if (g.mode() != ColorMode::kEdge) throw GraphError("exact single-source labels need edge colors");
  const std::size_t p = g.palette();
  if (p >= (1u << kHeaderBits) || f >= (1u << kHeaderBits))
    throw std::invalid_argument("palette too large for the exact table");
  SingleSourceLabels out;
  out.vertex.resize(g.n());
  for (auto& l : out.vertex) {
    put(l, p, kHeaderBits);
    put(l, f, kHeaderBits);
  }
  for_each_fault_set(p, f, [&](const std::vector<ColorId>& faults) {
    const auto cids = cids_without(g, faults);
    for (VertexId v = 0; v < g.n(); ++v) out.vertex[v].push_back(cids[v] == cids[source]);
  });
  out.color.resize(p);
  for (ColorId c = 0; c < p; ++c) put(out.color[c], c, field_width(p));
  return out;
}

bool ExactSingleSource::query(const LabelBits& lu, const std::vector<const LabelBits*>& faults) const {
  std::size_t pos = 0;
  const std::size_t p = get(lu, pos, kHeaderBits);
  const std::size_t f = get(lu, pos, kHeaderBits);
  std::vector<ColorId> colors;
  for (const LabelBits* lc : faults) {
    std::size_t at = 0;
    colors.push_back(static_cast<ColorId>(get(*lc, at, field_width(p))));
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  if (colors.size() > f) throw InvalidFaultSet("more faults than the labels support");
  const std::size_t index = kHeaderBits * 2 + fault_set_rank(colors, p);
  if (index >= lu.size()) throw DecodeError("single-source label too short");
  return lu[index];
}

GridShape grid_shape(std::size_t n, double alpha) {
  GridShape s;
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  s.rows = static_cast<std::size_t>(std::ceil(alpha * std::log(nn) / std::log(10.0 / 9.0)));
  s.cols = ceil_log2(std::max<std::size_t>(n, 2)) + 2;
  return s;
}

ColoredGraph augment_cell(const ColoredGraph& g, std::size_t i, std::size_t j, std::uint64_t seed) {
  std::mt19937_64 rng(hash_words(seed, {i, j}));
  std::bernoulli_distribution coin(std::ldexp(1.0, -static_cast<int>(j + 1)));
  std::vector<Edge> edges = g.edges();
  const VertexId s = static_cast<VertexId>(g.n());
  const ColorId never = static_cast<ColorId>(g.palette());
  for (VertexId v = 0; v < g.n(); ++v)
    if (coin(rng)) edges.push_back({s, v, never});
  return ColoredGraph::edge_colored(g.n() + 1, g.palette() + 1, std::move(edges));
}

AllPairsLabels build_all_pairs(const ColoredGraph& g, std::size_t f, const SingleSourceScheme& inner,
                               double alpha, std::uint64_t seed) {
  if (!(alpha >= 1)) throw std::invalid_argument("alpha must be at least 1");
  if (g.mode() != ColorMode::kEdge) throw GraphError("the reduction runs on edge-colored graphs");
  AllPairsLabels out;
  out.n = g.n();
  out.palette = g.palette();
  out.f = f;
  out.alpha = alpha;
  out.seed = seed;
  out.shape = grid_shape(g.n(), alpha);
  const std::size_t cells = out.shape.rows * out.shape.cols;
  out.vertex.assign(g.n(), std::vector<LabelBits>(cells));
  out.color.assign(g.palette(), std::vector<LabelBits>(cells));
  for (std::size_t i = 0; i < out.shape.rows; ++i)
    for (std::size_t j = 0; j < out.shape.cols; ++j) {
      const std::size_t cell = i * out.shape.cols + j;
      ColoredGraph gij = augment_cell(g, i, j, seed);
      SingleSourceLabels labels = inner.build(gij, static_cast<VertexId>(g.n()), f);
      for (VertexId v = 0; v < g.n(); ++v) out.vertex[v][cell] = std::move(labels.vertex[v]);
      for (ColorId c = 0; c < g.palette(); ++c) out.color[c][cell] = std::move(labels.color[c]);
    }
  return out;
}

bool query_all_pairs(const SingleSourceScheme& inner, const std::vector<LabelBits>& lu,
                     const std::vector<LabelBits>& lw,
                     const std::vector<const std::vector<LabelBits>*>& faults) {
  if (lu.size() != lw.size()) throw std::invalid_argument("labels come from different label sets");
  std::vector<const LabelBits*> cell_faults(faults.size());
  for (std::size_t cell = 0; cell < lu.size(); ++cell) {
    for (std::size_t i = 0; i < faults.size(); ++i) cell_faults[i] = &(*faults[i])[cell];
    if (inner.query(lu[cell], cell_faults) != inner.query(lw[cell], cell_faults)) return false;
  }
  return true;
}

bool cell_distinguishes(const ColoredGraph& g, std::size_t i, std::size_t j, std::uint64_t seed,
                        VertexId u, VertexId w, const FaultSet& faults) {
  const ColoredGraph gij = augment_cell(g, i, j, seed);
  const auto cids = cids_without(gij, {faults.colors().begin(), faults.colors().end()});
  const VertexId s = static_cast<VertexId>(g.n());
  return (cids[u] == cids[s]) != (cids[w] == cids[s]);
}

std::vector<std::size_t> AllPairsLabels::vertex_bits() const {
  std::vector<std::size_t> out;
  for (const auto& cells : vertex) {
    std::size_t bits = 0;
    for (const auto& l : cells) bits += l.size();
    out.push_back(bits);
  }
  return out;
}

std::vector<std::size_t> AllPairsLabels::color_bits() const {
  std::vector<std::size_t> out;
  for (const auto& cells : color) {
    std::size_t bits = 0;
    for (const auto& l : cells) bits += l.size();
    out.push_back(bits);
  }
  return out;
}

}  // namespace cfl
