#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

/// Bit i is read back as: 1 iff u and v are disconnected in G-F.
struct DecodeQuery {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  FaultSet faults;
};

struct EncodedInstance {
  ColoredGraph graph;
  std::vector<DecodeQuery> decoder;  // one per bit
  std::size_t capacity() const { return decoder.size(); }
};

class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ConnectivityFn = std::function<bool(VertexId, VertexId, const FaultSet&)>;

std::vector<bool> decode(const EncodedInstance& inst, const ConnectivityFn& connected);

/// Ball-layer coloring on a topology with r disjoint proper r-balls around
/// `centers`. Bit k*r+(l-1) sets the edges between layers l-1 and l of ball
/// k to color l-1; every other edge takes the never-failing color r.
EncodedInstance encode_balls(const ColoredGraph& topology, const std::vector<VertexId>& centers,
                             const std::vector<bool>& x);

/// Same, with centers from ball_packing_exact.
EncodedInstance encode_balls(const ColoredGraph& topology, const std::vector<bool>& x);

struct SpiderOptions {
  bool subdivide = false;       // replace each parallel edge by a two-edge path
  bool vertex_colored = false;  // subdivision vertices carry the colors
};

/// Number of f-subsets of q colors.
std::size_t binomial(std::size_t n, std::size_t k);

/// The l-th f-subset of 0..q-1 in colexicographic order.
std::vector<ColorId> colex_subset(std::size_t l, std::size_t f);

/// f-thick spider: center 0 and `arms` arms of M = C(q,f) steps with f
/// parallel edges each. Bit k*M+l gives step l of arm k the colors F(l);
/// a zero bit leaves the step in the never-failing color q.
EncodedInstance encode_spider(std::size_t f, std::size_t q, std::size_t arms,
                              const std::vector<bool>& x, SpiderOptions options = {});

}  // namespace cfl
