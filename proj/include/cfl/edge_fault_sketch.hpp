#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

inline constexpr unsigned kChecksumBits = 32;
inline constexpr unsigned kDefaultRepetitions = 24;

/// Counter-based 64-bit mixer (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_words(std::uint64_t seed, std::initializer_list<std::uint64_t> words);

/// Identity of an edge as stored in a sketch cell. XOR of several names is a
/// cell; a cell holding exactly one name passes the checksum test.
struct EdgeName {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint32_t id = 0;
  std::uint32_t check = 0;

  EdgeName& operator^=(const EdgeName& o) {
    u ^= o.u;
    v ^= o.v;
    id ^= o.id;
    check ^= o.check;
    return *this;
  }
  bool zero() const { return (u | v | id | check) == 0; }
  bool operator==(const EdgeName&) const = default;
};

struct SketchEdge {
  VertexId u;
  VertexId v;
  EdgeId id;
};

struct SketchParams {
  std::uint64_t seed = 1;
  unsigned repetitions = kDefaultRepetitions;
};

class SeedMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VertexSketchLabel {
  VertexId vertex = kNoVertex;
  std::uint64_t seed = 0;
  std::vector<EdgeName> cells;  // repetition-major, then level
};

struct EdgeSketchLabel {
  EdgeName name;
  std::uint64_t seed = 0;
  std::vector<bool> member;  // same layout as the vertex cells
};

struct SketchAnswer {
  bool connected = false;
  std::vector<EdgeName> used;  // decoded edges that merged components
};

/// Vertex and edge labels for connectivity under edge faults, plus the shared
/// query context holding every vertex sketch.
class EdgeFaultSketch {
 public:
  EdgeFaultSketch() = default;
  /// `id_space` bounds the edge ids (it fixes the id field width).
  EdgeFaultSketch(std::size_t n, const std::vector<SketchEdge>& edges, std::size_t id_space,
                  SketchParams params);

  static EdgeFaultSketch of_view(const GraphView& view, SketchParams params);

  std::size_t n() const { return n_; }
  std::uint64_t seed() const { return params_.seed; }
  unsigned repetitions() const { return params_.repetitions; }
  unsigned levels() const { return levels_; }
  std::size_t cells_per_vertex() const { return std::size_t{params_.repetitions} * levels_; }

  EdgeName name_of(const SketchEdge& e) const;
  bool verifies(const EdgeName& cell) const;
  bool member(EdgeId id, unsigned rep, unsigned level) const;

  const VertexSketchLabel& vertex_label(VertexId v) const { return vertices_[v]; }
  EdgeSketchLabel edge_label(const SketchEdge& e) const;
  /// Label of an edge of the sketched graph, looked up by id.
  EdgeSketchLabel edge_label(EdgeId id) const;
  bool has_edge(EdgeId id) const { return index_.count(id) != 0; }

  bool query(const VertexSketchLabel& lu, const VertexSketchLabel& lv,
             std::span<const EdgeSketchLabel> faults) const;
  SketchAnswer query_certified(const VertexSketchLabel& lu, const VertexSketchLabel& lv,
                               std::span<const EdgeSketchLabel> faults) const;

  /// XOR of the vertex sketches over S, recomputed from the context.
  std::vector<EdgeName> fold(std::span<const VertexId> s) const;

  unsigned cell_bits() const;
  std::size_t vertex_label_bits() const;
  std::size_t edge_label_bits() const;

 private:
  std::size_t n_ = 0;
  std::size_t id_space_ = 0;
  SketchParams params_;
  unsigned levels_ = 1;
  std::vector<VertexSketchLabel> vertices_;
  std::vector<SketchEdge> edges_;
  std::unordered_map<EdgeId, std::size_t> index_;
};

}  // namespace cfl
