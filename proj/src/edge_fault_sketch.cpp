#include "cfl/edge_fault_sketch.hpp"

#include <algorithm>
#include <bit>

#include "cfl/bits.hpp"
#include "cfl/disjoint_sets.hpp"

namespace cfl {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_words(std::uint64_t seed, std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w + 0x632be59bd9b4e019ULL));
  return h;
}

EdgeFaultSketch::EdgeFaultSketch(std::size_t n, const std::vector<SketchEdge>& edges,
                                 std::size_t id_space, SketchParams params)
    : n_(n), id_space_(std::max<std::size_t>(id_space, 1)), params_(params), edges_(edges) {
  if (params_.repetitions == 0) throw std::invalid_argument("sketch needs at least one repetition");
  const std::size_t m = edges.size();
  levels_ = m <= 1 ? 1 : static_cast<unsigned>(std::bit_width(m));  // floor(log2 m) + 1
  vertices_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    vertices_[v].vertex = v;
    vertices_[v].seed = params_.seed;
    vertices_[v].cells.assign(cells_per_vertex(), EdgeName{});
  }
  for (std::size_t i = 0; i < m; ++i) {
    const SketchEdge& e = edges[i];
    if (e.u >= n || e.v >= n) throw GraphError("sketch edge endpoint out of range");
    if (e.id >= id_space_) throw GraphError("sketch edge id outside id space");
    index_.emplace(e.id, i);
    if (e.u == e.v) continue;
    const EdgeName name = name_of(e);
    for (unsigned r = 0; r < params_.repetitions; ++r)
      for (unsigned l = 0; l < levels_ && member(e.id, r, l); ++l) {
        vertices_[e.u].cells[r * levels_ + l] ^= name;
        vertices_[e.v].cells[r * levels_ + l] ^= name;
      }
  }
}

EdgeFaultSketch EdgeFaultSketch::of_view(const GraphView& view, SketchParams params) {
  std::vector<SketchEdge> edges;
  for (EdgeId e : view.alive_edges())
    edges.push_back({view.graph().edge(e).u, view.graph().edge(e).v, e});
  return EdgeFaultSketch(view.n(), edges, view.graph().m(), params);
}

EdgeName EdgeFaultSketch::name_of(const SketchEdge& e) const {
  EdgeName name;
  name.u = std::min(e.u, e.v);
  name.v = std::max(e.u, e.v);
  name.id = e.id;
  name.check = static_cast<std::uint32_t>(hash_words(params_.seed ^ 0x5bd1e995ULL,
                                                     {name.u, name.v, name.id}));
  return name;
}

bool EdgeFaultSketch::verifies(const EdgeName& cell) const {
  if (cell.zero() || cell.u >= n_ || cell.v >= n_ || cell.u >= cell.v) return false;
  return name_of({cell.u, cell.v, cell.id}).check == cell.check;
}

bool EdgeFaultSketch::member(EdgeId id, unsigned rep, unsigned level) const {
  if (level == 0) return true;
  const std::uint64_t h = hash_words(params_.seed, {rep, id});
  return static_cast<unsigned>(std::countr_zero(h)) >= level;
}

EdgeSketchLabel EdgeFaultSketch::edge_label(const SketchEdge& e) const {
  EdgeSketchLabel label;
  label.name = name_of(e);
  label.seed = params_.seed;
  label.member.resize(cells_per_vertex());
  for (unsigned r = 0; r < params_.repetitions; ++r)
    for (unsigned l = 0; l < levels_; ++l) label.member[r * levels_ + l] = member(e.id, r, l);
  return label;
}

EdgeSketchLabel EdgeFaultSketch::edge_label(EdgeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw GraphError("edge " + std::to_string(id) + " is not sketched");
  return edge_label(edges_[it->second]);
}

std::vector<EdgeName> EdgeFaultSketch::fold(std::span<const VertexId> s) const {
  std::vector<EdgeName> acc(cells_per_vertex());
  for (VertexId v : s)
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= vertices_[v].cells[i];
  return acc;
}

bool EdgeFaultSketch::query(const VertexSketchLabel& lu, const VertexSketchLabel& lv,
                            std::span<const EdgeSketchLabel> faults) const {
  return query_certified(lu, lv, faults).connected;
}

SketchAnswer EdgeFaultSketch::query_certified(const VertexSketchLabel& lu,
                                              const VertexSketchLabel& lv,
                                              std::span<const EdgeSketchLabel> faults) const {
  if (lu.seed != params_.seed || lv.seed != params_.seed)
    throw SeedMismatch("vertex label built with a different seed");
  for (const auto& f : faults)
    if (f.seed != params_.seed) throw SeedMismatch("edge label built with a different seed");
  SketchAnswer answer;
  const VertexId u = lu.vertex;
  const VertexId v = lv.vertex;
  if (u == v) {
    answer.connected = true;
    return answer;
  }
  const std::size_t cells = cells_per_vertex();
  std::vector<EdgeName> sk(n_ * cells);
  for (VertexId x = 0; x < n_; ++x)
    std::copy(vertices_[x].cells.begin(), vertices_[x].cells.end(), sk.begin() + x * cells);
  for (const auto& f : faults) {
    if (f.name.u == f.name.v) continue;
    for (std::size_t i = 0; i < cells; ++i)
      if (f.member[i]) {
        sk[f.name.u * cells + i] ^= f.name;
        sk[f.name.v * cells + i] ^= f.name;
      }
  }

  DisjointSets comp(n_);
  const unsigned rounds = ceil_log2(n_) + 1;
  std::vector<EdgeName> agg(n_ * cells);
  for (unsigned round = 0; round < rounds && !comp.same(u, v); ++round) {
    std::fill(agg.begin(), agg.end(), EdgeName{});
    for (VertexId x = 0; x < n_; ++x) {
      const std::size_t r = comp.find(x);
      for (std::size_t i = 0; i < cells; ++i) agg[r * cells + i] ^= sk[x * cells + i];
    }
    std::vector<EdgeName> found;
    for (VertexId r = 0; r < n_; ++r) {
      if (comp.find(r) != r) continue;
      for (std::size_t i = 0; i < cells; ++i) {
        const EdgeName& cell = agg[r * cells + i];
        if (!verifies(cell)) continue;
        if ((comp.find(cell.u) == r) == (comp.find(cell.v) == r)) continue;
        found.push_back(cell);
        break;
      }
    }
    bool merged = false;
    for (const EdgeName& e : found)
      if (comp.unite(e.u, e.v)) {
        answer.used.push_back(e);
        merged = true;
      }
    if (!merged) break;
  }
  answer.connected = comp.same(u, v);
  return answer;
}

unsigned EdgeFaultSketch::cell_bits() const {
  return 2 * field_width(n_) + field_width(id_space_) + kChecksumBits;
}

std::size_t EdgeFaultSketch::vertex_label_bits() const {
  return field_width(n_) + 64 + cells_per_vertex() * cell_bits();
}

std::size_t EdgeFaultSketch::edge_label_bits() const {
  return cell_bits() + 64 + cells_per_vertex();
}

}  // namespace cfl
