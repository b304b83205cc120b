#include "cfl/multi_fault.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfl/bits.hpp"
#include "cfl/disjoint_sets.hpp"

namespace cfl {

ColorForestCertificate build_certificate(const GraphView& view) {
  const ColoredGraph& g = view.graph();
  if (g.mode() != ColorMode::kEdge)
    throw GraphError("color-forest certificate needs an edge-colored graph");
  ColorForestCertificate cert;
  cert.forest.resize(g.palette());
  std::vector<std::vector<EdgeId>> by_color(g.palette());
  for (EdgeId e : view.alive_edges()) by_color[g.edge(e).color].push_back(e);

  // One union-find, reset only where the previous color touched it.
  std::vector<VertexId> parent(g.n());
  for (VertexId v = 0; v < g.n(); ++v) parent[v] = v;
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<VertexId> touched;
  for (ColorId c = 0; c < g.palette(); ++c) {
    for (EdgeId e : by_color[c]) {
      VertexId a = g.edge(e).u, b = g.edge(e).v;
      touched.push_back(a);
      touched.push_back(b);
      a = find(a);
      b = find(b);
      if (a == b) continue;
      parent[std::max(a, b)] = std::min(a, b);
      cert.forest[c].push_back(e);
    }
    for (VertexId x : touched) parent[x] = x;
    touched.clear();
    cert.edges.insert(cert.edges.end(), cert.forest[c].begin(), cert.forest[c].end());
  }
  std::sort(cert.edges.begin(), cert.edges.end());
  return cert;
}

ColorForestCertificate build_certificate(const ColoredGraph& g) {
  return build_certificate(GraphView(g));
}

namespace {

std::vector<SketchEdge> sketch_edges(const ColoredGraph& g, const std::vector<EdgeId>& ids) {
  std::vector<SketchEdge> out;
  out.reserve(ids.size());
  for (EdgeId e : ids) out.push_back({g.edge(e).u, g.edge(e).v, e});
  return out;
}

void check_vertex(const std::vector<ColorId>& own, std::size_t n, VertexId v,
                  const FaultSet& faults) {
  if (v >= n) throw GraphError("vertex " + std::to_string(v) + " out of range");
  if (!own.empty() && faults.contains(own[v]))
    throw RemovedVertexError("vertex " + std::to_string(v) + " is removed by the fault set");
}

}  // namespace

LargeFLabels label_large_f(const ColoredGraph& g, SketchParams params) {
  LargeFLabels out;
  out.mode = g.mode();
  out.n = g.n();
  out.palette = g.palette();
  if (g.mode() == ColorMode::kVertex) out.own_color = g.vertex_colors();
  const ColoredGraph work = g.mode() == ColorMode::kVertex ? reduce_between_modes(g) : g;
  out.certificate = build_certificate(work);
  out.sketch =
      EdgeFaultSketch(work.n(), sketch_edges(work, out.certificate.edges), work.m(), params);
  out.color.resize(g.palette());
  for (ColorId c = 0; c < g.palette(); ++c)
    for (EdgeId e : out.certificate.forest[c]) out.color[c].push_back(out.sketch.edge_label(e));
  return out;
}

bool LargeFLabels::connected(VertexId u, VertexId v, const FaultSet& faults) const {
  check_vertex(own_color, n, u, faults);
  check_vertex(own_color, n, v, faults);
  for (ColorId c : faults.colors())
    if (c >= palette) throw InvalidFaultSet("fault color outside palette");
  std::vector<EdgeSketchLabel> failed;
  for (ColorId c : faults.colors()) failed.insert(failed.end(), color[c].begin(), color[c].end());
  return sketch.query(sketch.vertex_label(u), sketch.vertex_label(v), failed);
}

std::vector<std::size_t> LargeFLabels::vertex_bits() const {
  return std::vector<std::size_t>(n, sketch.vertex_label_bits());
}

std::vector<std::size_t> LargeFLabels::color_bits() const {
  std::vector<std::size_t> out;
  const unsigned count_bits = field_width(sketch.n() + 1);
  for (const auto& edges : color)
    out.push_back(count_bits + edges.size() * sketch.edge_label_bits());
  return out;
}

namespace {

// The node graph as a stand-alone edge-colored graph; relative edge order is
// kept so that tie-breaks match the original ids.
ColoredGraph subgraph(const ColoredGraph& g, const std::vector<EdgeId>& ids) {
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (EdgeId e : ids) edges.push_back(g.edge(e));
  return ColoredGraph::edge_colored(g.n(), g.palette(), std::move(edges));
}

std::size_t max_single_bits(const SingleFaultLabels& labels) {
  std::size_t best = 0;
  for (std::size_t b : labels.vertex_bits()) best = std::max(best, b);
  for (std::size_t b : labels.color_bits()) best = std::max(best, b);
  return best;
}

std::unique_ptr<RecursiveNode> build_node(const ColoredGraph& work, std::vector<EdgeId> alive,
                                          std::size_t budget, std::vector<ColorId> removed,
                                          std::uint64_t seed, unsigned reps) {
  auto node = std::make_unique<RecursiveNode>();
  node->budget = budget;
  node->removed = std::move(removed);
  node->seed = seed;
  if (budget == 1) {
    node->single = label_single_fault(subgraph(work, alive));
    return node;
  }
  std::vector<char> mask(work.m(), 0);
  for (EdgeId e : alive) mask[e] = 1;
  const ColorForestCertificate cert = build_certificate(GraphView(work, mask));
  node->m_prime = cert.edges.size();
  node->sketch = EdgeFaultSketch(work.n(), sketch_edges(work, cert.edges), work.m(),
                                 SketchParams{seed, reps});

  // b(n, 1) is measured; deeper budgets follow the balanced recurrence.
  const double w = static_cast<double>(node->sketch.edge_label_bits());
  const double m_prime = static_cast<double>(node->m_prime);
  double b = static_cast<double>(max_single_bits(label_single_fault(subgraph(work, cert.edges))));
  for (std::size_t k = 2; k < budget; ++k) b = 2 * std::sqrt(m_prime * b * w);
  node->estimate_bits = static_cast<std::size_t>(std::ceil(b));
  node->delta = std::clamp(std::sqrt(m_prime * b / w), 1.0, std::max(1.0, m_prime));

  node->branch.assign(work.palette(), -1);
  node->low_edges.resize(work.palette());
  for (ColorId c = 0; c < work.palette(); ++c) {
    const auto& forest = cert.forest[c];
    if (!forest.empty() && static_cast<double>(forest.size()) >= node->delta) {
      node->branch[c] = static_cast<std::int32_t>(node->high.size());
      node->high.push_back(c);
    } else {
      for (EdgeId e : forest) node->low_edges[c].push_back(node->sketch.edge_label(e));
    }
  }
  for (std::size_t i = 0; i < node->high.size(); ++i) {
    const ColorId h = node->high[i];
    std::vector<EdgeId> rest;
    for (EdgeId e : cert.edges)
      if (work.edge(e).color != h) rest.push_back(e);
    std::vector<ColorId> path = node->removed;
    path.push_back(h);
    node->children.push_back(build_node(work, std::move(rest), budget - 1, std::move(path),
                                        hash_words(seed, {i + 1}), reps));
  }
  return node;
}

bool query_node(const RecursiveNode& node, VertexId u, VertexId v,
                std::vector<ColorId> faults) {
  if (node.budget == 1) {
    const SingleFaultLabels& s = *node.single;
    if (faults.size() > 1) throw LabelMismatch("single-fault node asked about several colors");
    ColorId c;
    if (!faults.empty())
      c = faults[0];
    else if (!node.removed.empty())
      c = node.removed.back();  // absent here, so G-c is the node graph itself
    else
      throw InvalidFaultSet("single-fault labels need exactly one faulty color");
    return single_fault_connected(s.vertex[u], s.vertex[v], s.color[c]);
  }
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const std::int32_t b = node.branch[faults[i]];
    if (b < 0) continue;
    if (static_cast<std::size_t>(b) >= node.children.size())
      throw LabelMismatch("color label points to a missing branch");
    faults.erase(faults.begin() + static_cast<std::ptrdiff_t>(i));
    return query_node(*node.children[b], u, v, std::move(faults));
  }
  std::vector<EdgeSketchLabel> failed;
  for (ColorId c : faults)
    failed.insert(failed.end(), node.low_edges[c].begin(), node.low_edges[c].end());
  return node.sketch.query(node.sketch.vertex_label(u), node.sketch.vertex_label(v), failed);
}

std::size_t node_vertex_bits(const RecursiveNode& node, VertexId v) {
  if (node.budget == 1)
    return encoded_bits(node.single->vertex[v], node.single->widths(), node.single->mode);
  std::size_t bits = node.sketch.vertex_label_bits();
  for (const auto& child : node.children) bits += node_vertex_bits(*child, v);
  return bits;
}

std::size_t node_color_bits(const RecursiveNode& node, ColorId c) {
  if (node.budget == 1) return encoded_bits(node.single->color[c], node.single->widths());
  std::size_t bits = 1;
  if (node.branch[c] >= 0)
    bits += field_width(node.high.size());
  else
    bits += field_width(node.m_prime + 1) + node.low_edges[c].size() * node.sketch.edge_label_bits();
  for (const auto& child : node.children) bits += node_color_bits(*child, c);
  return bits;
}

std::size_t count_nodes(const RecursiveNode& node) {
  std::size_t total = 1;
  for (const auto& child : node.children) total += count_nodes(*child);
  return total;
}

void describe(const RecursiveNode& node, std::vector<std::string>& out) {
  std::ostringstream line;
  line << "path=";
  for (std::size_t i = 0; i < node.removed.size(); ++i) line << (i ? "," : "") << node.removed[i];
  if (node.removed.empty()) line << "-";
  line << " budget=" << node.budget;
  if (node.budget > 1) {
    line << " m_prime=" << node.m_prime << " b_prev=" << node.estimate_bits
         << " delta=" << node.delta << " high=";
    for (std::size_t i = 0; i < node.high.size(); ++i) line << (i ? "," : "") << node.high[i];
    if (node.high.empty()) line << "-";
  }
  out.push_back(line.str());
  for (const auto& child : node.children) describe(*child, out);
}

}  // namespace

RecursiveLabels label_recursive(const ColoredGraph& g, std::size_t f, SketchParams params) {
  if (f == 0) throw std::invalid_argument("fault budget must be at least 1");
  RecursiveLabels out;
  out.mode = g.mode();
  out.n = g.n();
  out.palette = g.palette();
  out.f = f;
  if (g.mode() == ColorMode::kVertex) out.own_color = g.vertex_colors();
  if (f == 1) {
    out.root = std::make_unique<RecursiveNode>();
    out.root->seed = params.seed;
    out.root->single = label_single_fault(g);
    return out;
  }
  // Vertex colors are handled on the subdivided graph, where |E_c| is the
  // volume of the color class.
  const ColoredGraph work = g.mode() == ColorMode::kVertex ? reduce_between_modes(g) : g;
  std::vector<EdgeId> all(work.m());
  for (EdgeId e = 0; e < work.m(); ++e) all[e] = e;
  out.root = build_node(work, std::move(all), f, {}, params.seed, params.repetitions);
  return out;
}

bool RecursiveLabels::connected(VertexId u, VertexId v, const FaultSet& faults) const {
  check_vertex(own_color, n, u, faults);
  check_vertex(own_color, n, v, faults);
  if (faults.size() > f) throw InvalidFaultSet("more faults than the scheme supports");
  for (ColorId c : faults.colors())
    if (c >= palette) throw InvalidFaultSet("fault color outside palette");
  if (u == v) return true;
  return query_node(*root, u, v, std::vector<ColorId>(faults.colors().begin(), faults.colors().end()));
}

std::vector<std::size_t> RecursiveLabels::vertex_bits() const {
  std::vector<std::size_t> out;
  for (VertexId v = 0; v < n; ++v) out.push_back(node_vertex_bits(*root, v));
  return out;
}

std::vector<std::size_t> RecursiveLabels::color_bits() const {
  std::vector<std::size_t> out;
  for (ColorId c = 0; c < palette; ++c) out.push_back(node_color_bits(*root, c));
  return out;
}

std::size_t RecursiveLabels::node_count() const { return count_nodes(*root); }

std::vector<std::string> RecursiveLabels::manifest() const {
  std::vector<std::string> out;
  describe(*root, out);
  return out;
}

}  // namespace cfl
