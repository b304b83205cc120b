#include "cfl/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "cfl/disjoint_sets.hpp"

namespace cfl {

const char* to_string(ColorMode mode) { return mode == ColorMode::kEdge ? "edge" : "vertex"; }

ColoredGraph ColoredGraph::edge_colored(std::size_t n, std::size_t palette,
                                        std::vector<Edge> edges) {
  ColoredGraph g;
  g.n_ = n;
  g.palette_ = palette;
  g.mode_ = ColorMode::kEdge;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n)
      throw GraphError("edge " + std::to_string(i) + " has an endpoint outside 0.." +
                       std::to_string(n == 0 ? 0 : n - 1));
    if (e.color >= palette)
      throw GraphError("edge " + std::to_string(i) + " has color " + std::to_string(e.color) +
                       " outside the palette of size " + std::to_string(palette));
  }
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

ColoredGraph ColoredGraph::vertex_colored(std::size_t n, std::size_t palette,
                                          std::vector<ColorId> vertex_colors,
                                          const std::vector<std::pair<VertexId, VertexId>>& edges) {
  if (vertex_colors.size() != n) throw GraphError("vertex color count differs from n");
  for (std::size_t v = 0; v < n; ++v)
    if (vertex_colors[v] >= palette)
      throw GraphError("vertex " + std::to_string(v) + " has color outside the palette");
  ColoredGraph g;
  g.n_ = n;
  g.palette_ = palette;
  g.mode_ = ColorMode::kVertex;
  g.vertex_colors_ = std::move(vertex_colors);
  g.edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= n || v >= n)
      throw GraphError("edge " + std::to_string(i) + " has an endpoint out of range");
    g.edges_.push_back({u, v, kNoColor});
  }
  g.build_adjacency();
  return g;
}

void ColoredGraph::build_adjacency() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    if (e.is_loop()) continue;
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.assign(offsets_[n_], {});
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.is_loop()) continue;
    adjacency_[fill[e.u]++] = {e.v, id};
    adjacency_[fill[e.v]++] = {e.u, id};
  }
  for (std::size_t v = 0; v < n_; ++v)
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) {
                return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.edge < b.edge;
              });
}

bool ColoredGraph::edge_fails_with(EdgeId id, ColorId c) const {
  const Edge& e = edges_[id];
  if (mode_ == ColorMode::kEdge) return e.color == c;
  return vertex_colors_[e.u] == c || vertex_colors_[e.v] == c;
}

FaultSet::FaultSet(std::vector<ColorId> colors) : colors_(std::move(colors)) {
  std::sort(colors_.begin(), colors_.end());
  colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());
}

bool FaultSet::contains(ColorId c) const {
  return std::binary_search(colors_.begin(), colors_.end(), c);
}

void FaultSet::validate(const ColoredGraph& g) const {
  for (ColorId c : colors_)
    if (c >= g.palette())
      throw InvalidFaultSet("fault color " + std::to_string(c) + " outside palette of size " +
                            std::to_string(g.palette()));
}

GraphView::GraphView(const ColoredGraph& g)
    : g_(&g), vertex_alive_(g.n(), 1), edge_alive_(g.m(), 1) {}

GraphView::GraphView(const ColoredGraph& g, std::vector<char> edge_alive)
    : g_(&g), vertex_alive_(g.n(), 1), edge_alive_(std::move(edge_alive)) {
  if (edge_alive_.size() != g.m()) throw GraphError("edge mask size differs from m");
}

void GraphView::remove_vertex(VertexId v) {
  vertex_alive_[v] = 0;
  for (const Incidence& inc : g_->incident(v)) edge_alive_[inc.edge] = 0;
}

std::vector<EdgeId> GraphView::alive_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_alive_.size(); ++e)
    if (edge_alive_[e]) out.push_back(e);
  return out;
}

GraphView remove_colors(const ColoredGraph& g, const FaultSet& faults) {
  faults.validate(g);
  GraphView view(g);
  if (faults.empty()) return view;
  if (g.mode() == ColorMode::kEdge) {
    for (EdgeId e = 0; e < g.m(); ++e)
      if (faults.contains(g.edge(e).color)) view.remove_edge(e);
  } else {
    for (VertexId v = 0; v < g.n(); ++v)
      if (faults.contains(g.vertex_color(v))) view.remove_vertex(v);
    // Loops are not in the adjacency lists; kill them explicitly.
    for (EdgeId e = 0; e < g.m(); ++e)
      if (g.edge(e).is_loop() && !view.vertex_alive(g.edge(e).u)) view.remove_edge(e);
  }
  return view;
}

std::vector<VertexId> component_ids(const GraphView& view) {
  const std::size_t n = view.n();
  std::vector<VertexId> ids(n, kNoVertex);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (!view.vertex_alive(s) || ids[s] != kNoVertex) continue;
    ids[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      view.for_each_neighbor(x, [&](const Incidence& inc) {
        if (ids[inc.neighbor] == kNoVertex) {
          ids[inc.neighbor] = s;
          stack.push_back(inc.neighbor);
        }
      });
    }
  }
  return ids;
}

VertexId cid(const ColoredGraph& g, VertexId v, const FaultSet& faults) {
  if (v >= g.n()) throw GraphError("vertex " + std::to_string(v) + " out of range");
  GraphView view = remove_colors(g, faults);
  if (!view.vertex_alive(v))
    throw RemovedVertexError("vertex " + std::to_string(v) + " is removed by the fault set");
  return component_ids(view)[v];
}

std::vector<EdgeId> spanning_forest(const GraphView& view) {
  DisjointSets sets(view.n());
  std::vector<EdgeId> forest;
  const ColoredGraph& g = view.graph();
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (!view.edge_alive(e)) continue;
    if (sets.unite(g.edge(e).u, g.edge(e).v)) forest.push_back(e);
  }
  return forest;
}

BfsTree bfs_tree(const GraphView& view, VertexId root) {
  const std::size_t n = view.n();
  if (root >= n || !view.vertex_alive(root)) throw GraphError("BFS root not present");
  BfsTree t;
  t.root = root;
  t.parent.assign(n, kNoVertex);
  t.parent_edge.assign(n, kNoEdge);
  t.depth.assign(n, BfsTree::kUnreached);
  t.depth[root] = 0;
  t.order.push_back(root);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    VertexId x = t.order[head];
    view.for_each_neighbor(x, [&](const Incidence& inc) {
      if (t.depth[inc.neighbor] != BfsTree::kUnreached) return;
      t.depth[inc.neighbor] = t.depth[x] + 1;
      t.parent[inc.neighbor] = x;
      t.parent_edge[inc.neighbor] = inc.edge;
      t.order.push_back(inc.neighbor);
    });
  }
  return t;
}

ColoredGraph reduce_between_modes(const ColoredGraph& g) {
  const std::size_t n = g.n();
  const std::size_t m = g.m();
  if (g.mode() == ColorMode::kEdge) {
    std::vector<ColorId> colors(n + m, static_cast<ColorId>(g.palette()));
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(2 * m);
    for (EdgeId e = 0; e < m; ++e) {
      const auto x = static_cast<VertexId>(n + e);
      colors[x] = g.edge(e).color;
      edges.emplace_back(g.edge(e).u, x);
      edges.emplace_back(x, g.edge(e).v);
    }
    return ColoredGraph::vertex_colored(n + m, g.palette() + 1, std::move(colors), edges);
  }
  std::vector<Edge> edges;
  edges.reserve(2 * m);
  for (EdgeId e = 0; e < m; ++e) {
    const auto x = static_cast<VertexId>(n + e);
    const Edge& orig = g.edge(e);
    edges.push_back({orig.u, x, g.vertex_color(orig.u)});
    edges.push_back({x, orig.v, g.vertex_color(orig.v)});
  }
  return ColoredGraph::edge_colored(n + m, g.palette(), std::move(edges));
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::uint64_t parse_number(const Line& line, std::size_t index, std::uint64_t limit,
                           const char* what) {
  const std::string& tok = line.tokens[index];
  std::uint64_t value = 0;
  if (tok.empty() || tok.size() > 18) throw ParseError(line.number, std::string("bad ") + what);
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw ParseError(line.number, std::string("bad ") + what + " '" + tok + "'");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (value >= limit)
    throw ParseError(line.number, std::string(what) + " " + tok + " out of range");
  return value;
}

void expect_tokens(const Line& line, std::size_t count) {
  if (line.tokens.size() != count)
    throw ParseError(line.number, "expected " + std::to_string(count) + " fields, found " +
                                      std::to_string(line.tokens.size()));
}

}  // namespace

ColoredGraph parse_graph(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing header");
  const Line& header = lines[0];
  expect_tokens(header, 6);
  if (header.tokens[0] != "ccg") throw ParseError(header.number, "header must start with 'ccg'");
  if (header.tokens[1] != "1")
    throw ParseError(header.number, "unsupported format version " + header.tokens[1]);
  const std::string& mode = header.tokens[2];
  if (mode != "edge" && mode != "vertex")
    throw ParseError(header.number, "mode must be 'edge' or 'vertex'");
  constexpr std::uint64_t kMax = std::uint64_t{1} << 31;
  const auto n = parse_number(header, 3, kMax, "vertex count");
  const auto m = parse_number(header, 4, kMax, "edge count");
  const auto palette = parse_number(header, 5, kMax, "palette size");

  const std::size_t expected = mode == "edge" ? m : n + m;
  if (lines.size() - 1 != expected) {
    std::size_t at = lines.size() - 1 < expected ? lines.back().number + 1
                                                 : lines[expected + 1].number;
    throw ParseError(at, "expected " + std::to_string(expected) + " data lines, found " +
                             std::to_string(lines.size() - 1));
  }
  if (mode == "edge") {
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Line& l = lines[1 + i];
      expect_tokens(l, 3);
      edges.push_back({static_cast<VertexId>(parse_number(l, 0, n, "vertex id")),
                       static_cast<VertexId>(parse_number(l, 1, n, "vertex id")),
                       static_cast<ColorId>(parse_number(l, 2, palette, "color id"))});
    }
    return ColoredGraph::edge_colored(n, palette, std::move(edges));
  }
  std::vector<ColorId> colors(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Line& l = lines[1 + v];
    expect_tokens(l, 1);
    colors[v] = static_cast<ColorId>(parse_number(l, 0, palette, "color id"));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Line& l = lines[1 + n + i];
    expect_tokens(l, 2);
    edges.emplace_back(static_cast<VertexId>(parse_number(l, 0, n, "vertex id")),
                       static_cast<VertexId>(parse_number(l, 1, n, "vertex id")));
  }
  return ColoredGraph::vertex_colored(n, palette, std::move(colors), edges);
}

std::string serialize_graph(const ColoredGraph& g) {
  std::ostringstream out;
  out << "ccg 1 " << to_string(g.mode()) << ' ' << g.n() << ' ' << g.m() << ' ' << g.palette()
      << '\n';
  if (g.mode() == ColorMode::kEdge) {
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.color << '\n';
  } else {
    for (ColorId c : g.vertex_colors()) out << c << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  }
  return out.str();
}

ColoredGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const ColoredGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << serialize_graph(g);
}

}  // namespace cfl
