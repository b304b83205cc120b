#include "cfl/single_fault.hpp"

#include <algorithm>
#include <deque>

namespace cfl {

std::vector<VertexId> RulingSet::all() const {
  std::vector<VertexId> out(a0);
  out.insert(out.end(), a.begin(), a.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr std::uint32_t kFar = BfsTree::kUnreached;

// Lowers dist[] using a BFS from `source`, visiting only improved vertices.
void relax_from(const ColoredGraph& g, VertexId source, std::vector<std::uint32_t>& dist) {
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (const Incidence& inc : g.incident(x)) {
      if (dist[inc.neighbor] > dist[x] + 1) {
        dist[inc.neighbor] = dist[x] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
}

}  // namespace

RulingSet build_ruling_set(const ColoredGraph& g) {
  RulingSet rs;
  const std::size_t n = g.n();
  std::vector<std::uint32_t> dist(n, kFar);
  for (VertexId v = 0; v < n; ++v) {
    if (dist[v] != kFar) continue;
    rs.a0.push_back(v);
    relax_from(g, v, dist);
  }
  for (std::uint32_t i = 1;; ++i) {
    VertexId pick = kNoVertex;
    for (VertexId v = 0; v < n; ++v)
      if (dist[v] == i) {
        pick = v;
        break;
      }
    if (pick == kNoVertex) {
      rs.k = i;
      return rs;
    }
    rs.a.push_back(pick);
    relax_from(g, pick, dist);
  }
}

AnchorForest build_anchor_forest(const ColoredGraph& g, const RulingSet& rs) {
  const std::size_t n = g.n();
  AnchorForest f;
  f.anchor.assign(n, kNoVertex);
  f.parent.assign(n, kNoVertex);
  f.parent_edge.assign(n, kNoEdge);
  f.depth.assign(n, kFar);
  std::vector<VertexId> order;
  for (VertexId s : rs.all()) {
    f.depth[s] = 0;
    f.anchor[s] = s;
    order.push_back(s);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    VertexId x = order[head];
    for (const Incidence& inc : g.incident(x)) {
      if (f.depth[inc.neighbor] != kFar) continue;
      f.depth[inc.neighbor] = f.depth[x] + 1;
      order.push_back(inc.neighbor);
    }
  }
  // Layer by layer, pick the parent minimizing (anchor id, parent id, edge id).
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return f.depth[a] < f.depth[b]; });
  for (VertexId v : order) {
    if (f.depth[v] == 0) continue;
    for (const Incidence& inc : g.incident(v)) {
      VertexId w = inc.neighbor;
      if (f.depth[w] + 1 != f.depth[v]) continue;
      if (f.parent[v] == kNoVertex || f.anchor[w] < f.anchor[v]) {
        f.anchor[v] = f.anchor[w];
        f.parent[v] = w;
        f.parent_edge[v] = inc.edge;
      }
    }
  }
  return f;
}

LabelWidths LabelWidths::of(std::size_t n, std::size_t palette) {
  return {field_width(n), field_width(palette)};
}

LabelWidths LabelWidths::of(const ColoredGraph& g) { return of(g.n(), g.palette()); }

namespace {

// Colors whose failure touches P(v), excluding v's own color in vertex mode.
std::vector<ColorId> path_colors(const ColoredGraph& g, const AnchorForest& f, VertexId v) {
  std::vector<ColorId> colors;
  for (VertexId x = v; f.parent[x] != kNoVertex; x = f.parent[x]) {
    if (g.mode() == ColorMode::kEdge)
      colors.push_back(g.edge(f.parent_edge[x]).color);
    else
      colors.push_back(g.vertex_color(f.parent[x]));
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  if (g.mode() == ColorMode::kVertex)
    std::erase(colors, g.vertex_color(v));
  return colors;
}

std::vector<char> colors_in_use(const ColoredGraph& g) {
  std::vector<char> used(g.palette(), 0);
  if (g.mode() == ColorMode::kEdge) {
    for (const Edge& e : g.edges()) used[e.color] = 1;
  } else {
    for (ColorId c : g.vertex_colors()) used[c] = 1;
  }
  return used;
}

}  // namespace

SingleFaultLabels label_single_fault(const ColoredGraph& g) {
  SingleFaultLabels out;
  out.mode = g.mode();
  out.n = g.n();
  out.palette = g.palette();
  out.ruling = build_ruling_set(g);
  const AnchorForest forest = build_anchor_forest(g, out.ruling);
  const std::size_t n = g.n();

  std::vector<std::vector<VertexId>> on_path(g.palette());
  out.vertex.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    out.vertex[v].anchor = forest.anchor[v];
    if (g.mode() == ColorMode::kVertex) out.vertex[v].own_color = g.vertex_color(v);
    for (ColorId c : path_colors(g, forest, v)) {
      out.vertex[v].entries.emplace_back(c, kNoVertex);
      on_path[c].push_back(v);
    }
  }

  std::vector<VertexId> anchors(out.ruling.a);
  std::sort(anchors.begin(), anchors.end());
  const std::vector<char> used = colors_in_use(g);
  const std::vector<VertexId> base = component_ids(GraphView(g));
  out.color.resize(g.palette());
  for (ColorId c = 0; c < g.palette(); ++c) {
    std::vector<VertexId> ids = used[c] ? component_ids(remove_colors(g, FaultSet{c})) : base;
    for (VertexId v : on_path[c]) {
      auto& entries = out.vertex[v].entries;
      auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(c, VertexId{0}));
      it->second = ids[v];
    }
    SingleFaultColorLabel& lc = out.color[c];
    lc.color = c;
    lc.entries.reserve(anchors.size());
    // A removed anchor is never consulted: its color lies on P(v) of every
    // vertex it anchors, so those queries hit the vertex map first.
    for (VertexId a : anchors) lc.entries.emplace_back(a, ids[a] == kNoVertex ? a : ids[a]);
  }
  return out;
}

VertexId query_single_fault(const SingleFaultVertexLabel& lv, const SingleFaultColorLabel& lc) {
  const ColorId c = lc.color;
  if (lv.own_color != kNoColor && lv.own_color == c)
    throw RemovedVertexError("vertex is removed by color " + std::to_string(c));
  auto hit = std::lower_bound(lv.entries.begin(), lv.entries.end(), std::make_pair(c, VertexId{0}));
  if (hit != lv.entries.end() && hit->first == c) return hit->second;
  auto at = std::lower_bound(lc.entries.begin(), lc.entries.end(),
                             std::make_pair(lv.anchor, VertexId{0}));
  if (at != lc.entries.end() && at->first == lv.anchor) return at->second;
  return lv.anchor;
}

bool single_fault_connected(const SingleFaultVertexLabel& lu, const SingleFaultVertexLabel& lv,
                            const SingleFaultColorLabel& lc) {
  return query_single_fault(lu, lc) == query_single_fault(lv, lc);
}

void encode(BitWriter& out, const SingleFaultVertexLabel& label, LabelWidths w, ColorMode mode) {
  out.put(label.anchor, w.id);
  if (mode == ColorMode::kVertex) out.put(label.own_color, w.color);
  out.put(label.entries.size(), w.id);
  for (auto [c, id] : label.entries) {
    out.put(c, w.color);
    out.put(id, w.id);
  }
}

void encode(BitWriter& out, const SingleFaultColorLabel& label, LabelWidths w) {
  out.put(label.color, w.color);
  out.put(label.entries.size(), w.id);
  for (auto [a, id] : label.entries) {
    out.put(a, w.id);
    out.put(id, w.id);
  }
}

SingleFaultVertexLabel decode_vertex_label(BitReader& in, LabelWidths w, ColorMode mode) {
  SingleFaultVertexLabel label;
  label.anchor = static_cast<VertexId>(in.get(w.id));
  if (mode == ColorMode::kVertex) label.own_color = static_cast<ColorId>(in.get(w.color));
  const auto count = in.get(w.id);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto c = static_cast<ColorId>(in.get(w.color));
    auto id = static_cast<VertexId>(in.get(w.id));
    label.entries.emplace_back(c, id);
  }
  return label;
}

SingleFaultColorLabel decode_color_label(BitReader& in, LabelWidths w) {
  SingleFaultColorLabel label;
  label.color = static_cast<ColorId>(in.get(w.color));
  const auto count = in.get(w.id);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto a = static_cast<VertexId>(in.get(w.id));
    auto id = static_cast<VertexId>(in.get(w.id));
    label.entries.emplace_back(a, id);
  }
  return label;
}

std::size_t encoded_bits(const SingleFaultVertexLabel& label, LabelWidths w, ColorMode mode) {
  return w.id + (mode == ColorMode::kVertex ? w.color : 0) + w.id +
         label.entries.size() * (w.color + w.id);
}

std::size_t encoded_bits(const SingleFaultColorLabel& label, LabelWidths w) {
  return w.color + w.id + label.entries.size() * 2 * w.id;
}

std::vector<std::size_t> SingleFaultLabels::vertex_bits() const {
  std::vector<std::size_t> out;
  for (const auto& l : vertex) out.push_back(encoded_bits(l, widths(), mode));
  return out;
}

std::vector<std::size_t> SingleFaultLabels::color_bits() const {
  std::vector<std::size_t> out;
  for (const auto& l : color) out.push_back(encoded_bits(l, widths()));
  return out;
}

std::uint32_t ball_packing_greedy(const ColoredGraph& g) { return build_ruling_set(g).k; }

std::vector<std::vector<std::uint32_t>> hop_distances(const ColoredGraph& g) {
  std::vector<std::vector<std::uint32_t>> dist(g.n());
  GraphView view(g);
  for (VertexId v = 0; v < g.n(); ++v) dist[v] = bfs_tree(view, v).depth;
  return dist;
}

namespace {

struct PackingSearch {
  std::uint32_t r;
  std::vector<VertexId> candidates;
  std::vector<std::uint64_t> ball;  // indexed like candidates
  std::vector<VertexId> chosen;

  bool run(std::size_t from, std::uint64_t used) {
    if (chosen.size() == r) return true;
    for (std::size_t i = from; i + (r - chosen.size()) <= candidates.size(); ++i) {
      if (ball[i] & used) continue;
      chosen.push_back(candidates[i]);
      if (run(i + 1, used | ball[i])) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

BallPacking ball_packing_exact(const ColoredGraph& g) {
  const std::size_t n = g.n();
  if (n > kBallPackingMaxVertices)
    throw GraphError("ball_packing_exact supports at most " +
                     std::to_string(kBallPackingMaxVertices) + " vertices, got " +
                     std::to_string(n));
  const auto dist = hop_distances(g);
  std::vector<std::uint32_t> ecc(n, 0);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId u = 0; u < n; ++u)
      if (dist[v][u] != kFar) ecc[v] = std::max(ecc[v], dist[v][u]);

  // A proper r-ball holds at least r+1 vertices.
  std::uint32_t r = 0;
  while ((r + 1) * (r + 2) <= n) ++r;
  for (; r >= 1; --r) {
    PackingSearch search{r, {}, {}, {}};
    for (VertexId v = 0; v < n; ++v) {
      if (ecc[v] < r) continue;
      std::uint64_t mask = 0;
      for (VertexId u = 0; u < n; ++u)
        if (dist[v][u] <= r) mask |= std::uint64_t{1} << u;
      search.candidates.push_back(v);
      search.ball.push_back(mask);
    }
    if (search.run(0, 0)) return {r, search.chosen};
  }
  return {};
}

}  // namespace cfl
