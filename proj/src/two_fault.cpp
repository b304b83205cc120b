#include "cfl/two_fault.hpp"

#include <algorithm>
#include <map>

#include "cfl/bits.hpp"

namespace cfl {

HittingSet greedy_hitting_set(const std::vector<std::vector<VertexId>>& sets, std::size_t n) {
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("hitting set family contains an empty set");
    for (VertexId v : s)
      if (v >= n) throw std::invalid_argument("hitting set element outside the universe");
  }
  HittingSet out;
  std::vector<char> hit(sets.size(), 0);
  std::vector<std::size_t> count(n);
  std::size_t left = sets.size();
  while (left > 0) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!hit[i])
        for (VertexId v : sets[i]) ++count[v];
    const VertexId pick =
        static_cast<VertexId>(std::max_element(count.begin(), count.end()) - count.begin());
    out.members.push_back(pick);
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!hit[i] && std::find(sets[i].begin(), sets[i].end(), pick) != sets[i].end()) {
        hit[i] = 1;
        --left;
      }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

TruncatedBfsTree truncated_bfs(const ColoredGraph& g, VertexId origin, ColorId excluded,
                               std::size_t cap) {
  TruncatedBfsTree t;
  t.origin = origin;
  t.excluded = excluded;
  std::vector<char> seen(g.n(), 0);
  seen[origin] = 1;
  t.vertices.push_back(origin);
  for (std::size_t head = 0; head < t.vertices.size() && t.vertices.size() < cap; ++head) {
    for (const Incidence& inc : g.incident(t.vertices[head])) {
      if (seen[inc.neighbor] || g.edge_fails_with(inc.edge, excluded)) continue;
      seen[inc.neighbor] = 1;
      t.vertices.push_back(inc.neighbor);
      t.edges.push_back(inc.edge);
      if (t.vertices.size() == cap) break;
    }
  }
  return t;
}

namespace {

class PairCids {
 public:
  explicit PairCids(const ColoredGraph& g) : g_(g) {}

  const std::vector<VertexId>& get(ColorId c, ColorId d) {
    auto key = std::minmax(c, d);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, component_ids(remove_colors(g_, FaultSet{c, d}))).first;
    return it->second;
  }

 private:
  const ColoredGraph& g_;
  std::map<std::pair<ColorId, ColorId>, std::vector<VertexId>> cache_;
};

std::vector<ColorId> edge_colors(const ColoredGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<ColorId> out;
  for (EdgeId e : edges) out.push_back(g.edge(e).color);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const VertexId* lookup(const ColorCidMap& map, ColorId c) {
  auto it = std::lower_bound(map.begin(), map.end(), std::make_pair(c, VertexId{0}));
  return it != map.end() && it->first == c ? &it->second : nullptr;
}

std::size_t map_bits(const ColorCidMap& map, unsigned w, unsigned wc) {
  return w + map.size() * (wc + w);
}

}  // namespace

TwoFaultLabels label_two_fault(const ColoredGraph& g) {
  const ColoredGraph work = g.mode() == ColorMode::kVertex ? reduce_between_modes(g) : g;
  const std::size_t n_work = work.n();
  TwoFaultLabels out;
  out.mode = g.mode();
  out.n = g.n();
  out.work_n = n_work;
  out.palette = g.palette();
  while (out.cap * out.cap < n_work) ++out.cap;
  out.cap = std::max<std::size_t>(out.cap, 1);

  // One BFS tree per component, rooted at its minimum id.
  GraphView full(work);
  std::vector<VertexId> root(n_work, kNoVertex);
  std::vector<EdgeId> parent_edge(n_work, kNoEdge);
  std::vector<VertexId> parent(n_work, kNoVertex);
  for (VertexId s = 0; s < n_work; ++s) {
    if (root[s] != kNoVertex) continue;
    BfsTree t = bfs_tree(full, s);
    for (VertexId x : t.order) {
      root[x] = s;
      parent[x] = t.parent[x];
      parent_edge[x] = t.parent_edge[x];
      out.depth = std::max(out.depth, t.depth[x]);
    }
  }
  std::vector<std::vector<ColorId>> path_colors(n_work);
  for (VertexId v = 0; v < n_work; ++v) {
    std::vector<EdgeId> path;
    for (VertexId x = v; parent[x] != kNoVertex; x = parent[x]) path.push_back(parent_edge[x]);
    path_colors[v] = edge_colors(work, path);
  }

  struct Pending {
    VertexId v;
    ColorId c;
    TruncatedBfsTree tree;
  };
  std::vector<Pending> trees;
  std::vector<std::vector<VertexId>> family;
  for (VertexId v = 0; v < g.n(); ++v)
    for (ColorId c : path_colors[v]) {
      trees.push_back({v, c, truncated_bfs(work, v, c, out.cap)});
      if (trees.back().tree.vertices.size() == out.cap) family.push_back(trees.back().tree.vertices);
    }
  out.full_trees = family.size();
  out.hitting = greedy_hitting_set(family, n_work);
  std::vector<char> in_u(n_work, 0);
  for (VertexId u : out.hitting.members) in_u[u] = 1;

  PairCids cids(work);
  out.vertex.resize(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    out.vertex[v].root = root[v];
    if (g.mode() == ColorMode::kVertex) out.vertex[v].own_color = g.vertex_color(v);
  }
  for (const Pending& p : trees) {
    TwoFaultEntry e;
    e.color = p.c;
    e.cid_without = cids.get(p.c, p.c)[p.v];
    for (ColorId d : edge_colors(work, p.tree.edges)) e.tree.emplace_back(d, cids.get(p.c, d)[p.v]);
    if (p.tree.vertices.size() == out.cap) {
      e.full = true;
      for (VertexId x : p.tree.vertices)
        if (in_u[x]) e.pivot = std::min(e.pivot, x);
      for (ColorId d : path_colors[e.pivot])
        e.pivot_map.emplace_back(d, cids.get(p.c, d)[e.pivot]);
    }
    out.vertex[p.v].entries.push_back(std::move(e));
  }

  out.color.resize(g.palette());
  for (ColorId c = 0; c < g.palette(); ++c) {
    out.color[c].color = c;
    for (VertexId u : out.hitting.members) {
      ColorCidMap map;
      for (ColorId d : path_colors[u]) map.emplace_back(d, cids.get(c, d)[u]);
      out.color[c].by_vertex.emplace_back(u, std::move(map));
    }
  }
  return out;
}

VertexId query_two_fault_cid(const TwoFaultVertexLabel& lv, const TwoFaultColorLabel& lc,
                             const TwoFaultColorLabel& ld) {
  if (lv.own_color != kNoColor && (lv.own_color == lc.color || lv.own_color == ld.color))
    throw RemovedVertexError("vertex is removed by the fault set");
  auto find_entry = [&](ColorId c) -> const TwoFaultEntry* {
    auto it = std::lower_bound(lv.entries.begin(), lv.entries.end(), c,
                               [](const TwoFaultEntry& e, ColorId x) { return e.color < x; });
    return it != lv.entries.end() && it->color == c ? &*it : nullptr;
  };
  const TwoFaultEntry* e = find_entry(lc.color);
  const TwoFaultColorLabel* other = &ld;
  if (e == nullptr) {
    e = find_entry(ld.color);
    other = &lc;
  }
  if (e == nullptr) return lv.root;
  const ColorId x = e->color;
  const ColorId y = other->color;
  if (const VertexId* hit = lookup(e->tree, y)) return *hit;
  if (!e->full) return e->cid_without;
  const VertexId u = e->pivot;
  if (lookup(e->pivot_map, x) != nullptr) {
    auto it = std::lower_bound(
        other->by_vertex.begin(), other->by_vertex.end(), u,
        [](const std::pair<VertexId, ColorCidMap>& p, VertexId key) { return p.first < key; });
    if (it == other->by_vertex.end() || it->first != u)
      throw GraphError("color label lacks the hitting-set vertex " + std::to_string(u));
    if (const VertexId* hit = lookup(it->second, x)) return *hit;
    throw GraphError("color label lacks an entry for color " + std::to_string(x));
  }
  if (const VertexId* hit = lookup(e->pivot_map, y)) return *hit;
  return lv.root;
}

bool query_two_fault(const TwoFaultVertexLabel& lu, const TwoFaultVertexLabel& lv,
                     const TwoFaultColorLabel& lc, const TwoFaultColorLabel& ld) {
  return query_two_fault_cid(lu, lc, ld) == query_two_fault_cid(lv, lc, ld);
}

std::vector<std::size_t> TwoFaultLabels::vertex_bits() const {
  const unsigned w = field_width(work_n);
  const unsigned wc = field_width(palette);
  std::vector<std::size_t> out;
  for (const auto& l : vertex) {
    std::size_t bits = w + w + (mode == ColorMode::kVertex ? wc : 0);
    for (const auto& e : l.entries) {
      bits += wc + w + map_bits(e.tree, w, wc) + 1;
      if (e.full) bits += w + map_bits(e.pivot_map, w, wc);
    }
    out.push_back(bits);
  }
  return out;
}

std::vector<std::size_t> TwoFaultLabels::color_bits() const {
  const unsigned w = field_width(work_n);
  const unsigned wc = field_width(palette);
  std::vector<std::size_t> out;
  for (const auto& l : color) {
    std::size_t bits = wc + w;
    for (const auto& [u, map] : l.by_vertex) bits += w + map_bits(map, w, wc);
    out.push_back(bits);
  }
  return out;
}

std::vector<std::size_t> TwoFaultLabels::vertex_entry_counts() const {
  std::vector<std::size_t> out;
  for (const auto& l : vertex) {
    std::size_t count = 0;
    for (const auto& e : l.entries) count += 1 + e.tree.size() + e.pivot_map.size();  // stored cids
    out.push_back(count);
  }
  return out;
}

std::vector<std::size_t> TwoFaultLabels::color_entry_counts() const {
  std::vector<std::size_t> out;
  for (const auto& l : color) {
    std::size_t count = 0;
    for (const auto& [u, map] : l.by_vertex) count += map.size();
    out.push_back(count);
  }
  return out;
}

}  // namespace cfl
