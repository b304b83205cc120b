#include "cfl/routing.hpp"

#include <algorithm>
#include <deque>

#include "cfl/bits.hpp"
#include "cfl/disjoint_sets.hpp"

namespace cfl {

PortedNetwork::PortedNetwork(const ColoredGraph& g) : ports_(g.n()) {
  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& edge = g.edge(e);
    ports_[edge.u].emplace_back(e, edge.v);
    if (!edge.is_loop()) ports_[edge.v].emplace_back(e, edge.u);
  }
}

Port PortedNetwork::port_of(VertexId v, EdgeId e) const {
  const auto& list = ports_[v];
  auto it = std::lower_bound(list.begin(), list.end(), e,
                             [](const std::pair<EdgeId, VertexId>& p, EdgeId x) { return p.first < x; });
  if (it == list.end() || it->first != e)
    throw RoutingBug("edge " + std::to_string(e) + " is not incident to " + std::to_string(v));
  return static_cast<Port>(it - list.begin());
}

VertexId PortedNetwork::follow(VertexId v, Port p) const {
  if (p >= ports_[v].size())
    throw RoutingBug("port " + std::to_string(p) + " does not exist at " + std::to_string(v));
  return ports_[v][p].second;
}

unsigned PortedNetwork::port_bits() const {
  std::size_t max_degree = 1;
  for (const auto& list : ports_) max_degree = std::max(max_degree, list.size());
  return field_width(max_degree);
}

TreeStep tree_next(const TreeTable& table, std::uint32_t target) {
  if (target == table.pre) return {true, kNoPort};
  if (target < table.pre || target > table.end) {
    if (table.parent_port == kNoPort) throw RoutingBug("target is outside this tree");
    return {false, table.parent_port};
  }
  auto it = std::upper_bound(
      table.children.begin(), table.children.end(), target,
      [](std::uint32_t x, const std::pair<std::uint32_t, Port>& child) { return x < child.first; });
  if (it == table.children.begin()) throw RoutingBug("corrupt child intervals");
  return {false, std::prev(it)->second};
}

TreeRouting::TreeRouting(const PortedNetwork& net, const std::vector<VertexId>& parent,
                         const std::vector<EdgeId>& parent_edge) {
  const std::size_t n = parent.size();
  tables_.resize(n);
  by_label_.resize(n);
  std::vector<std::vector<VertexId>> kids(n);
  for (VertexId v = 0; v < n; ++v)
    if (parent[v] != kNoVertex) kids[parent[v]].push_back(v);
  std::uint32_t clock = 0;
  std::vector<std::pair<VertexId, std::size_t>> stack;
  for (VertexId r = 0; r < n; ++r) {
    if (parent[r] != kNoVertex) continue;
    tables_[r].pre = clock;
    by_label_[clock++] = r;
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto [v, i] = stack.back();
      if (i < kids[v].size()) {
        ++stack.back().second;
        VertexId child = kids[v][i];
        tables_[child].pre = clock;
        by_label_[clock++] = child;
        stack.emplace_back(child, 0);
      } else {
        tables_[v].end = clock - 1;
        stack.pop_back();
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (parent[v] == kNoVertex) continue;
    tables_[v].parent_port = net.port_of(v, parent_edge[v]);
    tables_[parent[v]].children.emplace_back(tables_[v].pre, net.port_of(parent[v], parent_edge[v]));
  }
  for (auto& t : tables_) std::sort(t.children.begin(), t.children.end());
}

namespace {

// Roots every component of the edge set at its minimum vertex.
void root_forest(const ColoredGraph& g, const std::vector<EdgeId>& edges,
                 std::vector<VertexId>& parent, std::vector<EdgeId>& parent_edge) {
  const std::size_t n = g.n();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  for (EdgeId e : edges) {
    adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
    adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
  }
  parent.assign(n, kNoVertex);
  parent_edge.assign(n, kNoEdge);
  std::vector<char> seen(n, 0);
  std::deque<VertexId> queue;
  for (VertexId r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    queue.push_back(r);
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      for (auto [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        parent_edge[y] = e;
        queue.push_back(y);
      }
    }
  }
}

template <class Map, class Key>
auto find_key(const Map& map, const Key& key) -> decltype(&map.begin()->second) {
  auto it = std::lower_bound(map.begin(), map.end(), key,
                             [](const auto& p, const Key& k) { return p.first < k; });
  return it != map.end() && it->first == key ? &it->second : nullptr;
}

}  // namespace

RoutingScheme::RoutingScheme(const ColoredGraph& g) : g_(g), net_(g) {
  if (g.mode() != ColorMode::kEdge) throw GraphError("routing needs an edge-colored graph");
  const std::size_t n = g.n();
  single_ = label_single_fault(g);
  anchors_ = single_.ruling.all();
  k_ = single_.ruling.k;
  const AnchorForest forest = build_anchor_forest(g, single_.ruling);

  // T: the union of the paths P(v), joined by the smallest-id edges.
  DisjointSets joined(n);
  std::vector<EdgeId> tree_edges;
  std::vector<char> in_tree(g.m(), 0);
  for (VertexId v = 0; v < n; ++v)
    if (forest.parent[v] != kNoVertex) {
      joined.unite(v, forest.parent[v]);
      tree_edges.push_back(forest.parent_edge[v]);
      in_tree[forest.parent_edge[v]] = 1;
    }
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!in_tree[e] && joined.unite(g.edge(e).u, g.edge(e).v)) {
      tree_edges.push_back(e);
      in_tree[e] = 1;
    }
  root_forest(g, tree_edges, parent_, parent_edge_);
  tree_ = TreeRouting(net_, parent_, parent_edge_);

  path_colors_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    auto& colors = path_colors_[v];
    for (VertexId x = v; forest.parent[x] != kNoVertex; x = forest.parent[x])
      colors.push_back(g.edge(forest.parent_edge[x]).color);
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  }

  std::vector<char> is_anchor(n, 0);
  for (VertexId a : anchors_) is_anchor[a] = 1;

  // Recovery trees for the colors used by T.
  recovery_.resize(g.palette());
  for (EdgeId e : tree_edges) {
    const ColorId c = g.edge(e).color;
    if (recovery_[c]) continue;
    RecoveryTree rt;
    rt.color = c;
    rt.fragment.assign(n, kNoVertex);
    for (std::uint32_t label = 0; label < n; ++label) {
      VertexId v = tree_.vertex_of(label);
      bool top = parent_[v] == kNoVertex || g.edge(parent_edge_[v]).color == c;
      rt.fragment[v] = top ? v : rt.fragment[parent_[v]];
    }
    rt.recovery.assign(g.m(), 0);
    DisjointSets frags(n);
    for (EdgeId f = 0; f < g.m(); ++f) {
      const Edge& edge = g.edge(f);
      if (edge.color == c || in_tree[f] || edge.is_loop()) continue;
      if (frags.unite(rt.fragment[edge.u], rt.fragment[edge.v])) {
        rt.recovery[f] = 1;
        rt.recovery_edges.push_back(f);
      }
    }
    rt.a_fragment.assign(n, 0);
    for (VertexId a : anchors_) rt.a_fragment[rt.fragment[a]] = 1;
    std::vector<EdgeId> edges = rt.recovery_edges;
    for (EdgeId f : tree_edges)
      if (g.edge(f).color != c) edges.push_back(f);
    root_forest(g, edges, rt.parent, rt.parent_edge);
    rt.routing = TreeRouting(net_, rt.parent, rt.parent_edge);
    recovery_[c] = std::move(rt);
  }

  std::vector<VertexId> tree_root(n);
  for (std::uint32_t label = 0; label < n; ++label) {
    VertexId v = tree_.vertex_of(label);
    tree_root[v] = parent_[v] == kNoVertex ? v : tree_root[parent_[v]];
  }

  tables_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    tables_[v].tree = tree_.table(v);
    if (parent_[v] != kNoVertex) tables_[v].parent_color = g.edge(parent_edge_[v]).color;
    for (ColorId c : path_colors_[v])
      tables_[v].recovery.emplace_back(c, recovery_[c]->routing.table(v));
  }
  color_labels_.resize(g.palette());
  for (ColorId c = 0; c < g.palette(); ++c) color_labels_[c].color = c;

  // FirstRecEdge(v, a, c(v)) at fragment roots and FirstRecEdge(r, a, c) in
  // color labels, one traversal of T_c per anchor.
  for (ColorId c = 0; c < g.palette(); ++c) {
    if (!recovery_[c]) {
      for (VertexId a : anchors_) color_labels_[c].blocks.emplace_back(a, FirstRecEdgeBlock{});
      continue;
    }
    const RecoveryTree& rt = *recovery_[c];
    for (VertexId a : anchors_) {
      const auto first = first_edges_toward(a, rt);
      for (VertexId v = 0; v < n; ++v)
        if (tables_[v].parent_color == c)
          tables_[v].blocks.emplace_back(a, block_for(first, v, a, rt));
      color_labels_[c].blocks.emplace_back(a, block_for(first, tree_root[a], a, rt));
    }
  }

  vertex_labels_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    RoutingVertexLabel& label = vertex_labels_[v];
    label.tree_label = tree_.label(v);
    label.anchor = forest.anchor[v];
    for (ColorId c : path_colors_[v]) {
      const RecoveryTree& rt = *recovery_[c];
      RoutingVertexColorEntry entry;
      entry.color = c;
      entry.recovery_label = rt.routing.label(v);
      // Nearest A-fragment in the fragment graph of T_c, ties by fragment root.
      std::vector<std::vector<VertexId>> frag_adj(n);
      for (EdgeId f : rt.recovery_edges) {
        frag_adj[rt.fragment[g.edge(f).u]].push_back(rt.fragment[g.edge(f).v]);
        frag_adj[rt.fragment[g.edge(f).v]].push_back(rt.fragment[g.edge(f).u]);
      }
      std::vector<char> seen(n, 0);
      std::vector<VertexId> layer{rt.fragment[v]};
      seen[rt.fragment[v]] = 1;
      VertexId best = kNoVertex;
      while (!layer.empty() && best == kNoVertex) {
        for (VertexId f : layer)
          if (rt.a_fragment[f]) best = std::min(best, f);
        std::vector<VertexId> next;
        for (VertexId f : layer)
          for (VertexId h : frag_adj[f])
            if (!seen[h]) {
              seen[h] = 1;
              next.push_back(h);
            }
        layer = std::move(next);
      }
      if (best != kNoVertex) {
        for (VertexId a : anchors_)
          if (rt.fragment[a] == best) {
            entry.nearest_a = a;
            break;
          }
        entry.block = block_for(first_edges_toward(v, rt), entry.nearest_a, v, rt);
      }
      label.per_color.push_back(entry);
    }
  }
}

const RecoveryTree* RoutingScheme::recovery_tree(ColorId c) const {
  return c < recovery_.size() && recovery_[c] ? &*recovery_[c] : nullptr;
}

std::vector<std::pair<EdgeId, VertexId>> RoutingScheme::first_edges_toward(
    VertexId z, const RecoveryTree& rt) const {
  const std::size_t n = g_.n();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  for (VertexId v = 0; v < n; ++v)
    if (rt.parent[v] != kNoVertex) {
      adj[v].emplace_back(rt.parent[v], rt.parent_edge[v]);
      adj[rt.parent[v]].emplace_back(v, rt.parent_edge[v]);
    }
  std::vector<std::pair<EdgeId, VertexId>> first(n, {kNoEdge, kNoVertex});
  std::vector<char> seen(n, 0);
  std::deque<VertexId> queue{z};
  seen[z] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (auto [y, e] : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      // y's path toward z starts with the edge y -> x.
      first[y] = rt.recovery[e] ? std::make_pair(e, y) : first[x];
      queue.push_back(y);
    }
  }
  return first;
}

FirstRecEdgeBlock RoutingScheme::block_for(const std::vector<std::pair<EdgeId, VertexId>>& first,
                                           VertexId from, VertexId target,
                                           const RecoveryTree& rt) const {
  FirstRecEdgeBlock block;
  auto [e, x] = first[from];
  if (e == kNoEdge) return block;
  const VertexId y = g_.edge(e).other(x);
  block.defined = true;
  block.port = net_.port_of(x, e);
  block.tail_label = tree_.label(x);
  block.reaches_target = rt.fragment[y] == rt.fragment[target];
  return block;
}

std::pair<EdgeId, VertexId> RoutingScheme::first_recovery_edge(VertexId u, VertexId v,
                                                               ColorId c) const {
  const RecoveryTree* rt = recovery_tree(c);
  if (rt == nullptr) return {kNoEdge, kNoVertex};
  return first_edges_toward(v, *rt)[u];
}

MessageHeader RoutingScheme::initial_header(const RoutingVertexLabel& lt,
                                            const RoutingColorLabel& lc) const {
  MessageHeader h;
  h.permanent.color = lc.color;
  h.permanent.target_tree_label = lt.tree_label;
  auto entry = std::lower_bound(
      lt.per_color.begin(), lt.per_color.end(), lc.color,
      [](const RoutingVertexColorEntry& e, ColorId c) { return e.color < c; });
  if (entry != lt.per_color.end() && entry->color == lc.color) {
    h.permanent.has_target_part = true;
    h.permanent.target_recovery_label = entry->recovery_label;
    if (entry->nearest_a == kNoVertex) {
      // Every vertex of this component has c on its anchor path, so every
      // one of them holds a table for T_c.
      h.permanent.direct = true;
      h.up = UpState::kNull;
      return h;
    }
    h.permanent.a_star = entry->nearest_a;
    h.permanent.toward_target = entry->block;
  } else {
    h.permanent.a_star = lt.anchor;
  }
  const FirstRecEdgeBlock* from_root = find_key(lc.blocks, h.permanent.a_star);
  if (from_root == nullptr) throw RoutingBug("color label lacks the chosen anchor");
  h.permanent.from_root = *from_root;
  h.up = UpState::kTrue;
  h.next = {};
  return h;
}

namespace {

// One routing decision at a vertex from its table and the header alone.
Port decide(const RoutingTable& table, MessageHeader& h) {
  const MessageHeader::Permanent& p = h.permanent;
  if (p.direct) {
    const TreeTable* rt = find_key(table.recovery, p.color);
    if (rt == nullptr) throw RoutingBug("recovery-tree table missing on a direct route");
    return tree_next(*rt, p.target_recovery_label).port;
  }
  if (h.up == UpState::kTrue) {
    if (table.tree.parent_port != kNoPort && table.parent_color != p.color)
      return table.tree.parent_port;
    FirstRecEdgeBlock block;
    if (table.tree.parent_port == kNoPort) {
      block = p.from_root;
    } else {
      const FirstRecEdgeBlock* stored = find_key(table.blocks, p.a_star);
      if (stored == nullptr) throw RoutingBug("fragment root lacks a block for the anchor");
      block = *stored;
    }
    if (block.defined) {
      h.next = block;
      h.up = UpState::kFalse;
    } else {
      // Already in the anchor's fragment.
      h.next = {};
      h.up = UpState::kNull;
    }
  }
  if (h.up == UpState::kFalse) {
    if (table.tree.pre != h.next.tail_label) return tree_next(table.tree, h.next.tail_label).port;
    const Port port = h.next.port;
    h.up = h.next.reaches_target ? UpState::kNull : UpState::kTrue;
    if (h.up == UpState::kNull) h.next = {};
    return port;
  }
  if (!p.has_target_part || !p.toward_target.defined)
    return tree_next(table.tree, p.target_tree_label).port;
  if (!h.next.defined) {
    if (table.tree.pre != p.toward_target.tail_label)
      return tree_next(table.tree, p.toward_target.tail_label).port;
    h.next = p.toward_target;  // marks the crossing into the recovery-tree leg
    return p.toward_target.port;
  }
  const TreeTable* rt = find_key(table.recovery, p.color);
  if (rt == nullptr) throw RoutingBug("recovery-tree table missing on the final leg");
  return tree_next(*rt, p.target_recovery_label).port;
}

}  // namespace

void RoutingScheme::check_invariant(VertexId v, const MessageHeader& h, RouteTrace& trace) const {
  ++trace.invariant_checks;
  if (h.up != UpState::kFalse) return;
  const RecoveryTree* rt = recovery_tree(h.permanent.color);
  if (rt == nullptr || rt->fragment[v] == rt->fragment[h.permanent.a_star]) return;
  const auto [edge, tail] = first_recovery_edge(v, h.permanent.a_star, h.permanent.color);
  const VertexId x = tree_.vertex_of(h.next.tail_label);
  if (!h.next.defined || x != tail || net_.edge_at(x, h.next.port) != edge)
    throw RoutingBug("invariant (I) violated at vertex " + std::to_string(v));
}

RouteTrace RoutingScheme::route(VertexId s, VertexId t, ColorId c) const {
  const std::size_t n = g_.n();
  if (s >= n || t >= n) throw GraphError("route endpoint out of range");
  if (c >= g_.palette()) throw InvalidFaultSet("color outside palette");
  RouteTrace trace;
  if (s == t) return trace;
  if (!single_fault_connected(single_.vertex[s], single_.vertex[t], single_.color[c]))
    throw Unreachable("vertices " + std::to_string(s) + " and " + std::to_string(t) +
                      " are disconnected without color " + std::to_string(c));
  MessageHeader header = initial_header(vertex_labels_[t], color_labels_[c]);
  VertexId v = s;
  const std::size_t budget = n * n;
  while (true) {
    check_invariant(v, header, trace);
    if (tables_[v].tree.pre == header.permanent.target_tree_label) return trace;
    if (trace.hops.size() >= budget) throw RoutingBug("hop budget exceeded");
    const Port port = decide(tables_[v], header);
    const EdgeId e = net_.edge_at(v, port);
    const VertexId w = net_.follow(v, port);
    if (g_.edge(e).color == c) throw RoutingBug("route used an edge of the avoided color");
    trace.hops.push_back({v, port, w, e, g_.edge(e).color});
    v = w;
  }
}

RoutingSizes RoutingScheme::sizes() const {
  const std::size_t n = g_.n();
  const unsigned w = field_width(n);
  const unsigned wp = net_.port_bits();
  const unsigned wc = field_width(g_.palette());
  auto block_bits = [&](const FirstRecEdgeBlock& b) -> std::size_t {
    return 1 + (b.defined ? wp + w + 1 : 0);
  };
  auto tree_bits = [&](const TreeTable& t) -> std::size_t {
    return 1 + (t.parent_port != kNoPort ? wp : 0) + 2 * w;
  };
  auto child_bits = [&](const TreeTable& t) -> std::size_t {
    return t.children.size() * (w + wp);
  };
  RoutingSizes out;
  for (VertexId v = 0; v < n; ++v) {
    const RoutingTable& t = tables_[v];
    std::size_t bits = tree_bits(t.tree) + (t.tree.parent_port != kNoPort ? wc : 0) + w;
    for (const auto& [a, b] : t.blocks) bits += w + block_bits(b);
    bits += w;
    std::size_t children = child_bits(t.tree);
    for (const auto& [c, rt] : t.recovery) {
      bits += wc + tree_bits(rt);
      children += child_bits(rt);
    }
    out.table_bits.push_back(bits);
    out.child_bits.push_back(children);

    const RoutingVertexLabel& l = vertex_labels_[v];
    std::size_t lbits = w + w + w;
    for (const auto& e : l.per_color)
      lbits += wc + 1 + (e.nearest_a != kNoVertex ? w : 0) + block_bits(e.block) + w;
    out.vertex_label_bits.push_back(lbits);
  }
  for (const auto& l : color_labels_) {
    std::size_t bits = wc + w;
    for (const auto& [a, b] : l.blocks) bits += w + block_bits(b);
    out.color_label_bits.push_back(bits);
  }
  const std::size_t full_block = 1 + wp + w + 1;
  out.header_permanent_bits = wc + w + full_block + w + 1 + full_block + w + 1;
  out.header_mutable_bits = 2 + full_block;
  return out;
}

}  // namespace cfl
