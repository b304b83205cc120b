#include "cfl/nca_oracle.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace cfl {

namespace {

std::vector<std::vector<VertexId>> children_of(const std::vector<VertexId>& parent) {
  std::vector<std::vector<VertexId>> kids(parent.size());
  for (VertexId v = 0; v < parent.size(); ++v)
    if (parent[v] != kNoVertex) kids[parent[v]].push_back(v);
  return kids;  // already in increasing id order
}

// Iterative DFS calling enter(v) and leave(v), roots and children by id.
template <class Enter, class Leave>
void dfs_forest(const std::vector<VertexId>& parent, Enter&& enter, Leave&& leave) {
  const auto kids = children_of(parent);
  std::vector<std::pair<VertexId, std::size_t>> stack;
  for (VertexId r = 0; r < parent.size(); ++r) {
    if (parent[r] != kNoVertex) continue;
    enter(r);
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < kids[v].size()) {
        VertexId child = kids[v][next++];
        enter(child);
        stack.emplace_back(child, 0);
      } else {
        leave(v);
        stack.pop_back();
      }
    }
  }
}

}  // namespace

NcaStructure build_nca(const std::vector<VertexId>& parent, const std::vector<ColorId>& colors,
                       std::size_t palette, std::vector<VertexId> payload) {
  const std::size_t n = parent.size();
  if (colors.size() != n) throw GraphError("color array size differs from forest size");
  NcaStructure s;
  s.parent = parent;
  s.color = colors;
  s.payload = std::move(payload);
  s.pre.assign(n, 0);
  s.post.assign(n, 0);
  s.by_color.resize(palette);
  std::vector<VertexId> top(palette, kNoVertex);
  std::vector<VertexId> above(n, kNoVertex);
  std::uint32_t clock = 0;
  dfs_forest(
      parent,
      [&](VertexId v) {
        s.pre[v] = clock++;
        ColorId c = colors[v];
        if (c == kNoColor) return;
        if (c >= palette) throw GraphError("forest color outside palette");
        above[v] = top[c];
        top[c] = v;
        s.by_color[c].push_back({s.pre[v], v, false, above[v]});
      },
      [&](VertexId v) {
        s.post[v] = clock++;
        ColorId c = colors[v];
        if (c == kNoColor) return;
        top[c] = above[v];
        s.by_color[c].push_back({s.post[v], v, true, above[v]});
      });
  return s;
}

namespace {

template <class Vec>
auto predecessor(const Vec& entries, std::uint32_t time) {
  auto it = std::upper_bound(entries.begin(), entries.end(), time,
                             [](std::uint32_t t, const auto& e) { return t < e.time; });
  return it == entries.begin() ? entries.end() : std::prev(it);
}

}  // namespace

VertexId nca_query(const NcaStructure& s, VertexId v, ColorId c) {
  if (c >= s.by_color.size()) return kNoVertex;
  const auto& entries = s.by_color[c];
  auto it = predecessor(entries, s.pre[v]);
  if (it == entries.end()) return kNoVertex;
  return it->is_post ? it->above : it->vertex;
}

OracleForest oracle_forest(const ColoredGraph& input) {
  const ColoredGraph reduced =
      input.mode() == ColorMode::kVertex ? reduce_between_modes(input) : ColoredGraph{};
  const ColoredGraph& g = input.mode() == ColorMode::kVertex ? reduced : input;
  const std::size_t n = g.n();

  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  for (EdgeId e : spanning_forest(GraphView(g))) {
    adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
    adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
  }
  OracleForest f;
  f.parent.assign(n, kNoVertex);
  f.color.assign(n, kNoColor);
  f.payload.assign(n, kNoVertex);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack;
  for (VertexId r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    f.payload[r] = r;
    stack.push_back(r);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (auto [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        f.parent[y] = x;
        f.color[y] = g.edge(e).color;
        stack.push_back(y);
      }
    }
  }

  std::vector<std::vector<VertexId>> by_color(g.palette());
  for (VertexId v = 0; v < n; ++v)
    if (f.color[v] != kNoColor) by_color[f.color[v]].push_back(v);
  for (ColorId d = 0; d < g.palette(); ++d) {
    if (by_color[d].empty()) continue;
    const auto ids = component_ids(remove_colors(g, FaultSet{d}));
    for (VertexId v : by_color[d]) f.payload[v] = ids[v];
  }
  return f;
}

namespace {

OneFaultOracle assemble(ColorMode mode, std::size_t n, std::size_t palette,
                        std::vector<ColorId> own_color, OracleForest f) {
  const NcaStructure s = build_nca(f.parent, f.color, palette, f.payload);
  OneFaultOracle o;
  o.mode = mode;
  o.n = n;
  o.forest_n = f.parent.size();
  o.palette = palette;
  o.own_color = std::move(own_color);
  o.pre.assign(s.pre.begin(), s.pre.begin() + static_cast<std::ptrdiff_t>(n));
  o.root.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    VertexId r = v;
    while (f.parent[r] != kNoVertex) r = f.parent[r];
    o.root[v] = r;
  }
  o.by_color.resize(palette);
  for (ColorId c = 0; c < palette; ++c)
    for (const NcaEntry& e : s.by_color[c]) {
      VertexId answer = e.is_post ? (e.above == kNoVertex ? kNoVertex : f.payload[e.above])
                                  : f.payload[e.vertex];
      o.by_color[c].push_back({e.time, e.is_post, answer});
    }
  o.forest = std::move(f);
  return o;
}

}  // namespace

OneFaultOracle build_oracle(const ColoredGraph& g) {
  return assemble(g.mode(), g.n(), g.palette(),
                  g.mode() == ColorMode::kVertex ? g.vertex_colors() : std::vector<ColorId>{},
                  oracle_forest(g));
}

VertexId OneFaultOracle::cid(VertexId v, ColorId c) const {
  if (v >= n) throw GraphError("vertex " + std::to_string(v) + " out of range");
  if (c >= palette) throw InvalidFaultSet("color " + std::to_string(c) + " outside palette");
  if (mode == ColorMode::kVertex && own_color[v] == c)
    throw RemovedVertexError("vertex " + std::to_string(v) + " is removed by color " +
                             std::to_string(c));
  const auto& entries = by_color[c];
  auto it = predecessor(entries, pre[v]);
  if (it == entries.end() || it->answer == kNoVertex) return root[v];
  return it->answer;
}

bool OneFaultOracle::connected(VertexId u, VertexId v, ColorId c) const {
  return cid(u, c) == cid(v, c);
}

// Only the forest is written: per vertex the parent (itself at a root), and at
// non-roots the parent-edge color and the payload. Timestamps, entry lists and
// roots are recomputed on load.
void encode(BitWriter& out, const OneFaultOracle& o) {
  const unsigned w = field_width(o.forest_n);
  const unsigned wc = field_width(o.palette);
  out.put(kOracleMagic, 32);
  out.put(kOracleVersion, 8);
  out.put_bool(o.mode == ColorMode::kVertex);
  out.put_gamma(o.n);
  out.put_gamma(o.forest_n - o.n);
  out.put_gamma(o.palette);
  if (o.mode == ColorMode::kVertex)
    for (VertexId v = 0; v < o.n; ++v) out.put(o.own_color[v], wc);
  const OracleForest& f = o.forest;
  for (VertexId v = 0; v < o.forest_n; ++v) {
    if (f.parent[v] == kNoVertex) {
      out.put(v, w);
      continue;
    }
    out.put(f.parent[v], w);
    out.put(f.color[v], wc);
    out.put(f.payload[v], w);
  }
}

OneFaultOracle decode_oracle(BitReader& in) {
  if (in.get(32) != kOracleMagic) throw DecodeError("not an oracle file");
  if (auto version = in.get(8); version != kOracleVersion)
    throw DecodeError("unsupported oracle version " + std::to_string(version));
  const ColorMode mode = in.get_bool() ? ColorMode::kVertex : ColorMode::kEdge;
  const std::size_t n = in.get_gamma();
  const std::size_t forest_n = n + in.get_gamma();
  const std::size_t palette = in.get_gamma();
  if (forest_n > (std::size_t{1} << 28) || palette > (std::size_t{1} << 28)) throw DecodeError("oracle too large");
  const unsigned w = field_width(forest_n);
  const unsigned wc = field_width(palette);
  std::vector<ColorId> own;
  if (mode == ColorMode::kVertex)
    for (VertexId v = 0; v < n; ++v) {
      own.push_back(static_cast<ColorId>(in.get(wc)));
      if (own.back() >= palette) throw DecodeError("vertex color outside palette");
    }
  OracleForest f;
  f.parent.assign(forest_n, kNoVertex);
  f.color.assign(forest_n, kNoColor);
  f.payload.assign(forest_n, kNoVertex);
  for (VertexId v = 0; v < forest_n; ++v) {
    const auto p = static_cast<VertexId>(in.get(w));
    if (p >= forest_n) throw DecodeError("parent out of range");
    if (p == v) {
      f.payload[v] = v;
      continue;
    }
    f.parent[v] = p;
    f.color[v] = static_cast<ColorId>(in.get(wc));
    f.payload[v] = static_cast<VertexId>(in.get(w));
    if (f.color[v] >= palette || f.payload[v] >= forest_n) throw DecodeError("corrupt forest entry");
  }
  // A parent cycle would hang the rebuild.
  std::vector<char> state(forest_n, 0);
  for (VertexId v = 0; v < forest_n; ++v) {
    std::vector<VertexId> chain;
    VertexId x = v;
    while (x != kNoVertex && state[x] == 0) {
      state[x] = 1;
      chain.push_back(x);
      x = f.parent[x];
    }
    if (x != kNoVertex && state[x] == 1) throw DecodeError("parent pointers form a cycle");
    for (VertexId y : chain) state[y] = 2;
  }
  return assemble(mode, n, palette, std::move(own), std::move(f));
}

std::size_t encoded_bits(const OneFaultOracle& o) {
  BitWriter w;
  encode(w, o);
  return w.size();
}

void save_oracle(const OneFaultOracle& oracle, const std::string& path) {
  BitWriter w;
  encode(w, oracle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(w.bytes().data()),
            static_cast<std::streamsize>(w.bytes().size()));
}

OneFaultOracle load_oracle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  const std::size_t bits = bytes.size() * 8;
  BitReader reader(std::move(bytes), bits);
  return decode_oracle(reader);
}

NcaLabels label_nca(const std::vector<VertexId>& parent, const std::vector<ColorId>& colors,
                    std::size_t palette) {
  const std::size_t n = parent.size();
  NcaLabels out;
  out.n = n;
  out.palette = palette;
  std::vector<std::size_t> volume(palette, 0);
  for (ColorId c : colors)
    if (c != kNoColor) ++volume[c];
  std::vector<std::uint32_t> rank(palette, 0);
  for (ColorId c = 0; c < palette; ++c)
    if (volume[c] * volume[c] >= n && volume[c] > 0) {
      rank[c] = static_cast<std::uint32_t>(out.high_colors.size());
      out.high_colors.push_back(c);
    }
  const std::size_t h = out.high_colors.size();
  std::vector<char> is_high(palette, 0);
  for (ColorId c : out.high_colors) is_high[c] = 1;

  out.vertex.resize(n);
  out.color.resize(palette);
  for (ColorId c = 0; c < palette; ++c) {
    out.color[c].high = is_high[c];
    out.color[c].rank = is_high[c] ? rank[c] : 0;
  }
  std::vector<VertexId> top(palette, kNoVertex);
  std::vector<VertexId> saved(n, kNoVertex);
  std::vector<std::size_t> slot(n, 0);
  std::uint32_t clock = 0;
  dfs_forest(
      parent,
      [&](VertexId v) {
        out.vertex[v].pre = clock++;
        ColorId c = colors[v];
        if (c != kNoColor) {
          saved[v] = top[c];
          top[c] = v;
          if (!is_high[c]) {
            slot[v] = out.color[c].intervals.size();
            out.color[c].intervals.push_back({out.vertex[v].pre, 0, v});
          }
        }
        out.vertex[v].high.resize(h);
        for (std::size_t i = 0; i < h; ++i) out.vertex[v].high[i] = top[out.high_colors[i]];
      },
      [&](VertexId v) {
        ColorId c = colors[v];
        if (c == kNoColor) return;
        top[c] = saved[v];
        if (!is_high[c]) out.color[c].intervals[slot[v]].end = clock - 1;
      });
  return out;
}

VertexId query_nca_labels(const NcaVertexLabel& lv, const NcaColorLabel& lc) {
  if (lc.high) return lc.rank < lv.high.size() ? lv.high[lc.rank] : kNoVertex;
  const auto& iv = lc.intervals;
  auto it = std::upper_bound(iv.begin(), iv.end(), lv.pre,
                             [](std::uint32_t p, const NcaInterval& x) { return p < x.pre; });
  // Intervals before `it` that contain pre(v) form a nested chain; the last one
  // is the nearest ancestor.
  while (it != iv.begin()) {
    --it;
    if (it->end >= lv.pre) return it->vertex;
  }
  return kNoVertex;
}

void encode(BitWriter& out, const NcaVertexLabel& label, unsigned id_bits) {
  out.put(label.pre, id_bits);
  for (VertexId a : label.high) {
    out.put_bool(a != kNoVertex);
    if (a != kNoVertex) out.put(a, id_bits);
  }
}

void encode(BitWriter& out, const NcaColorLabel& label, unsigned id_bits, unsigned rank_bits) {
  out.put_bool(label.high);
  if (label.high) {
    out.put(label.rank, rank_bits);
    return;
  }
  for (const NcaInterval& x : label.intervals) {
    out.put(x.pre, id_bits);
    out.put(x.end, id_bits);
    out.put(x.vertex, id_bits);
  }
}

NcaVertexLabel decode_nca_vertex_label(BitReader& in, unsigned id_bits) {
  NcaVertexLabel label;
  label.pre = static_cast<std::uint32_t>(in.get(id_bits));
  while (in.remaining() > 0)
    label.high.push_back(in.get_bool() ? static_cast<VertexId>(in.get(id_bits)) : kNoVertex);
  return label;
}

NcaColorLabel decode_nca_color_label(BitReader& in, unsigned id_bits, unsigned rank_bits) {
  NcaColorLabel label;
  label.high = in.get_bool();
  if (label.high) {
    label.rank = static_cast<std::uint32_t>(in.get(rank_bits));
    return label;
  }
  if (in.remaining() % (3 * id_bits) != 0) throw DecodeError("truncated interval list");
  while (in.remaining() > 0) {
    NcaInterval x{};
    x.pre = static_cast<std::uint32_t>(in.get(id_bits));
    x.end = static_cast<std::uint32_t>(in.get(id_bits));
    x.vertex = static_cast<VertexId>(in.get(id_bits));
    label.intervals.push_back(x);
  }
  return label;
}

std::vector<std::size_t> NcaLabels::vertex_bits() const {
  std::vector<std::size_t> out;
  for (const auto& l : vertex) {
    std::size_t bits = id_bits();
    for (VertexId a : l.high) bits += 1 + (a == kNoVertex ? 0 : id_bits());
    out.push_back(bits);
  }
  return out;
}

std::vector<std::size_t> NcaLabels::color_bits() const {
  std::vector<std::size_t> out;
  for (const auto& l : color)
    out.push_back(1 + (l.high ? rank_bits() : l.intervals.size() * 3 * id_bits()));
  return out;
}

}  // namespace cfl
