#include "cfl/encoders.hpp"

#include <algorithm>

#include "cfl/single_fault.hpp"

namespace cfl {

std::vector<bool> decode(const EncodedInstance& inst, const ConnectivityFn& connected) {
  std::vector<bool> out;
  out.reserve(inst.decoder.size());
  for (const DecodeQuery& q : inst.decoder) out.push_back(!connected(q.u, q.v, q.faults));
  return out;
}

EncodedInstance encode_balls(const ColoredGraph& topology, const std::vector<VertexId>& centers,
                             const std::vector<bool>& x) {
  const std::size_t r = centers.size();
  if (r == 0) throw EncodingError("need at least one ball");
  if (x.size() != r * r)
    throw EncodingError("expected " + std::to_string(r * r) + " bits, got " +
                        std::to_string(x.size()));
  const auto dist = hop_distances(topology);
  const std::size_t n = topology.n();
  std::vector<std::size_t> owner(n, r);
  std::vector<VertexId> far(r, kNoVertex);
  for (std::size_t k = 0; k < r; ++k) {
    if (centers[k] >= n) throw EncodingError("center out of range");
    for (VertexId v = 0; v < n; ++v) {
      const auto d = dist[centers[k]][v];
      if (d > r) continue;
      if (owner[v] != r) throw EncodingError("balls are not disjoint");
      owner[v] = k;
      if (d == r && far[k] == kNoVertex) far[k] = v;
    }
    if (far[k] == kNoVertex) throw EncodingError("ball around " + std::to_string(centers[k]) + " is not proper");
  }
  const ColorId bottom = static_cast<ColorId>(r);
  std::vector<Edge> edges;
  for (const Edge& e : topology.edges()) {
    ColorId color = bottom;
    const std::size_t k = owner[e.u];
    if (k != r && owner[e.v] == k) {
      const auto du = dist[centers[k]][e.u];
      const auto dv = dist[centers[k]][e.v];
      const auto l = std::max(du, dv);
      if (du != dv && l >= 1 && x[k * r + (l - 1)]) color = static_cast<ColorId>(l - 1);
    }
    edges.push_back({e.u, e.v, color});
  }
  EncodedInstance out;
  out.graph = ColoredGraph::edge_colored(n, r + 1, std::move(edges));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 1; l <= r; ++l)
      out.decoder.push_back({centers[k], far[k], FaultSet{static_cast<ColorId>(l - 1)}});
  return out;
}

EncodedInstance encode_balls(const ColoredGraph& topology, const std::vector<bool>& x) {
  const BallPacking bp = ball_packing_exact(topology);
  return encode_balls(topology, bp.centers, x);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<ColorId> colex_subset(std::size_t l, std::size_t f) {
  std::vector<ColorId> out(f);
  for (std::size_t i = f; i >= 1; --i) {
    std::size_t c = i - 1;
    while (binomial(c + 1, i) <= l) ++c;
    out[i - 1] = static_cast<ColorId>(c);
    l -= binomial(c, i);
  }
  return out;
}

EncodedInstance encode_spider(std::size_t f, std::size_t q, std::size_t arms,
                              const std::vector<bool>& x, SpiderOptions options) {
  if (f == 0 || q < f) throw EncodingError("need 1 <= f <= q");
  const std::size_t steps = binomial(q, f);
  if (x.size() != arms * steps)
    throw EncodingError("expected " + std::to_string(arms * steps) + " bits, got " +
                        std::to_string(x.size()));
  const std::size_t n = 1 + arms * steps;
  auto vertex = [&](std::size_t k, std::size_t j) -> VertexId {
    return j == 0 ? 0 : static_cast<VertexId>(1 + k * steps + (j - 1));
  };
  const ColorId bottom = static_cast<ColorId>(q);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < arms; ++k)
    for (std::size_t l = 0; l < steps; ++l) {
      const auto subset = colex_subset(l, f);
      for (std::size_t i = 0; i < f; ++i)
        edges.push_back({vertex(k, l), vertex(k, l + 1), x[k * steps + l] ? subset[i] : bottom});
    }
  ColoredGraph g = ColoredGraph::edge_colored(n, q + 1, edges);
  if (options.vertex_colored) {
    g = reduce_between_modes(g);
  } else if (options.subdivide) {
    std::vector<Edge> halves;
    for (EdgeId e = 0; e < edges.size(); ++e) {
      const VertexId mid = static_cast<VertexId>(n + e);
      halves.push_back({edges[e].u, mid, edges[e].color});
      halves.push_back({mid, edges[e].v, edges[e].color});
    }
    g = ColoredGraph::edge_colored(n + edges.size(), q + 1, std::move(halves));
  }
  EncodedInstance out;
  out.graph = std::move(g);
  for (std::size_t k = 0; k < arms; ++k)
    for (std::size_t l = 0; l < steps; ++l) {
      const auto subset = colex_subset(l, f);
      out.decoder.push_back({0, vertex(k, steps), FaultSet(subset)});
    }
  return out;
}

}  // namespace cfl
