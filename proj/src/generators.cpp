#include "cfl/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace cfl {

Coloring parse_coloring(const std::string& name) {
  if (name == "uniform") return Coloring::kUniform;
  if (name == "unique") return Coloring::kPerEdgeUnique;
  if (name == "blocks") return Coloring::kBlocks;
  throw std::invalid_argument("unknown coloring '" + name + "' (uniform|unique|blocks)");
}

const char* to_string(Coloring coloring) {
  switch (coloring) {
    case Coloring::kUniform: return "uniform";
    case Coloring::kPerEdgeUnique: return "unique";
    case Coloring::kBlocks: return "blocks";
  }
  return "?";
}

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

std::vector<ColorId> draw_colors(std::size_t count, const ColorSpec& spec, std::size_t& palette) {
  std::vector<ColorId> out(count);
  palette = std::max<std::size_t>(spec.palette, 1);
  switch (spec.coloring) {
    case Coloring::kUniform: {
      std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
      std::uniform_int_distribution<ColorId> pick(0, static_cast<ColorId>(palette - 1));
      for (auto& c : out) c = pick(rng);
      break;
    }
    case Coloring::kPerEdgeUnique:
      palette = std::max<std::size_t>(count, 1);
      for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<ColorId>(i);
      break;
    case Coloring::kBlocks:
      for (std::size_t i = 0; i < count; ++i)
        out[i] = static_cast<ColorId>(i * palette / std::max<std::size_t>(count, 1));
      break;
  }
  return out;
}

EdgeList random_simple_edges(std::size_t n, std::size_t m, std::mt19937_64& rng, EdgeList start) {
  const std::size_t limit = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (m > limit)
    throw std::invalid_argument("cannot place " + std::to_string(m) + " distinct edges on " +
                                std::to_string(n) + " vertices");
  std::set<std::pair<VertexId, VertexId>> used;
  for (auto [u, v] : start) used.insert(std::minmax(u, v));
  EdgeList edges = std::move(start);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  if (m * 2 > limit) {
    // Dense: shuffle the complement instead of rejection sampling.
    EdgeList rest;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (!used.count({u, v})) rest.emplace_back(u, v);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; edges.size() < m; ++i) edges.push_back(rest[i]);
    return edges;
  }
  while (edges.size() < m) {
    VertexId u = pick(rng), v = pick(rng);
    if (u == v || !used.insert(std::minmax(u, v)).second) continue;
    edges.emplace_back(u, v);
  }
  return edges;
}

}  // namespace

ColoredGraph color_topology(std::size_t n, const EdgeList& edges, const ColorSpec& spec) {
  std::size_t palette = 0;
  if (spec.mode == ColorMode::kVertex) {
    auto colors = draw_colors(n, spec, palette);
    return ColoredGraph::vertex_colored(n, palette, std::move(colors), edges);
  }
  auto colors = draw_colors(edges.size(), spec, palette);
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    out.push_back({edges[i].first, edges[i].second, colors[i]});
  return ColoredGraph::edge_colored(n, palette, std::move(out));
}

ColoredGraph gen_random(std::size_t n, std::size_t m, const ColorSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return color_topology(n, random_simple_edges(n, m, rng, {}), spec);
}

ColoredGraph gen_random_connected(std::size_t n, std::size_t m, const ColorSpec& spec) {
  if (n > 0 && m + 1 < n) throw std::invalid_argument("a connected graph needs at least n-1 edges");
  std::mt19937_64 rng(spec.seed);
  EdgeList tree;
  for (VertexId v = 1; v < n; ++v) {
    std::uniform_int_distribution<VertexId> pick(0, v - 1);
    tree.emplace_back(pick(rng), v);
  }
  return color_topology(n, random_simple_edges(n, m, rng, std::move(tree)), spec);
}

ColoredGraph gen_random_tree(std::size_t n, const ColorSpec& spec) {
  return gen_random_connected(n, n == 0 ? 0 : n - 1, spec);
}

ColoredGraph gen_path(std::size_t n, const ColorSpec& spec) {
  EdgeList edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return color_topology(n, edges, spec);
}

ColoredGraph gen_wheel(std::size_t n, const ColorSpec& spec) {
  if (n < 4) throw std::invalid_argument("a wheel needs at least 4 vertices");
  EdgeList edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(0, v);
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(v, v + 1 < n ? v + 1 : 1);
  return color_topology(n, edges, spec);
}

ColoredGraph gen_grid(std::size_t a, std::size_t b, const ColorSpec& spec) {
  EdgeList edges;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      VertexId v = static_cast<VertexId>(i * b + j);
      if (j + 1 < b) edges.emplace_back(v, v + 1);
      if (i + 1 < a) edges.emplace_back(v, static_cast<VertexId>(v + b));
    }
  return color_topology(a * b, edges, spec);
}

}  // namespace cfl
