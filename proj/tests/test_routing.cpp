#include <doctest.h>

#include <algorithm>
#include <random>

#include "cfl/oracle.hpp"
#include "cfl/routing.hpp"
#include "helpers.hpp"

using namespace cfl;
using namespace fixtures;

namespace {

// Unique path between u and v in a rooted forest.
std::vector<VertexId> forest_path(const std::vector<VertexId>& parent, VertexId u, VertexId v) {
  auto chain = [&](VertexId x) {
    std::vector<VertexId> out;
    for (; x != kNoVertex; x = parent[x]) out.push_back(x);
    return out;
  };
  std::vector<VertexId> a = chain(u), b = chain(v);
  while (a.size() > 1 && b.size() > 1 && a[a.size() - 2] == b[b.size() - 2]) {
    a.pop_back();
    b.pop_back();
  }
  b.pop_back();
  a.insert(a.end(), b.rbegin(), b.rend());
  return a;
}

std::vector<VertexId> walk_tree(const PortedNetwork& net, const TreeRouting& tr, VertexId u,
                                VertexId v) {
  std::vector<VertexId> path{u};
  for (std::size_t guard = 0; guard < 200; ++guard) {
    const TreeStep step = tree_next(tr.table(path.back()), tr.label(v));
    if (step.arrived) return path;
    path.push_back(net.follow(path.back(), step.port));
  }
  return {};
}

std::size_t sweep(const ColoredGraph& g) {
  const RoutingScheme scheme(g);
  std::size_t delivered = 0;
  for (ColorId c = 0; c < g.palette(); ++c) {
    const auto ids = brute_force_cids(g, FaultSet{c});
    for (VertexId s = 0; s < g.n(); ++s)
      for (VertexId t = 0; t < g.n(); ++t) {
        if (ids[s] != ids[t]) {
          CHECK_THROWS_AS(scheme.route(s, t, c), Unreachable);
          continue;
        }
        const RouteTrace trace = scheme.route(s, t, c);
        VertexId at = s;
        for (const Hop& h : trace.hops) {
          REQUIRE(h.from == at);
          REQUIRE(h.color != c);
          REQUIRE(g.edge(h.edge).color == h.color);
          at = h.to;
        }
        REQUIRE(at == t);
        REQUIRE(trace.hops.size() <= g.n() * g.n());
        REQUIRE(trace.invariant_checks == trace.hops.size() + (s == t ? 0 : 1));
        ++delivered;
      }
  }
  return delivered;
}

}  // namespace

TEST_SUITE("routing_sim") {

TEST_CASE("ports follow edge-id order; a loop takes one port") {
  const ColoredGraph g = ColoredGraph::edge_colored(3, 1, {{0, 2, 0}, {1, 1, 0}, {1, 0, 0}, {0, 2, 0}});
  const PortedNetwork net(g);
  CHECK(net.degree(0) == 3);
  CHECK(net.edge_at(0, 0) == 0);
  CHECK(net.edge_at(0, 1) == 2);
  CHECK(net.edge_at(0, 2) == 3);
  CHECK(net.degree(1) == 2);
  CHECK(net.follow(1, 0) == 1);
  CHECK(net.port_of(1, 2) == 1);
  CHECK(net.follow(0, 1) == 1);
  CHECK_THROWS_AS(net.port_of(2, 1), RoutingBug);
}

TEST_CASE("tree routing on the path 0-1-2") {
  const ColoredGraph g = gen_path(3);
  const PortedNetwork net(g);
  const TreeRouting tr(net, {kNoVertex, 0, 1}, {kNoEdge, 0, 1});
  const TreeStep step = tree_next(tr.table(1), tr.label(2));
  CHECK_FALSE(step.arrived);
  CHECK(net.follow(1, step.port) == 2);
  CHECK(tree_next(tr.table(1), tr.label(1)).arrived);
  CHECK(net.follow(1, tree_next(tr.table(1), tr.label(0)).port) == 0);
}

TEST_CASE("tree routing leaves a root only toward its subtree") {
  const ColoredGraph g = ColoredGraph::edge_colored(4, 1, {{0, 1, 0}, {2, 3, 0}});
  const PortedNetwork net(g);
  const TreeRouting tr(net, {kNoVertex, 0, kNoVertex, 2}, {kNoEdge, 0, kNoEdge, 1});
  CHECK_THROWS_AS(tree_next(tr.table(0), tr.label(3)), RoutingBug);
}

TEST_CASE("tree walks follow the unique tree path on random trees") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 10 + seed * 3;
    const ColoredGraph g = gen_random_tree(n, {.palette = 2, .seed = seed});
    const BfsTree bfs = bfs_tree(GraphView(g), 0);
    const PortedNetwork net(g);
    const TreeRouting tr(net, bfs.parent, bfs.parent_edge);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v) REQUIRE(walk_tree(net, tr, u, v) == forest_path(bfs.parent, u, v));
  }
}

TEST_CASE("T contains every anchor path") {
  const ColoredGraph g = random_connected(30, 50, 4, 9);
  const RoutingScheme scheme(g);
  const AnchorForest forest = build_anchor_forest(g, build_ruling_set(g));
  std::vector<char> in_tree(g.m(), 0);
  for (VertexId v = 0; v < g.n(); ++v)
    if (scheme.tree_parent()[v] != kNoVertex) in_tree[scheme.tree_parent_edge()[v]] = 1;
  for (VertexId v = 0; v < g.n(); ++v)
    if (forest.parent[v] != kNoVertex) CHECK(in_tree[forest.parent_edge[v]]);
  CHECK(scheme.tree_parent()[0] == kNoVertex);
}

TEST_CASE("recovery tree on a 4-cycle") {
  // (0,1,a) (1,2,b) (2,3,a) (3,0,c); T = {0-1, 1-2, 3-0}, fragments of T-b: {0,1,3}, {2}
  const ColoredGraph g =
      ColoredGraph::edge_colored(4, 4, {{0, 1, kA}, {1, 2, kB}, {2, 3, kA}, {3, 0, kC}});
  const RoutingScheme scheme(g);
  const RecoveryTree* rt = scheme.recovery_tree(kB);
  REQUIRE(rt != nullptr);
  CHECK(rt->fragment == std::vector<VertexId>{0, 0, 2, 0});
  CHECK(rt->recovery_edges == std::vector<EdgeId>{2});
  CHECK(scheme.first_recovery_edge(0, 2, kB) == std::pair<EdgeId, VertexId>{2, 3});
  CHECK(scheme.first_recovery_edge(0, 3, kB).first == kNoEdge);

  const RouteTrace trace = scheme.route(0, 2, kB);
  std::vector<VertexId> walk{0};
  for (const Hop& h : trace.hops) walk.push_back(h.to);
  CHECK(walk == std::vector<VertexId>{0, 3, 2});
  CHECK(scheme.route(0, 3, kB).hops.back().to == 3);
}

TEST_CASE("a color absent from T has no recovery tree and no blocks") {
  const ColoredGraph g =
      ColoredGraph::edge_colored(3, 3, {{0, 1, 0}, {1, 2, 0}, {0, 2, 2}, {0, 1, 1}});
  const RoutingScheme scheme(g);
  CHECK(scheme.recovery_tree(1) == nullptr);
  for (const auto& [a, block] : scheme.color_label(1).blocks) CHECK_FALSE(block.defined);
  // Pure tree routing: the T path.
  const RouteTrace trace = scheme.route(2, 0, 1);
  std::vector<VertexId> walk{2};
  for (const Hop& h : trace.hops) walk.push_back(h.to);
  CHECK(walk == forest_path(scheme.tree_parent(), 2, 0));
}

TEST_CASE("block and entry counts stay within |A| and |P(v)|") {
  const ColoredGraph g = random_connected(32, 60, 5, 2);
  const RoutingScheme scheme(g);
  const AnchorForest forest = build_anchor_forest(g, build_ruling_set(g));
  for (VertexId v = 0; v < g.n(); ++v) {
    CHECK(scheme.table(v).blocks.size() <= scheme.anchors().size());
    std::size_t depth = 0;
    for (VertexId x = v; forest.parent[x] != kNoVertex; x = forest.parent[x]) ++depth;
    CHECK(scheme.vertex_label(v).per_color.size() <= depth);
    CHECK(scheme.table(v).recovery.size() <= depth);
  }
}

TEST_CASE("s = t gives an empty trace; bad input is rejected") {
  const ColoredGraph g = random_connected(10, 15, 3, 4);
  const RoutingScheme scheme(g);
  CHECK(scheme.route(3, 3, 0).hops.empty());
  CHECK_THROWS_AS(scheme.route(0, 10, 0), GraphError);
  CHECK_THROWS_AS(scheme.route(0, 1, 3), InvalidFaultSet);
  const ColoredGraph gv = ColoredGraph::vertex_colored(2, 1, {0, 0}, {{0, 1}});
  CHECK_THROWS_AS(RoutingScheme{gv}, GraphError);
}

TEST_CASE("unreachable targets are refused before routing") {
  const RoutingScheme scheme(path_aba());
  CHECK_THROWS_AS(scheme.route(0, 3, kB), Unreachable);
  CHECK_THROWS_AS(scheme.route(0, 2, kA), Unreachable);
  CHECK(scheme.route(1, 2, kA).hops.size() == 1);
}

TEST_CASE("exhaustive sweeps on random graphs") {
  std::size_t delivered = 0;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    delivered += sweep(random_connected(12 + seed, 20 + 3 * seed, 2 + seed % 5, seed));
    delivered += sweep(random_graph(14 + seed, 18 + 2 * seed, 3, seed + 100));
  }
  delivered += sweep(random_multigraph(14, 30, 3, 7));
  delivered += sweep(gen_grid(4, 5, {.palette = 3, .seed = 3}));
  delivered += sweep(gen_wheel(16, {.palette = 4, .seed = 5}));
  delivered += sweep(gen_path(20, {.palette = 3}));
  CHECK(delivered > 0);
}

TEST_CASE("sizes are reported for every element") {
  const ColoredGraph g = random_connected(24, 40, 4, 6);
  const RoutingScheme scheme(g);
  const RoutingSizes s = scheme.sizes();
  CHECK(s.table_bits.size() == g.n());
  CHECK(s.child_bits.size() == g.n());
  CHECK(s.vertex_label_bits.size() == g.n());
  CHECK(s.color_label_bits.size() == g.palette());
  CHECK(s.header_permanent_bits > 0);
  CHECK(s.header_mutable_bits > 0);
}

}  // TEST_SUITE
