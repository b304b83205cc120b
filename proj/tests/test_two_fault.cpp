#include <doctest.h>

#include <cmath>
#include <random>

#include "cfl/bits.hpp"
#include "cfl/oracle.hpp"
#include "cfl/two_fault.hpp"
#include "helpers.hpp"

using namespace cfl;
using namespace fixtures;

namespace {

void check_exhaustive(const ColoredGraph& g) {
  const TwoFaultLabels l = label_two_fault(g);
  for (ColorId c = 0; c < g.palette(); ++c)
    for (ColorId d = c; d < g.palette(); ++d) {
      const auto truth = brute_force_cids(g, FaultSet{c, d});
      for (VertexId v = 0; v < g.n(); ++v) {
        if (truth[v] == kNoVertex) continue;
        REQUIRE(query_two_fault_cid(l.vertex[v], l.color[c], l.color[d]) == truth[v]);
        REQUIRE(query_two_fault_cid(l.vertex[v], l.color[d], l.color[c]) == truth[v]);
      }
    }
}

}  // namespace

TEST_SUITE("two_fault_diam") {

TEST_CASE("greedy hitting set examples") {
  CHECK(greedy_hitting_set({{1, 2}, {2, 3}, {3, 4}}, 5).members == std::vector<VertexId>{2, 3});
  CHECK(greedy_hitting_set({{5}}, 6).members == std::vector<VertexId>{5});
  CHECK(greedy_hitting_set({}, 3).members.empty());
  CHECK_THROWS_AS(greedy_hitting_set({{1}, {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(greedy_hitting_set({{9}}, 3), std::invalid_argument);
}

TEST_CASE("greedy hitting set size bound on 100 random families") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 20 + rng() % 80;
    const std::size_t delta = 2 + rng() % 8;
    const std::size_t k = 1 + rng() % 60;
    std::vector<std::vector<VertexId>> sets(k);
    for (auto& s : sets) {
      std::vector<VertexId> all(n);
      for (VertexId v = 0; v < n; ++v) all[v] = v;
      std::shuffle(all.begin(), all.end(), rng);
      s.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(delta));
    }
    const HittingSet u = greedy_hitting_set(sets, n);
    for (const auto& s : sets) {
      bool hit = false;
      for (VertexId v : s) hit |= std::binary_search(u.members.begin(), u.members.end(), v);
      CHECK(hit);
    }
    CHECK(u.members.size() <=
          static_cast<double>(n) / delta * (std::log(static_cast<double>(k)) + 1));
  }
}

TEST_CASE("truncated BFS avoids the color and stops at the cap") {
  const ColoredGraph g = random_connected(40, 80, 4, 3);
  for (VertexId v = 0; v < 40; v += 7)
    for (ColorId c = 0; c < 4; ++c) {
      const TruncatedBfsTree t = truncated_bfs(g, v, c, 7);
      CHECK(t.vertices.size() <= 7);
      CHECK(t.edges.size() + 1 == t.vertices.size());
      for (EdgeId e : t.edges) CHECK(g.edge(e).color != c);
      if (t.vertices.size() < 7) {
        const auto ids = brute_force_cids(g, FaultSet{c});
        std::size_t comp = 0;
        for (VertexId x = 0; x < 40; ++x) comp += ids[x] == ids[v];
        CHECK(comp == t.vertices.size());
      }
    }
}

TEST_CASE("star with distinct colors needs no hitting set") {
  std::vector<Edge> edges;
  for (VertexId v = 1; v < 10; ++v) edges.push_back({0, v, v - 1});
  const ColoredGraph g = ColoredGraph::edge_colored(10, 9, edges);
  const TwoFaultLabels l = label_two_fault(g);
  CHECK(l.full_trees == 0);
  CHECK(l.hitting.members.empty());
  check_exhaustive(g);
}

TEST_CASE("labels on the path a,b,a") {
  const TwoFaultLabels l = label_two_fault(path_aba());
  const TwoFaultVertexLabel& v2 = l.vertex[2];
  REQUIRE(v2.entries.size() == 2);
  CHECK(v2.entries[0].color == kA);
  CHECK(v2.entries[0].cid_without == 1);  // G-a keeps only the edge 1-2
  CHECK(v2.entries[1].color == kB);
  CHECK(v2.entries[1].cid_without == 2);
  CHECK(query_two_fault(l.vertex[0], l.vertex[0], l.color[kA], l.color[kB]));
  CHECK_FALSE(query_two_fault(l.vertex[0], l.vertex[3], l.color[kA], l.color[kB]));
  check_exhaustive(path_aba());
}

TEST_CASE("small trees: cid(v, G-{c,d}) = cid(v, G-c) when d misses the tree") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ColoredGraph g = random_graph(36, 40, 5, seed);
    const TwoFaultLabels l = label_two_fault(g);
    for (VertexId v = 0; v < g.n(); ++v)
      for (const TwoFaultEntry& e : l.vertex[v].entries) {
        if (e.full) continue;
        for (ColorId d = 0; d < g.palette(); ++d) {
          bool in_tree = false;
          for (auto [c, id] : e.tree) in_tree |= c == d;
          if (in_tree) continue;
          CHECK(cid(g, v, FaultSet{e.color, d}) == e.cid_without);
        }
      }
  }
}

TEST_CASE("entry counts respect depth (cap + depth) and |U| depth") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const std::size_t n = 30 + seed * 4;
    const ColoredGraph g = random_connected(n, 2 * n, 6, seed);
    const TwoFaultLabels l = label_two_fault(g);
    for (std::size_t c : l.vertex_entry_counts()) CHECK(c <= l.depth * (l.cap + l.depth));
    for (std::size_t c : l.color_entry_counts()) CHECK(c <= l.hitting.members.size() * l.depth);
    if (l.full_trees > 0)
      CHECK(l.hitting.members.size() <=
            static_cast<double>(l.work_n) / l.cap *
                (std::log(static_cast<double>(l.full_trees)) + 1));
  }
}

TEST_CASE("exhaustive agreement on random connected graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed)
    check_exhaustive(random_connected(16 + seed * 2, 30 + seed * 5, 3 + seed % 8, seed));
  check_exhaustive(gen_wheel(17, {.palette = 5, .seed = 1}));
  check_exhaustive(gen_grid(4, 5, {.palette = 4, .seed = 2}));
}

TEST_CASE("disconnected graphs use one tree per component") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) check_exhaustive(random_graph(30, 26, 4, seed));
}

TEST_CASE("vertex-colored graphs") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ColoredGraph g = random_connected(18, 30, 4, seed, ColorMode::kVertex);
    check_exhaustive(g);
    const TwoFaultLabels l = label_two_fault(g);
    const ColorId own = g.vertex_color(0);
    CHECK_THROWS_AS(query_two_fault_cid(l.vertex[0], l.color[own], l.color[own]),
                    RemovedVertexError);
  }
}

TEST_CASE("size within 3 D (sqrt n + D) log n log C") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ColoredGraph g = random_connected(40, 90, 10, seed);
    const TwoFaultLabels l = label_two_fault(g);
    const double bound = 3.0 * l.depth * (std::sqrt(40.0) + l.depth) * ceil_log2(40) * ceil_log2(10);
    for (std::size_t b : l.vertex_bits()) CHECK(b <= bound);
    for (std::size_t b : l.color_bits()) CHECK(b <= bound);
  }
}

}  // TEST_SUITE
