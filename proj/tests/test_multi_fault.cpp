#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cfl/multi_fault.hpp"
#include "cfl/oracle.hpp"
#include "helpers.hpp"

using namespace cfl;
using namespace fixtures;

namespace {

ColoredGraph restrict_to(const ColoredGraph& g, const std::vector<EdgeId>& ids) {
  std::vector<Edge> edges;
  for (EdgeId e : ids) edges.push_back(g.edge(e));
  return ColoredGraph::edge_colored(g.n(), g.palette(), std::move(edges));
}

FaultSet random_faults(std::mt19937_64& rng, std::size_t palette, std::size_t k) {
  std::vector<ColorId> colors;
  for (std::size_t i = 0; i < k; ++i) colors.push_back(static_cast<ColorId>(rng() % palette));
  return FaultSet(colors);
}

template <class Labels>
double agreement(const ColoredGraph& g, const Labels& labels, std::size_t f, std::size_t queries,
                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t agree = 0, total = 0;
  while (total < queries) {
    const FaultSet faults = random_faults(rng, g.palette(), 1 + rng() % f);
    const VertexId u = rng() % g.n(), v = rng() % g.n();
    if (g.mode() == ColorMode::kVertex &&
        (faults.contains(g.vertex_color(u)) || faults.contains(g.vertex_color(v))))
      continue;
    agree += labels.connected(u, v, faults) == brute_force_connected(g, u, v, faults);
    ++total;
  }
  return static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace

TEST_SUITE("multi_fault") {

TEST_CASE("certificate of the triangle keeps every edge") {
  const ColoredGraph g =
      ColoredGraph::edge_colored(3, 2, {{0, 1, kRed}, {1, 2, kRed}, {0, 2, kBlue}});
  const ColorForestCertificate h = build_certificate(g);
  CHECK(h.forest[kRed] == std::vector<EdgeId>{0, 1});
  CHECK(h.forest[kBlue] == std::vector<EdgeId>{2});
  CHECK(h.edges == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("certificate of a triple parallel edge keeps one") {
  const ColoredGraph g = ColoredGraph::edge_colored(2, 1, {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}});
  CHECK(build_certificate(g).edges.size() == 1);
}

TEST_CASE("certificate refuses vertex colors") {
  const ColoredGraph g = ColoredGraph::vertex_colored(2, 1, {0, 0}, {{0, 1}});
  CHECK_THROWS_AS(build_certificate(g), GraphError);
}

TEST_CASE("certificate is exact for every |F| <= 2 (n <= 12)") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const ColoredGraph g = random_multigraph(n, 3 * n, 2 + seed % 4, seed);
    const ColoredGraph h = restrict_to(g, build_certificate(g).edges);
    for (ColorId c = 0; c < g.palette(); ++c)
      for (ColorId d = c; d < g.palette(); ++d) {
        const FaultSet f{c, d};
        REQUIRE(brute_force_cids(g, f) == brute_force_cids(h, f));
      }
    REQUIRE(brute_force_cids(g, FaultSet{}) == brute_force_cids(h, FaultSet{}));
  }
}

TEST_CASE("large-f scheme: triangle and empty fault set") {
  const ColoredGraph g =
      ColoredGraph::edge_colored(3, 2, {{0, 1, kRed}, {1, 2, kRed}, {0, 2, kBlue}});
  const LargeFLabels l = label_large_f(g, {});
  CHECK_FALSE(l.connected(0, 1, FaultSet{kRed}));
  CHECK(l.connected(0, 2, FaultSet{kRed}));
  CHECK(l.connected(0, 1, FaultSet{}));
  CHECK(l.color[kRed].size() == 2);
}

TEST_CASE("large-f scheme: |F| <= 4, 2000 queries, >= 99%") {
  const ColoredGraph g = random_graph(32, 60, 8, 5);
  CHECK(agreement(g, label_large_f(g, {.seed = 5}), 4, 2000, 1) >= 0.99);
  const ColoredGraph gv = random_graph(24, 50, 6, 6, ColorMode::kVertex);
  CHECK(agreement(gv, label_large_f(gv, {.seed = 6}), 3, 1000, 2) >= 0.99);
}

TEST_CASE("recursive scheme at f=1 is the single-fault scheme") {
  const ColoredGraph g = random_graph(30, 40, 5, 3);
  const RecursiveLabels r = label_recursive(g, 1, {});
  const SingleFaultLabels s = label_single_fault(g);
  REQUIRE(r.root->single.has_value());
  CHECK(r.root->single->vertex == s.vertex);
  CHECK(r.root->single->color == s.color);
  CHECK(r.vertex_bits() == s.vertex_bits());
  CHECK(r.color_bits() == s.color_bits());
}

TEST_CASE("one edge per color leaves no prevalent colors") {
  const ColoredGraph g = gen_random_connected(20, 30, {.coloring = Coloring::kPerEdgeUnique});
  const RecursiveLabels r = label_recursive(g, 2, {});
  CHECK(r.root->delta > 1);
  CHECK(r.root->high.empty());
  CHECK(r.root->children.empty());
  CHECK(agreement(g, r, 2, 500, 3) >= 0.99);
}

TEST_CASE("path a,b,a plus chord c, faults {a,c}") {
  const ColoredGraph g =
      ColoredGraph::edge_colored(4, 3, {{0, 1, kA}, {1, 2, kB}, {2, 3, kA}, {0, 3, kC}});
  const RecursiveLabels r = label_recursive(g, 2, {});
  CHECK(r.connected(1, 2, FaultSet{kA, kC}));
  CHECK_FALSE(r.connected(0, 3, FaultSet{kA, kC}));
  CHECK(r.connected(0, 3, FaultSet{kA, kB}));
  for (ColorId c = 0; c < 3; ++c)
    for (ColorId d = c; d < 3; ++d)
      for (VertexId u = 0; u < 4; ++u)
        for (VertexId v = 0; v < 4; ++v)
          CHECK(r.connected(u, v, FaultSet{c, d}) == brute_force_connected(g, u, v, FaultSet{c, d}));
}

TEST_CASE("each node holds one child per prevalent color, and H is the threshold set") {
  const ColoredGraph g = random_graph(32, 120, 6, 8);
  const RecursiveLabels r = label_recursive(g, 3, {});
  std::vector<const RecursiveNode*> stack{r.root.get()};
  while (!stack.empty()) {
    const RecursiveNode* node = stack.back();
    stack.pop_back();
    if (node->budget == 1) {
      CHECK(node->single.has_value());
      continue;
    }
    CHECK(node->children.size() == node->high.size());
    CHECK(node->delta >= 1);
    CHECK(node->delta <= std::max<double>(1, node->m_prime));
    for (std::size_t i = 0; i < node->high.size(); ++i) {
      CHECK(node->branch[node->high[i]] == static_cast<std::int32_t>(i));
      CHECK(node->children[i]->budget == node->budget - 1);
    }
    for (const auto& child : node->children) stack.push_back(child.get());
  }
  CHECK(r.node_count() >= 1);
  CHECK(r.manifest().size() == r.node_count());
  CHECK(r.manifest()[0].rfind("path=- budget=3", 0) == 0);
}

TEST_CASE("recursive scheme f=2 and f=3 reach 99%") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ColoredGraph g = random_graph(32, 70, 6, seed);
    CHECK(agreement(g, label_recursive(g, 2, {.seed = seed}), 2, 700, seed) >= 0.99);
  }
  const ColoredGraph g3 = random_graph(24, 50, 6, 11);
  CHECK(agreement(g3, label_recursive(g3, 3, {.seed = 11}), 3, 1000, 4) >= 0.99);
  const ColoredGraph gv = random_graph(20, 40, 5, 12, ColorMode::kVertex);
  CHECK(agreement(gv, label_recursive(gv, 2, {.seed = 12}), 2, 500, 5) >= 0.99);
}

TEST_CASE("queries validate their input") {
  const ColoredGraph g = random_graph(10, 15, 3, 1);
  const RecursiveLabels r = label_recursive(g, 2, {});
  CHECK_THROWS_AS(r.connected(0, 1, FaultSet{0, 1, 2}), InvalidFaultSet);
  CHECK_THROWS_AS(r.connected(0, 1, FaultSet{7}), InvalidFaultSet);
  CHECK_THROWS_AS(label_recursive(g, 0, {}), std::invalid_argument);
  CHECK(r.connected(4, 4, FaultSet{0, 1}));
}

}  // TEST_SUITE
