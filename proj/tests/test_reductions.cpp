#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "cfl/encoders.hpp"
#include "cfl/oracle.hpp"
#include "cfl/reductions.hpp"
#include "helpers.hpp"

using namespace cfl;
using namespace fixtures;

namespace {

bool query(const AllPairsLabels& l, const SingleSourceScheme& inner, VertexId u, VertexId w,
           const FaultSet& f) {
  std::vector<const std::vector<LabelBits>*> faults;
  for (ColorId c : f.colors()) faults.push_back(&l.color[c]);
  return query_all_pairs(inner, l.vertex[u], l.vertex[w], faults);
}

}  // namespace

TEST_SUITE("reductions") {

TEST_CASE("grid shape") {
  const GridShape two = grid_shape(2, 1.0);
  CHECK(two.rows == static_cast<std::size_t>(std::ceil(std::log(2.0) / std::log(10.0 / 9.0))));
  CHECK(two.rows == 7);
  CHECK(two.cols == 3);
  const GridShape n32 = grid_shape(32, 2.0);
  CHECK(n32.rows == 66);
  CHECK(n32.cols == 7);
}

TEST_CASE("fault-set ranks enumerate every subset once") {
  for (std::size_t p = 1; p <= 6; ++p)
    for (std::size_t f = 0; f <= 3; ++f) {
      std::set<std::size_t> ranks;
      std::size_t expect = 0;
      for (std::size_t s = 0; s <= std::min(f, p); ++s) {
        expect += binomial(p, s);
        for (std::size_t l = 0; l < binomial(p, s); ++l) ranks.insert(fault_set_rank(colex_subset(l, s), p));
      }
      CHECK(ranks.size() == expect);
      CHECK(*ranks.rbegin() == expect - 1);
    }
}

TEST_CASE("exact single-source labels match brute force") {
  const ColoredGraph g = random_graph(15, 18, 4, 3);
  const ExactSingleSource inner;
  const SingleSourceLabels l = inner.build(g, 0, 2);
  for (ColorId c = 0; c < 4; ++c)
    for (ColorId d = c; d < 4; ++d)
      for (VertexId v = 0; v < g.n(); ++v) {
        const FaultSet f{c, d};
        std::vector<const LabelBits*> faults;
        for (ColorId x : f.colors()) faults.push_back(&l.color[x]);
        CHECK(inner.query(l.vertex[v], faults) == brute_force_connected(g, 0, v, f));
      }
  std::vector<const LabelBits*> none;
  CHECK(inner.query(l.vertex[0], none));
  std::vector<const LabelBits*> three{&l.color[0], &l.color[1], &l.color[2]};
  CHECK_THROWS_AS(inner.query(l.vertex[1], three), InvalidFaultSet);
}

TEST_CASE("augmented cells add a source joined by the never-failing color") {
  const ColoredGraph g = random_graph(20, 25, 3, 1);
  const ColoredGraph a = augment_cell(g, 2, 0, 9);
  CHECK(a.n() == 21);
  CHECK(a.palette() == 4);
  for (EdgeId e = g.m(); e < a.m(); ++e) {
    CHECK(a.edge(e).u == 20);
    CHECK(a.edge(e).color == 3);
  }
  CHECK(a == augment_cell(g, 2, 0, 9));
}

TEST_CASE("label sizes sum the inner labels; rebuilds are identical") {
  const ColoredGraph g = random_graph(10, 12, 3, 2);
  const ExactSingleSource inner;
  const AllPairsLabels l = build_all_pairs(g, 2, inner, 1.0, 77);
  const std::size_t cells = l.shape.rows * l.shape.cols;
  CHECK(l.vertex[0].size() == cells);
  std::size_t sum = 0;
  for (const auto& cell : l.vertex[4]) sum += cell.size();
  CHECK(l.vertex_bits()[4] == sum);
  CHECK(l.vertex_bits()[4] == cells * (32 + 1 + 4 + 6));
  const AllPairsLabels again = build_all_pairs(g, 2, inner, 1.0, 77);
  CHECK(again.vertex == l.vertex);
  CHECK(again.color == l.color);
  CHECK_THROWS_AS(build_all_pairs(g, 2, inner, 0.5, 1), std::invalid_argument);
}

TEST_CASE("connected pairs are never misreported; disconnected ones rarely") {
  const ExactSingleSource inner;
  std::size_t wrong = 0, disconnected = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const ColoredGraph g = random_graph(16, 20, 3, seed);
    const AllPairsLabels l = build_all_pairs(g, 2, inner, 2.0, seed);
    for (ColorId c = 0; c < 3; ++c)
      for (ColorId d = c; d < 3; ++d)
        for (VertexId u = 0; u < g.n(); ++u)
          for (VertexId w = 0; w < g.n(); ++w) {
            const FaultSet f{c, d};
            const bool truth = brute_force_connected(g, u, w, f);
            const bool answer = query(l, inner, u, w, f);
            if (truth) {
              REQUIRE(answer);
            } else {
              ++disconnected;
              wrong += answer;
            }
          }
  }
  CHECK(disconnected > 0);
  CHECK(wrong * 100 <= disconnected);
}

}  // TEST_SUITE
