#include <doctest.h>

#include <cmath>
#include <random>

#include "cfl/bits.hpp"
#include "cfl/encoders.hpp"
#include "cfl/measure.hpp"
#include "cfl/multi_fault.hpp"
#include "cfl/oracle.hpp"
#include "cfl/single_fault.hpp"
#include "helpers.hpp"

using namespace cfl;
using namespace fixtures;

namespace {

std::vector<bool> bits(const std::string& s) {
  std::vector<bool> out;
  for (char ch : s) out.push_back(ch == '1');
  return out;
}

ConnectivityFn oracle_of(const ColoredGraph& g) {
  return [&g](VertexId u, VertexId v, const FaultSet& f) { return brute_force_connected(g, u, v, f); };
}

std::uint32_t diameter(const ColoredGraph& g) {
  std::uint32_t d = 0;
  for (const auto& row : hop_distances(g))
    for (auto x : row) d = std::max(d, x);
  return d;
}

}  // namespace

TEST_SUITE("harness_cli") {

TEST_CASE("brute-force oracle basics") {
  CHECK(brute_force_connected(triangle(), 0, 2, FaultSet{kRed}));
  CHECK_FALSE(brute_force_connected(triangle(), 0, 1, FaultSet{kRed}));
  CHECK(brute_force_connected(triangle(), 1, 1, FaultSet{kRed, kBlue}));
  CHECK_THROWS_AS(brute_force_connected(triangle(), 0, 1, FaultSet{5}), InvalidFaultSet);
  const ColoredGraph gv = ColoredGraph::vertex_colored(2, 2, {0, 1}, {{0, 1}});
  CHECK_THROWS_AS(brute_force_connected(gv, 0, 1, FaultSet{1}), RemovedVertexError);
}

TEST_CASE("union-find and BFS oracles agree on 1000 random queries") {
  std::mt19937_64 rng(31);
  for (int q = 0; q < 1000; ++q) {
    const ColoredGraph g = random_multigraph(12, 18, 4, q / 50 + 1);
    const VertexId u = rng() % 12, v = rng() % 12;
    const FaultSet f{static_cast<ColorId>(rng() % 4), static_cast<ColorId>(rng() % 4)};
    REQUIRE(brute_force_connected(g, u, v, f) == bfs_connected(g, u, v, f));
  }
}

TEST_CASE("generators") {
  const ColoredGraph w = gen_wheel(5);
  CHECK(w.n() == 5);
  CHECK(w.m() == 8);
  CHECK(diameter(w) == 2);
  CHECK(ball_packing_exact(gen_path(9)).r == 2);
  const ColorSpec spec{.palette = 5, .seed = 42};
  CHECK(gen_random(30, 60, spec) == gen_random(30, 60, spec));
  CHECK_FALSE(gen_random(30, 60, spec) == gen_random(30, 60, {.palette = 5, .seed = 43}));
  CHECK_THROWS_AS(gen_random(5, 11, spec), std::invalid_argument);
  CHECK(gen_random(5, 10, spec).m() == 10);
  CHECK(gen_grid(3, 4).m() == 17);
  const ColoredGraph unique = gen_random_connected(10, 15, {.coloring = Coloring::kPerEdgeUnique});
  CHECK(unique.palette() == 15);
  const ColoredGraph blocks = gen_path(9, {.palette = 2, .coloring = Coloring::kBlocks});
  CHECK(blocks.edge(0).color == 0);
  CHECK(blocks.edge(7).color == 1);
  const ColoredGraph vmode = gen_path(6, {.palette = 3, .mode = ColorMode::kVertex});
  CHECK(vmode.mode() == ColorMode::kVertex);
  CHECK(component_ids(GraphView(gen_random_connected(40, 39, spec))) == std::vector<VertexId>(40, 0));
  CHECK(parse_coloring("blocks") == Coloring::kBlocks);
  CHECK_THROWS_AS(parse_coloring("plaid"), std::invalid_argument);
}

TEST_CASE("ball encoding on the 9-path") {
  const ColoredGraph path = gen_path(9);
  const EncodedInstance inst = encode_balls(path, {1, 7}, bits("1010"));
  CHECK(inst.capacity() == 4);
  CHECK(inst.graph.palette() == 3);
  CHECK(decode(inst, oracle_of(inst.graph)) == bits("1010"));

  const EncodedInstance zero = encode_balls(path, {1, 7}, bits("0000"));
  for (const Edge& e : zero.graph.edges()) CHECK(e.color == 2);
  CHECK(decode(zero, oracle_of(zero.graph)) == bits("0000"));

  for (std::uint32_t x = 0; x < 16; ++x) {
    std::vector<bool> word;
    for (int i = 3; i >= 0; --i) word.push_back(x >> i & 1);
    const EncodedInstance e = encode_balls(path, word);
    const SingleFaultLabels l = label_single_fault(e.graph);
    const auto via_labels = decode(e, [&](VertexId u, VertexId v, const FaultSet& f) {
      return single_fault_connected(l.vertex[u], l.vertex[v], l.color[f.colors()[0]]);
    });
    CHECK(via_labels == word);
    CHECK(decode(e, oracle_of(e.graph)) == word);
  }
}

TEST_CASE("ball encoding rejects bad witnesses") {
  const ColoredGraph path = gen_path(9);
  CHECK_THROWS_AS(encode_balls(path, {1, 3}, bits("0000")), EncodingError);
  CHECK_THROWS_AS(encode_balls(path, {4, 4}, bits("0000")), EncodingError);
  CHECK_THROWS_AS(encode_balls(path, {1, 7}, bits("000")), EncodingError);
}

TEST_CASE("colex subsets") {
  CHECK(binomial(4, 2) == 6);
  CHECK(colex_subset(0, 2) == std::vector<ColorId>{0, 1});
  CHECK(colex_subset(1, 2) == std::vector<ColorId>{0, 2});
  CHECK(colex_subset(2, 2) == std::vector<ColorId>{1, 2});
  CHECK(colex_subset(3, 2) == std::vector<ColorId>{0, 3});
  CHECK(colex_subset(5, 2) == std::vector<ColorId>{2, 3});
  CHECK(colex_subset(0, 0).empty());
}

TEST_CASE("spider encodings round trip") {
  const EncodedInstance a = encode_spider(1, 2, 2, bits("1001"));
  CHECK(a.capacity() == 4);
  CHECK(decode(a, oracle_of(a.graph)) == bits("1001"));

  std::vector<bool> x(18);
  for (std::size_t i = 0; i < 18; ++i) x[i] = (i * 7 + 3) % 5 < 2;
  const EncodedInstance b = encode_spider(2, 4, 3, x);
  CHECK(b.capacity() == 18);
  CHECK(b.graph.n() == 19);
  CHECK(decode(b, oracle_of(b.graph)) == x);

  for (SpiderOptions opt : {SpiderOptions{.subdivide = true}, SpiderOptions{.vertex_colored = true}}) {
    const EncodedInstance c = encode_spider(2, 4, 3, x, opt);
    CHECK(decode(c, oracle_of(c.graph)) == x);
    if (opt.subdivide) {
      CHECK(c.graph.n() == 19 + 36);
      CHECK(c.graph.m() == 72);
    } else {
      CHECK(c.graph.mode() == ColorMode::kVertex);
    }
  }
  CHECK_THROWS_AS(encode_spider(2, 4, 3, bits("1")), EncodingError);
  CHECK_THROWS_AS(encode_spider(3, 2, 1, {}), EncodingError);
}

TEST_CASE("spider: other steps keep an edge under F(l)") {
  const std::size_t f = 2, q = 5;
  const std::size_t steps = binomial(q, f);
  std::vector<bool> ones(steps, true);
  const EncodedInstance inst = encode_spider(f, q, 1, ones);
  for (std::size_t l = 0; l < steps; ++l) {
    const FaultSet faults(colex_subset(l, f));
    for (std::size_t other = 0; other < steps; ++other) {
      if (other == l) continue;
      std::size_t alive = 0;
      for (std::size_t i = 0; i < f; ++i)
        alive += !faults.contains(inst.graph.edge(static_cast<EdgeId>(other * f + i)).color);
      CHECK(alive >= 1);
    }
  }
}

TEST_CASE("spider decoded through multi-fault labels") {
  std::vector<bool> x(12);
  for (std::size_t i = 0; i < 12; ++i) x[i] = i % 3 == 1;
  const EncodedInstance inst = encode_spider(3, 4, 3, x);
  const RecursiveLabels l = label_recursive(inst.graph, 3, {.seed = 3});
  const auto decoded =
      decode(inst, [&](VertexId u, VertexId v, const FaultSet& f) { return l.connected(u, v, f); });
  std::size_t agree = 0;
  for (std::size_t i = 0; i < 12; ++i) agree += decoded[i] == x[i];
  CHECK(agree == 12);
}

TEST_CASE("size reports") {
  SizeReport r;
  r.add("vertex", {5, 1, 9, 3});
  r.add("empty", {});
  const SizeStats* s = r.find("vertex");
  REQUIRE(s != nullptr);
  CHECK(s->total == 18);
  CHECK(s->max == 9);
  CHECK(s->min == 1);
  CHECK(s->mean == doctest::Approx(4.5));
  CHECK(s->p50 == 3);
  CHECK(s->p99 == 9);
  CHECK(r.find("empty")->count == 0);
  CHECK(r.find("nope") == nullptr);
  CHECK(r.key_values().find("vertex.total=18\n") != std::string::npos);
  CHECK(r.json().find("\"total\": 18") != std::string::npos);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 6, 12, 24}) == doctest::Approx(1.0));
  CHECK(loglog_slope({4, 16, 64}, {2, 4, 8}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), std::invalid_argument);
}

TEST_CASE("single-fault size on paths grows like sqrt(n) log n") {
  // Compared with the slope of sqrt(n) log n itself over the same sizes,
  // which is about 0.68 here rather than 0.5.
  std::vector<double> xs, ys, ref;
  for (std::size_t n : {64u, 128u, 256u, 512u, 1024u}) {
    const SingleFaultLabels l = label_single_fault(gen_path(n, {.palette = n, .coloring = Coloring::kPerEdgeUnique}));
    const auto b = l.vertex_bits();
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(*std::max_element(b.begin(), b.end())));
    ref.push_back(std::sqrt(static_cast<double>(n)) * ceil_log2(n));
  }
  CHECK(loglog_slope(xs, ref) == doctest::Approx(0.68).epsilon(0.02));
  CHECK(std::abs(loglog_slope(xs, ys) - loglog_slope(xs, ref)) <= 0.1);
}

}  // TEST_SUITE
