// cfl: command-line front end for the colored-fault connectivity library.
// Every command prints key=value lines; --summary FILE also writes them as JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfl/bits.hpp"
#include "cfl/encoders.hpp"
#include "cfl/generators.hpp"
#include "cfl/measure.hpp"
#include "cfl/multi_fault.hpp"
#include "cfl/nca_oracle.hpp"
#include "cfl/oracle.hpp"
#include "cfl/reductions.hpp"
#include "cfl/routing.hpp"
#include "cfl/single_fault.hpp"
#include "cfl/two_fault.hpp"

using namespace cfl;
using json = nlohmann::ordered_json;

namespace {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("CFL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable CFL_SEED=" << s << "\n";
    }
  }
  return 1;
}

// Collected output, printed as key=value and optionally dumped as JSON.
struct Output {
  json doc = json::object();

  template <class T>
  void put(const std::string& key, const T& value) {
    doc[key] = value;
    std::ostringstream line;
    if constexpr (std::is_same_v<T, bool>)
      line << key << '=' << (value ? "true" : "false");
    else
      line << key << '=' << value;
    std::cout << line.str() << "\n";
  }

  void sizes(const SizeReport& r) {
    std::cout << r.key_values();
    doc["sizes"] = json::parse(r.json());
  }

  void write(const std::string& path) const {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write " + path);
    out << doc.dump(2) << "\n";
  }
};

std::vector<ColorId> parse_colors(const std::string& text) {
  std::vector<ColorId> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(static_cast<ColorId>(std::stoul(item)));
  return out;
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> out;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit strings use 0 and 1 only");
    out.push_back(ch == '1');
  }
  return out;
}

std::string bit_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<bool> random_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<bool> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = rng() & 1;
  return out;
}

ColorMode parse_mode(const std::string& s) {
  if (s == "edge") return ColorMode::kEdge;
  if (s == "vertex") return ColorMode::kVertex;
  throw std::invalid_argument("mode must be edge or vertex");
}

// A connectivity scheme built on one graph, behind a uniform query.
struct Scheme {
  std::string name;
  bool randomized = false;
  std::size_t max_faults = 1;
  std::function<bool(VertexId, VertexId, const FaultSet&)> connected;
  SizeReport sizes;
  std::vector<std::pair<std::string, std::string>> info;
};

Scheme build_scheme(const ColoredGraph& g, const std::string& name, std::size_t f,
                    std::uint64_t seed, unsigned reps) {
  Scheme s;
  s.name = name;
  const SketchParams params{.seed = seed, .repetitions = reps};
  if (name == "single") {
    auto l = std::make_shared<SingleFaultLabels>(label_single_fault(g));
    s.connected = [l](VertexId u, VertexId v, const FaultSet& F) {
      if (F.size() != 1) throw InvalidFaultSet("the single scheme takes exactly one color");
      const ColorId c = F.colors()[0];
      if (c >= l->palette) throw InvalidFaultSet("color outside palette");
      return single_fault_connected(l->vertex[u], l->vertex[v], l->color[c]);
    };
    s.sizes.add("vertex", l->vertex_bits());
    s.sizes.add("color", l->color_bits());
    s.info.emplace_back("k", std::to_string(l->ruling.k));
    s.info.emplace_back("anchors", std::to_string(l->ruling.all().size()));
  } else if (name == "two-diam") {
    auto l = std::make_shared<TwoFaultLabels>(label_two_fault(g));
    s.max_faults = 2;
    s.connected = [l](VertexId u, VertexId v, const FaultSet& F) {
      if (F.empty() || F.size() > 2) throw InvalidFaultSet("the two-diam scheme takes one or two colors");
      for (ColorId c : F.colors())
        if (c >= l->palette) throw InvalidFaultSet("color outside palette");
      const ColorId c = F.colors()[0], d = F.colors()[F.size() - 1];
      return query_two_fault(l->vertex[u], l->vertex[v], l->color[c], l->color[d]);
    };
    s.sizes.add("vertex", l->vertex_bits());
    s.sizes.add("color", l->color_bits());
    s.info.emplace_back("depth", std::to_string(l->depth));
    s.info.emplace_back("cap", std::to_string(l->cap));
    s.info.emplace_back("hitting_set", std::to_string(l->hitting.members.size()));
    if (l->depth > std::sqrt(static_cast<double>(l->work_n)))
      std::cerr << "warning: BFS depth " << l->depth
                << " exceeds sqrt(n); labels are exact but not small\n";
  } else if (name == "multi") {
    auto l = std::make_shared<RecursiveLabels>(label_recursive(g, f, params));
    s.randomized = f > 1;
    s.max_faults = f;
    s.connected = [l](VertexId u, VertexId v, const FaultSet& F) { return l->connected(u, v, F); };
    s.sizes.add("vertex", l->vertex_bits());
    s.sizes.add("color", l->color_bits());
    s.info.emplace_back("nodes", std::to_string(l->node_count()));
  } else if (name == "large") {
    auto l = std::make_shared<LargeFLabels>(label_large_f(g, params));
    s.randomized = true;
    s.max_faults = g.palette();
    s.connected = [l](VertexId u, VertexId v, const FaultSet& F) { return l->connected(u, v, F); };
    s.sizes.add("vertex", l->vertex_bits());
    s.sizes.add("color", l->color_bits());
    s.info.emplace_back("certificate_edges", std::to_string(l->certificate.edges.size()));
  } else if (name == "nca") {
    auto o = std::make_shared<OneFaultOracle>(build_oracle(g));
    s.connected = [o](VertexId u, VertexId v, const FaultSet& F) {
      if (F.size() != 1) throw InvalidFaultSet("the nca oracle takes exactly one color");
      return o->connected(u, v, F.colors()[0]);
    };
    const OracleForest& forest = o->forest;
    const NcaLabels l = label_nca(forest.parent, forest.color, g.palette());
    s.sizes.add("vertex", l.vertex_bits());
    s.sizes.add("color", l.color_bits());
    s.sizes.add("oracle", {encoded_bits(*o)});
    s.info.emplace_back("high_colors", std::to_string(l.high_colors.size()));
  } else {
    throw std::invalid_argument("unknown scheme " + name);
  }
  return s;
}

const std::vector<std::string> kSchemes{"single", "two-diam", "multi", "large", "nca"};

// Queries whose endpoints survive F; brute force refuses the others.
bool valid_query(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& F) {
  if (g.mode() != ColorMode::kVertex) return true;
  return !F.contains(g.vertex_color(u)) && !F.contains(g.vertex_color(v));
}

struct Tally {
  std::size_t queries = 0;
  std::size_t agree = 0;
  std::size_t false_connected = 0;
  std::size_t false_disconnected = 0;

  void add(bool truth, bool answer) {
    ++queries;
    if (truth == answer) {
      ++agree;
    } else if (answer) {
      ++false_connected;
    } else {
      ++false_disconnected;
    }
  }
};

void check_graph(const Scheme& s, const ColoredGraph& g, std::size_t sampled,
                 std::mt19937_64& rng, Tally& t) {
  const std::size_t n = g.n(), p = g.palette();
  if (n == 0 || p == 0) return;
  const bool exhaustive = !s.randomized && s.max_faults <= 2;
  if (exhaustive) {
    for (ColorId c = 0; c < p; ++c)
      for (ColorId d = c; d < (s.max_faults == 2 ? p : c + 1); ++d) {
        const FaultSet F{c, d};
        for (VertexId u = 0; u < n; ++u)
          for (VertexId v = u; v < n; ++v)
            if (valid_query(g, u, v, F)) t.add(brute_force_connected(g, u, v, F), s.connected(u, v, F));
      }
    return;
  }
  const std::size_t cap = std::min(s.max_faults, p);
  for (std::size_t q = 0; q < sampled; ++q) {
    const std::size_t size = 1 + rng() % cap;
    std::vector<ColorId> colors;
    for (std::size_t i = 0; i < size; ++i) colors.push_back(static_cast<ColorId>(rng() % p));
    const FaultSet F(colors);
    const VertexId u = rng() % n, v = rng() % n;
    if (!valid_query(g, u, v, F)) {
      --q;
      continue;
    }
    t.add(brute_force_connected(g, u, v, F), s.connected(u, v, F));
  }
}

ColoredGraph family_graph(const std::string& family, std::size_t n, std::size_t m,
                          const ColorSpec& spec) {
  if (family == "random") return gen_random(n, m, spec);
  if (family == "connected") return gen_random_connected(n, m, spec);
  if (family == "tree") return gen_random_tree(n, spec);
  if (family == "path") return gen_path(n, spec);
  if (family == "wheel") return gen_wheel(n, spec);
  if (family == "grid") {
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return gen_grid(side, (n + side - 1) / side, spec);
  }
  throw std::invalid_argument("unknown family " + family);
}

json labels_document(const ColoredGraph& g, const std::string& scheme, std::size_t f,
                     std::uint64_t seed, unsigned reps) {
  json doc;
  doc["format"] = "cfl-labels";
  doc["version"] = 1;
  doc["scheme"] = scheme;
  doc["f"] = f;
  doc["seed"] = seed;
  doc["repetitions"] = reps;
  doc["graph"] = serialize_graph(g);
  if (scheme == "single") {
    // Deterministic labels are stored bit for bit.
    const SingleFaultLabels l = label_single_fault(g);
    const LabelWidths w = l.widths();
    for (const auto& lv : l.vertex) {
      BitWriter out;
      encode(out, lv, w, l.mode);
      doc["vertex"].push_back({{"bits", out.size()}, {"hex", out.hex()}});
    }
    for (const auto& lc : l.color) {
      BitWriter out;
      encode(out, lc, w);
      doc["color"].push_back({{"bits", out.size()}, {"hex", out.hex()}});
    }
  }
  return doc;
}

BitReader reader_of(const json& entry) {
  return BitReader::from_hex(entry.at("hex").get<std::string>(), entry.at("bits").get<std::size_t>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectivity labels under color faults"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string summary;
  app.add_option("--summary", summary, "Also write the report as JSON to this file");
  int status = 0;
  Output out;
  const std::uint64_t env_seed = default_seed();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a colored graph");
  std::string family = "random", coloring = "uniform", mode = "edge", gen_out;
  std::size_t gen_n = 16, gen_m = 0, gen_palette = 4;
  std::uint64_t gen_seed = env_seed;
  gen->add_option("--family", family, "random|connected|tree|path|wheel|grid")
      ->check(CLI::IsMember({"random", "connected", "tree", "path", "wheel", "grid"}));
  gen->add_option("--n", gen_n, "Vertices");
  gen->add_option("--m", gen_m, "Edges (random families; default 2n)");
  gen->add_option("--palette", gen_palette, "Colors");
  gen->add_option("--coloring", coloring, "uniform|unique|blocks");
  gen->add_option("--mode", mode, "edge|vertex")->check(CLI::IsMember({"edge", "vertex"}));
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("-o,--output", gen_out, "Graph file (stdout if absent)");
  gen->callback([&] {
    const ColorSpec spec{gen_palette, parse_coloring(coloring), parse_mode(mode), gen_seed};
    const ColoredGraph g = family_graph(family, gen_n, gen_m ? gen_m : 2 * gen_n, spec);
    if (gen_out.empty()) {
      std::cout << serialize_graph(g);
      return;
    }
    save_graph(g, gen_out);
    out.put("file", gen_out);
    out.put("n", g.n());
    out.put("m", g.m());
    out.put("palette", g.palette());
    out.put("mode", std::string(to_string(g.mode())));
    out.put("seed", gen_seed);
  });

  // label
  auto* label = app.add_subcommand("label", "Build labels and report their sizes");
  std::string label_graph, scheme = "single", label_out;
  std::size_t f = 2;
  unsigned reps = kDefaultRepetitions;
  std::uint64_t seed = env_seed;
  label->add_option("graph", label_graph, "Graph file")->required();
  label->add_option("--scheme", scheme, "single|two-diam|multi|large|nca")
      ->check(CLI::IsMember(kSchemes));
  label->add_option("--f", f, "Fault budget for the multi scheme");
  label->add_option("--seed", seed, "Sketch seed");
  label->add_option("--reps", reps, "Sketch repetitions");
  label->add_option("-o,--output", label_out, "Label file (JSON)");
  label->callback([&] {
    const ColoredGraph g = load_graph(label_graph);
    const Scheme s = build_scheme(g, scheme, f, seed, reps);
    out.put("scheme", s.name);
    out.put("n", g.n());
    out.put("palette", g.palette());
    out.put("seed", seed);
    for (const auto& [k, v] : s.info) out.put(k, v);
    out.sizes(s.sizes);
    if (!label_out.empty()) {
      std::ofstream file(label_out);
      if (!file) throw GraphError("cannot write " + label_out);
      file << labels_document(g, scheme, f, seed, reps).dump() << "\n";
      out.put("file", label_out);
    }
  });

  // query
  auto* query = app.add_subcommand("query", "Answer one query from a label file");
  std::string query_file, query_faults;
  VertexId qu = 0, qv = 0;
  bool query_check = false;
  query->add_option("labels", query_file, "Label file written by `label -o`")->required();
  query->add_option("u", qu, "Vertex")->required();
  query->add_option("v", qv, "Vertex")->required();
  query->add_option("faults", query_faults, "Comma-separated failed colors")->required();
  query->add_flag("--check", query_check, "Compare with brute force");
  query->callback([&] {
    std::ifstream file(query_file);
    if (!file) throw GraphError("cannot open " + query_file);
    const json doc = json::parse(file);
    if (doc.value("format", "") != "cfl-labels") throw DecodeError("not a label file");
    const ColoredGraph g = parse_graph(doc.at("graph").get<std::string>());
    const FaultSet F(parse_colors(query_faults));
    F.validate(g);
    if (qu >= g.n() || qv >= g.n()) throw GraphError("vertex out of range");
    const std::string name = doc.at("scheme");
    bool answer;
    if (name == "single") {
      if (F.size() != 1) throw InvalidFaultSet("the single scheme takes exactly one color");
      const LabelWidths w = LabelWidths::of(g);
      BitReader ru = reader_of(doc.at("vertex").at(qu)), rv = reader_of(doc.at("vertex").at(qv));
      BitReader rc = reader_of(doc.at("color").at(F.colors()[0]));
      answer = single_fault_connected(decode_vertex_label(ru, w, g.mode()),
                                      decode_vertex_label(rv, w, g.mode()),
                                      decode_color_label(rc, w));
    } else {
      // Randomized labels are rebuilt from the graph and the recorded seed.
      const Scheme s = build_scheme(g, name, doc.at("f"), doc.at("seed"), doc.at("repetitions"));
      answer = s.connected(qu, qv, F);
    }
    out.put("connected", answer);
    if (query_check) {
      const bool truth = brute_force_connected(g, qu, qv, F);
      out.put("brute_force", truth);
      if (truth != answer) status = 1;
    }
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Compare a scheme with brute force");
  std::string verify_graph, verify_family = "random", verify_mode = "edge";
  std::size_t trials = 10, vn = 20, vm = 0, vpalette = 5, sampled = 200;
  verify->add_option("graph", verify_graph, "Graph file (random graphs if absent)");
  verify->add_option("--scheme", scheme, "single|two-diam|multi|large|nca")
      ->check(CLI::IsMember(kSchemes));
  verify->add_option("--trials", trials, "Random graphs");
  verify->add_option("--seed", seed, "Seed");
  verify->add_option("--family", verify_family, "Generator family");
  verify->add_option("--n", vn, "Vertices per random graph");
  verify->add_option("--m", vm, "Edges per random graph (default 2n)");
  verify->add_option("--palette", vpalette, "Colors");
  verify->add_option("--mode", verify_mode, "edge|vertex")->check(CLI::IsMember({"edge", "vertex"}));
  verify->add_option("--f", f, "Fault budget for the multi scheme");
  verify->add_option("--reps", reps, "Sketch repetitions");
  verify->add_option("--queries", sampled, "Sampled queries per graph for randomized schemes");
  verify->callback([&] {
    std::mt19937_64 rng(seed);
    Tally t;
    bool randomized = false;
    const std::size_t rounds = verify_graph.empty() ? trials : 1;
    for (std::size_t i = 0; i < rounds; ++i) {
      const std::uint64_t graph_seed = hash_words(seed, {i});
      const ColoredGraph g =
          verify_graph.empty()
              ? family_graph(verify_family, vn, vm ? vm : 2 * vn,
                             {vpalette, Coloring::kUniform, parse_mode(verify_mode), graph_seed})
              : load_graph(verify_graph);
      const Scheme s = build_scheme(g, scheme, f, graph_seed, reps);
      randomized = s.randomized;
      check_graph(s, g, sampled, rng, t);
    }
    const double agreement = t.queries ? static_cast<double>(t.agree) / t.queries : 1.0;
    out.put("scheme", scheme);
    out.put("seed", seed);
    out.put("graphs", rounds);
    out.put("queries", t.queries);
    out.put("agree", t.agree);
    out.put("false_connected", t.false_connected);
    out.put("false_disconnected", t.false_disconnected);
    out.put("agreement", agreement);
    const bool pass = randomized ? agreement >= 0.99 : t.agree == t.queries;
    out.put("pass", pass);
    if (!pass) status = 1;
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Label sizes across graph sizes");
  std::vector<std::size_t> sizes{64, 128, 256, 512};
  std::string bench_family = "path", bench_coloring = "unique";
  std::size_t bpalette = 8;
  bench->add_option("--sizes", sizes, "Comma-separated vertex counts")->delimiter(',');
  bench->add_option("--scheme", scheme, "single|two-diam|multi|large|nca")
      ->check(CLI::IsMember(kSchemes));
  bench->add_option("--family", bench_family, "Generator family");
  bench->add_option("--coloring", bench_coloring, "uniform|unique|blocks");
  bench->add_option("--palette", bpalette, "Colors");
  bench->add_option("--seed", seed, "Seed");
  bench->add_option("--f", f, "Fault budget for the multi scheme");
  bench->add_option("--reps", reps, "Sketch repetitions");
  bench->callback([&] {
    std::vector<double> xs, ys;
    json rows = json::array();
    for (std::size_t n : sizes) {
      const ColorSpec spec{bpalette, parse_coloring(bench_coloring), ColorMode::kEdge, seed};
      const ColoredGraph g = family_graph(bench_family, n, 2 * n, spec);
      const Scheme s = build_scheme(g, scheme, f, seed, reps);
      const SizeStats* v = s.sizes.find("vertex");
      const SizeStats* c = s.sizes.find("color");
      const std::size_t worst = std::max(v->max, c->max);
      std::cout << "n=" << n << " vertex.max=" << v->max << " vertex.mean=" << v->mean
                << " color.max=" << c->max << " color.mean=" << c->mean << "\n";
      rows.push_back({{"n", n}, {"vertex_max", v->max}, {"color_max", c->max}});
      xs.push_back(static_cast<double>(n));
      ys.push_back(static_cast<double>(worst));
    }
    out.doc["rows"] = rows;
    out.put("scheme", scheme);
    out.put("family", bench_family);
    if (xs.size() >= 2) out.put("loglog_slope", loglog_slope(xs, ys));
  });

  // route
  auto* route = app.add_subcommand("route", "Simulate forbidden-color routing");
  std::string route_graph;
  VertexId source = 0, target = 0;
  ColorId avoid = 0;
  bool trace = false;
  route->add_option("graph", route_graph, "Graph file")->required();
  route->add_option("--source", source, "Source vertex")->required();
  route->add_option("--target", target, "Target vertex")->required();
  route->add_option("--avoid", avoid, "Forbidden color")->required();
  route->add_flag("--trace", trace, "Print every hop");
  route->callback([&] {
    const ColoredGraph g = load_graph(route_graph);
    const RoutingScheme rs(g);
    RouteTrace tr;
    try {
      tr = rs.route(source, target, avoid);
    } catch (const Unreachable& e) {
      out.put("delivered", false);
      out.put("reason", std::string(e.what()));
      status = 1;
      return;
    }
    if (trace)
      for (std::size_t i = 0; i < tr.hops.size(); ++i) {
        const Hop& h = tr.hops[i];
        std::cout << "hop " << i << ": " << h.from << " --port " << h.port << "--> " << h.to
                  << " (edge color " << h.color << ")\n";
      }
    const RoutingSizes sz = rs.sizes();
    out.put("delivered", true);
    out.put("hops", tr.hops.size());
    out.put("invariant_checks", tr.invariant_checks);
    out.put("k", rs.k());
    out.put("header_permanent_bits", sz.header_permanent_bits);
    out.put("header_mutable_bits", sz.header_mutable_bits);
    SizeReport r;
    r.add("table", sz.table_bits);
    r.add("child_intervals", sz.child_bits);
    r.add("vertex", sz.vertex_label_bits);
    r.add("color", sz.color_label_bits);
    out.sizes(r);
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "All-pairs labels from a single-source scheme");
  std::string reduce_graph, inner_name = "exact";
  double alpha = 2.0;
  std::size_t reduce_trials = 0;
  reduce->add_option("graph", reduce_graph, "Graph file")->required();
  reduce->add_option("--f", f, "Fault budget");
  reduce->add_option("--alpha", alpha, "Grid parameter (>= 1)");
  reduce->add_option("--seed", seed, "Seed");
  reduce->add_option("--inner", inner_name, "Inner single-source scheme")
      ->check(CLI::IsMember({"exact"}));
  reduce->add_option("--trials", reduce_trials, "Sampled queries checked against brute force");
  reduce->callback([&] {
    const ColoredGraph g = load_graph(reduce_graph);
    const ExactSingleSource inner;
    const AllPairsLabels l = build_all_pairs(g, f, inner, alpha, seed);
    out.put("inner", inner.name());
    out.put("rows", l.shape.rows);
    out.put("cols", l.shape.cols);
    out.put("seed", seed);
    SizeReport r;
    r.add("vertex", l.vertex_bits());
    r.add("color", l.color_bits());
    out.sizes(r);
    if (reduce_trials == 0 || g.n() == 0 || g.palette() == 0) return;
    std::mt19937_64 rng(seed);
    Tally t;
    for (std::size_t i = 0; i < reduce_trials; ++i) {
      std::vector<ColorId> colors;
      for (std::size_t k = 0, size = 1 + rng() % std::max<std::size_t>(f, 1); k < size; ++k)
        colors.push_back(static_cast<ColorId>(rng() % g.palette()));
      const FaultSet F(colors);
      const VertexId u = rng() % g.n(), w = rng() % g.n();
      std::vector<const std::vector<LabelBits>*> faults;
      for (ColorId c : F.colors()) faults.push_back(&l.color[c]);
      t.add(brute_force_connected(g, u, w, F), query_all_pairs(inner, l.vertex[u], l.vertex[w], faults));
    }
    out.put("queries", t.queries);
    out.put("false_disconnected", t.false_disconnected);
    out.put("false_connected", t.false_connected);
    if (t.false_disconnected > 0) status = 1;
  });

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Lower-bound encoders as round trips");
  encode_cmd->require_subcommand(1);
  encode_cmd->fallthrough();
  std::string bits_text, decode_with = "oracle", balls_graph;
  std::size_t path_n = 9;
  std::size_t sf = 2, sq = 4, arms = 3;
  bool subdivide = false, vertex_colored = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bits", bits_text, "Bit string (random if absent)");
    sub->add_option("--seed", seed, "Seed for random bits and sketches");
    sub->add_option("--decode-with", decode_with, "oracle|scheme")
        ->check(CLI::IsMember({"oracle", "scheme"}));
  };
  auto report_round_trip = [&](const EncodedInstance& inst, const std::vector<bool>& x,
                               const ConnectivityFn& fn) {
    const std::vector<bool> y = decode(inst, fn);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < x.size(); ++i) correct += x[i] == y[i];
    out.put("n", inst.graph.n());
    out.put("m", inst.graph.m());
    out.put("palette", inst.graph.palette());
    out.put("capacity", inst.capacity());
    out.put("decode_with", decode_with);
    out.put("encoded", bit_string(x));
    out.put("decoded", bit_string(y));
    out.put("correct", correct);
    out.put("round_trip", correct == x.size());
    if (correct != x.size()) status = 1;
  };
  auto* balls = encode_cmd->add_subcommand("balls", "Ball-layer encoding");
  add_common(balls);
  balls->add_option("--graph", balls_graph, "Topology file (default: a path)");
  balls->add_option("--path", path_n, "Path length when no graph is given");
  balls->callback([&] {
    const ColoredGraph topo = balls_graph.empty() ? gen_path(path_n) : load_graph(balls_graph);
    const std::uint32_t r = ball_packing_exact(topo).r;
    const std::vector<bool> x = bits_text.empty() ? random_bits(std::size_t{r} * r, seed)
                                                  : parse_bits(bits_text);
    const EncodedInstance inst = encode_balls(topo, x);
    out.put("r", r);
    if (decode_with == "oracle") {
      report_round_trip(inst, x, [&](VertexId u, VertexId v, const FaultSet& F) {
        return brute_force_connected(inst.graph, u, v, F);
      });
      return;
    }
    const SingleFaultLabels l = label_single_fault(inst.graph);
    report_round_trip(inst, x, [&](VertexId u, VertexId v, const FaultSet& F) {
      return single_fault_connected(l.vertex[u], l.vertex[v], l.color[F.colors()[0]]);
    });
  });
  auto* spider = encode_cmd->add_subcommand("spider", "f-thick spider encoding");
  add_common(spider);
  spider->add_option("--f", sf, "Faults per query");
  spider->add_option("--q", sq, "Colors");
  spider->add_option("--arms", arms, "Arms");
  spider->add_flag("--subdivide", subdivide, "Subdivide every parallel edge");
  spider->add_flag("--vertex-colored", vertex_colored, "Color the subdivision vertices");
  spider->callback([&] {
    const std::size_t M = binomial(sq, sf);
    const std::vector<bool> x = bits_text.empty() ? random_bits(arms * M, seed) : parse_bits(bits_text);
    const EncodedInstance inst =
        encode_spider(sf, sq, arms, x, {.subdivide = subdivide, .vertex_colored = vertex_colored});
    out.put("steps", M);
    if (decode_with == "oracle") {
      report_round_trip(inst, x, [&](VertexId u, VertexId v, const FaultSet& F) {
        return brute_force_connected(inst.graph, u, v, F);
      });
      return;
    }
    if (sf == 1) {
      const SingleFaultLabels l = label_single_fault(inst.graph);
      report_round_trip(inst, x, [&](VertexId u, VertexId v, const FaultSet& F) {
        return single_fault_connected(l.vertex[u], l.vertex[v], l.color[F.colors()[0]]);
      });
      return;
    }
    const RecursiveLabels l = label_recursive(inst.graph, sf, {.seed = seed});
    report_round_trip(inst, x, [&](VertexId u, VertexId v, const FaultSet& F) {
      return l.connected(u, v, F);
    });
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Centralized one-fault oracle");
  oracle->require_subcommand(1);
  oracle->fallthrough();
  std::string oracle_graph, oracle_file;
  auto* obuild = oracle->add_subcommand("build", "Build and save an oracle");
  obuild->add_option("graph", oracle_graph, "Graph file")->required();
  obuild->add_option("-o,--output", oracle_file, "Oracle file")->required();
  obuild->callback([&] {
    const ColoredGraph g = load_graph(oracle_graph);
    const OneFaultOracle o = build_oracle(g);
    save_oracle(o, oracle_file);
    out.put("file", oracle_file);
    out.put("n", g.n());
    out.put("bits", encoded_bits(o));
    out.put("bound_3nlogn", 3 * g.n() * ceil_log2(g.n()));
  });
  auto* oquery = oracle->add_subcommand("query", "Query a saved oracle");
  VertexId ou = 0, ov = 0;
  ColorId oc = 0;
  oquery->add_option("file", oracle_file, "Oracle file")->required();
  oquery->add_option("u", ou, "Vertex")->required();
  oquery->add_option("v", ov, "Vertex")->required();
  oquery->add_option("c", oc, "Failed color")->required();
  oquery->callback([&] {
    const OneFaultOracle o = load_oracle(oracle_file);
    out.put("connected", o.connected(ou, ov, oc));
    out.put("cid_u", o.cid(ou, oc));
    out.put("cid_v", o.cid(ov, oc));
  });

  try {
    app.parse(argc, argv);
    out.write(summary);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
