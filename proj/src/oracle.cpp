#include "cfl/oracle.hpp"

#include "cfl/disjoint_sets.hpp"

namespace cfl {

namespace {

void check_query(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& faults) {
  if (u >= g.n() || v >= g.n()) throw GraphError("query vertex out of range");
  faults.validate(g);
  if (g.mode() == ColorMode::kVertex)
    for (VertexId x : {u, v})
      if (faults.contains(g.vertex_color(x)))
        throw RemovedVertexError("vertex " + std::to_string(x) + " is removed by the fault set");
}

}  // namespace

bool brute_force_connected(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& faults) {
  check_query(g, u, v, faults);
  if (u == v) return true;
  DisjointSets sets(g.n());
  for (EdgeId e = 0; e < g.m(); ++e) {
    bool dead = false;
    if (g.mode() == ColorMode::kEdge) {
      dead = faults.contains(g.edge(e).color);
    } else {
      dead = faults.contains(g.vertex_color(g.edge(e).u)) ||
             faults.contains(g.vertex_color(g.edge(e).v));
    }
    if (!dead) sets.unite(g.edge(e).u, g.edge(e).v);
  }
  return sets.same(u, v);
}

bool bfs_connected(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& faults) {
  check_query(g, u, v, faults);
  GraphView view = remove_colors(g, faults);
  return bfs_tree(view, u).depth[v] != BfsTree::kUnreached;
}

std::vector<VertexId> brute_force_cids(const ColoredGraph& g, const FaultSet& faults) {
  faults.validate(g);
  return component_ids(remove_colors(g, faults));
}

}  // namespace cfl
