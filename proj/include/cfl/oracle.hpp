#pragma once

#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

/// Reference answer for every scheme: union-find over the edges surviving F.
/// Throws RemovedVertexError if u or v itself fails (vertex mode).
bool brute_force_connected(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& faults);

/// Independent second oracle: BFS over remove_colors.
bool bfs_connected(const ColoredGraph& g, VertexId u, VertexId v, const FaultSet& faults);

/// cid of every vertex in G-F (kNoVertex for removed vertices).
std::vector<VertexId> brute_force_cids(const ColoredGraph& g, const FaultSet& faults);

}  // namespace cfl
