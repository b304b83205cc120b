#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfl/bits.hpp"
#include "cfl/graph.hpp"

namespace cfl {

struct NcaEntry {
  std::uint32_t time;
  VertexId vertex;
  bool is_post;
  VertexId above;  // nearest strict ancestor with the same color, or kNoVertex
};

/// Nearest colored ancestor over a rooted forest. Pre and post timestamps
/// share one counter, so they span 0..2n-1.
struct NcaStructure {
  std::vector<VertexId> parent;  // kNoVertex at roots
  std::vector<ColorId> color;    // kNoColor for uncolored vertices
  std::vector<std::uint32_t> pre;
  std::vector<std::uint32_t> post;
  std::vector<VertexId> payload;  // optional, indexed by vertex
  std::vector<std::vector<NcaEntry>> by_color;
};

/// DFS visits roots and children in increasing id order.
NcaStructure build_nca(const std::vector<VertexId>& parent, const std::vector<ColorId>& colors,
                       std::size_t palette, std::vector<VertexId> payload = {});

/// Nearest ancestor of v colored c, v included; kNoVertex if none.
VertexId nca_query(const NcaStructure& s, VertexId v, ColorId c);

/// Connectivity oracle for one color fault. The forest is a spanning forest of
/// G; each non-root u carries the color d of its parent edge and cid(u, G-d).
/// The spanning forest, colors and payloads the oracle is built from. Vertex
/// mode graphs are first subdivided into edge mode.
struct OracleForest {
  std::vector<VertexId> parent;
  std::vector<ColorId> color;
  std::vector<VertexId> payload;

  bool operator==(const OracleForest&) const = default;
};

struct OneFaultOracle {
  struct Entry {
    std::uint32_t time;
    bool is_post;
    VertexId answer;  // kNoVertex: fall back to the root

    bool operator==(const Entry&) const = default;
  };

  ColorMode mode = ColorMode::kEdge;
  std::size_t n = 0;       // vertices of the input graph
  std::size_t forest_n = 0;  // vertices of the forest (n + m in vertex mode)
  std::size_t palette = 0;
  std::vector<ColorId> own_color;  // vertex mode only
  OracleForest forest;             // what the file stores; the rest is rebuilt
  std::vector<std::uint32_t> pre;  // first n vertices
  std::vector<VertexId> root;
  std::vector<std::vector<Entry>> by_color;

  VertexId cid(VertexId v, ColorId c) const;
  bool connected(VertexId u, VertexId v, ColorId c) const;

  bool operator==(const OneFaultOracle&) const = default;
};

OracleForest oracle_forest(const ColoredGraph& g);

OneFaultOracle build_oracle(const ColoredGraph& g);

inline constexpr std::uint32_t kOracleMagic = 0x43464c4f;  // "CFLO"
inline constexpr std::uint32_t kOracleVersion = 1;

void encode(BitWriter& out, const OneFaultOracle& oracle);
OneFaultOracle decode_oracle(BitReader& in);
std::size_t encoded_bits(const OneFaultOracle& oracle);

void save_oracle(const OneFaultOracle& oracle, const std::string& path);
OneFaultOracle load_oracle(const std::string& path);

/// Label variant: colors with at least sqrt(n) vertices are answered from the
/// vertex label, the others from the color label's interval list.
struct NcaInterval {
  std::uint32_t pre;
  std::uint32_t end;  // last preorder index of the subtree
  VertexId vertex;

  bool operator==(const NcaInterval&) const = default;
};

struct NcaVertexLabel {
  std::uint32_t pre = 0;
  std::vector<VertexId> high;  // answer per high color rank, kNoVertex if none

  bool operator==(const NcaVertexLabel&) const = default;
};

struct NcaColorLabel {
  bool high = false;
  std::uint32_t rank = 0;
  std::vector<NcaInterval> intervals;  // sorted by pre

  bool operator==(const NcaColorLabel&) const = default;
};

struct NcaLabels {
  std::size_t n = 0;
  std::size_t palette = 0;
  std::vector<ColorId> high_colors;
  std::vector<NcaVertexLabel> vertex;
  std::vector<NcaColorLabel> color;

  unsigned id_bits() const { return field_width(n); }
  unsigned rank_bits() const { return field_width(high_colors.size()); }
  std::vector<std::size_t> vertex_bits() const;
  std::vector<std::size_t> color_bits() const;
};

NcaLabels label_nca(const std::vector<VertexId>& parent, const std::vector<ColorId>& colors,
                    std::size_t palette);

VertexId query_nca_labels(const NcaVertexLabel& lv, const NcaColorLabel& lc);

/// Fields are counted from the label length, so no count prefix is stored.
void encode(BitWriter& out, const NcaVertexLabel& label, unsigned id_bits);
void encode(BitWriter& out, const NcaColorLabel& label, unsigned id_bits, unsigned rank_bits);
NcaVertexLabel decode_nca_vertex_label(BitReader& in, unsigned id_bits);
NcaColorLabel decode_nca_color_label(BitReader& in, unsigned id_bits, unsigned rank_bits);

}  // namespace cfl
