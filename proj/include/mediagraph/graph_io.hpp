#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/graph.hpp"

namespace mediagraph {

enum class GraphKind { VCG, CPWG, AVCG, ChPWG };

std::string_view to_string(GraphKind kind) noexcept;
std::optional<GraphKind> parse_graph_kind(std::string_view text);

/// Header of a serialised graph. For VCG/AVCG `u_count` is the number of
/// videos and `v_count` the number of commenters; unipartite graphs use
/// `u_count` only. `threshold` is 0 except for AVCG.
struct GraphHeader {
  GraphKind kind = GraphKind::VCG;
  std::string channel_id;  // empty for ChPWG
  std::optional<ChannelKind> channel_kind;
  std::optional<Orientation> orientation;
  std::size_t u_count = 0;
  std::size_t v_count = 0;
  std::size_t edge_count = 0;
  std::uint32_t threshold = 0;
};

/// A graph as stored on disk: node ids in index order and (a, b, w) edges.
struct GraphRecord {
  GraphHeader header;
  std::vector<std::string> nodes;
  std::vector<WeightedEdge> edges;

  BipartiteGraph to_bipartite() const;
  WeightedGraph to_weighted() const;
  AugmentedGraph to_augmented() const;
};

GraphRecord record_of(const BipartiteGraph& vcg);
GraphRecord record_of(const WeightedGraph& graph, GraphKind kind,
                      std::string channel_id = {});
GraphRecord record_of(const AugmentedGraph& avcg, std::string channel_id);

/// Text format documented in docs/formats.md. Output is byte-stable for a
/// given record.
void write_graph(std::ostream& out, const GraphRecord& record);
void write_graph(const std::filesystem::path& path, const GraphRecord& record);

GraphRecord read_graph(std::istream& in, const std::string& source = "<stream>");
GraphRecord read_graph(const std::filesystem::path& path);

/// File-name-safe form of an id: [A-Za-z0-9_.-] kept, everything else
/// percent-encoded.
std::string file_stem_for(std::string_view id);

}  // namespace mediagraph
