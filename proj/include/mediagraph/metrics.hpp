#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/graph.hpp"

namespace mediagraph {

/// 2|E| / (|V|(|V|-1)), weights ignored. Throws UndefinedMetric below 2 nodes.
double density(std::size_t nodes, std::size_t edges);
double density(const SimpleGraph& graph);
double density(const WeightedGraph& graph);

/// |E| / (|U| * |V|). Throws UndefinedMetric when a partition is empty.
double bipartite_density(const BipartiteGraph& graph);

struct TriangleCounts {
  std::uint64_t triangles = 0;
  /// Connected triples counted at their centre: sum of C(deg, 2).
  std::uint64_t triplets = 0;

  /// 3 * triangles / triplets, 0 when there are no triplets.
  double transitivity() const noexcept {
    return triplets == 0 ? 0.0
                         : static_cast<double>(3 * triangles) /
                               static_cast<double>(triplets);
  }
};

TriangleCounts count_triangles(const SimpleGraph& graph);
double transitivity(const SimpleGraph& graph);

/// Components as sorted node lists, largest first; equal sizes are ordered
/// by their smallest node id.
std::vector<std::vector<std::uint32_t>> connected_components(
    const SimpleGraph& graph);

struct DiameterOptions {
  /// Larger components throw ErrorCode::Guard instead of being approximated.
  std::size_t max_nodes = 2'000'000;
};

/// Exact diameter of the largest connected component (first component in
/// connected_components order). 0 for empty and single-node graphs.
std::uint32_t diameter(const SimpleGraph& graph, const DiameterOptions& options = {});

/// One row of the per-channel network summary table.
struct NetworkSummary {
  std::string channel_id;
  std::uint64_t component_count = 0;
  double vcg_density = 0.0;
  double vcg_density_norm = 0.0;
  double avcg_density = 0.0;
  double avcg_transitivity = 0.0;
  std::uint32_t avcg_diameter = 0;
  std::uint64_t cpwg_edge_count = 0;
  /// NaN when the channel has fewer than two distinct commenters.
  double cpwg_density = 0.0;
};

struct SummaryOptions {
  std::uint32_t threshold = 2;
  VcgOptions vcg;
  ProjectionOptions projection;
  DiameterOptions diameter;
};

/// Metrics from already-built graphs. Components and diameter are taken on
/// the AVCG.
NetworkSummary summarize_graphs(const BipartiteGraph& vcg,
                                const WeightedGraph& cpwg,
                                const AugmentedGraph& avcg,
                                const DiameterOptions& options = {});

/// Builds VCG -> CPWG -> AVCG and summarises them. Returns nullopt (the
/// skipped-channel marker) when the channel has no comments.
std::optional<NetworkSummary> summarize_channel(std::string_view channel_id,
                                                const Corpus& corpus,
                                                const SummaryOptions& options = {});

}  // namespace mediagraph
