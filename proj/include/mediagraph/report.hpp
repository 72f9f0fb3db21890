#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/gazetteer.hpp"
#include "mediagraph/graph.hpp"
#include "mediagraph/metrics.hpp"
#include "mediagraph/table.hpp"

namespace mediagraph {

/// Column order of the per-channel network table; one column per
/// NetworkSummary field.
inline constexpr std::array<std::string_view, 9> kNetworkColumns = {
    "channel_id",        "component_count", "vcg_density",
    "vcg_density_norm",  "avcg_density",    "avcg_transitivity",
    "avcg_diameter",     "cpwg_edge_count", "cpwg_density"};

Table network_summary_table(std::span<const NetworkSummary> rows,
                            std::uint32_t threshold);

/// Macro-averages of the numeric network columns per (kind, orientation).
/// `keys[i]` is the group of `rows[i]`.
Table network_group_table(std::span<const NetworkSummary> rows,
                          std::span<const GroupKey> keys, std::uint32_t threshold);

/// Named tables; names are file stems.
using NamedTables = std::vector<std::pair<std::string, Table>>;

/// "activity_groups", "activity_channels", "shorts_impact",
/// "shorts_correlation", and one "ccdf_<kind>_<orientation>_<metric>" per
/// group with data (metrics "uploads" per channel and "views" per video).
NamedTables activity_tables(const Corpus& corpus, const CollectionWindow& window);

/// "taxonomy", "pp_sides", "overlap".
NamedTables audience_tables(const Corpus& corpus);

/// "coverage_mentions", "coverage_interviews", "presence_lift",
/// "presence_overlap".
NamedTables coverage_tables(const Corpus& corpus,
                            std::span<const VideoAnnotation> annotations,
                            const Gazetteer& gazetteer);

/// Heaviest `k` edges of a channel projection, with node kinds and groups.
Table channel_edges_table(const WeightedGraph& chpwg, const Corpus& corpus,
                          std::size_t k);

}  // namespace mediagraph
