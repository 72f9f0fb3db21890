#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mediagraph/corpus.hpp"

namespace mediagraph {

/// Undirected simple graph in CSR form with sorted neighbour lists. Node ids
/// are carried along so component ordering and serialisation stay
/// id-based rather than index-based.
class SimpleGraph {
 public:
  SimpleGraph() : offsets_{0} {}

  /// Duplicate edges and self-loops are dropped.
  static SimpleGraph from_edges(
      std::vector<std::string> ids,
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  const std::string& id(std::uint32_t node) const { return ids_[node]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::span<const std::uint32_t> neighbors(std::uint32_t node) const {
    return {targets_.data() + offsets_[node],
            targets_.data() + offsets_[node + 1]};
  }
  std::size_t degree(std::uint32_t node) const {
    return offsets_[node + 1] - offsets_[node];
  }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;

  /// Each undirected edge once, as (a, b) with a < b, in ascending order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

/// Video-commenter graph (VCG) of one channel. Videos and commenters are each
/// sorted by id; edges are stored per video as sorted commenter indices.
struct BipartiteGraph {
  std::string channel_id;
  std::vector<std::string> videos;
  std::vector<std::string> commenters;
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> targets;

  std::size_t edge_count() const noexcept { return targets.size(); }
  std::span<const std::uint32_t> commenters_of(std::size_t video) const {
    return {targets.data() + offsets[video], targets.data() + offsets[video + 1]};
  }
  /// (video, commenter) pairs, video-major.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  /// Nodes are the videos followed by the commenters.
  SimpleGraph to_simple() const;
};

/// a < b always, so the key is canonical. Because nodes are sorted by id,
/// a < b also means id(a) < id(b).
struct WeightedEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Symmetric weighted graph: CPWG (co-comment counts) or ChPWG (Jaccard).
struct WeightedGraph {
  std::vector<std::string> nodes;
  std::vector<WeightedEdge> edges;  // sorted by (a, b)

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  SimpleGraph to_simple() const;
};

/// VCG plus the commenter-commenter edges whose CPWG weight reaches the
/// threshold. Nodes: videos [0, video_count), then commenters.
struct AugmentedGraph {
  std::size_t video_count = 0;
  std::size_t commenter_count = 0;
  std::uint32_t threshold = 2;
  std::size_t vcg_edge_count = 0;
  std::size_t commenter_edge_count = 0;
  SimpleGraph graph;
};

struct VcgOptions {
  /// Videos without comments become isolated U nodes when set.
  bool include_zero_comment_videos = false;
};

struct ProjectionOptions {
  /// A video with more distinct commenters than this aborts the projection
  /// (Error::Guard). 0 disables the cap.
  std::size_t max_commenters_per_video = 100'000;
  std::size_t workers = 1;
};

BipartiteGraph build_vcg(std::string_view channel_id, const Corpus& corpus,
                         const VcgOptions& options = {});

/// CPWG: commenters sharing at least one video, weighted by the number of
/// shared videos.
WeightedGraph project_commenters(const BipartiteGraph& vcg,
                                 const ProjectionOptions& options = {});

AugmentedGraph build_avcg(const BipartiteGraph& vcg, const WeightedGraph& cpwg,
                          std::uint32_t threshold = 2);

/// ChPWG over `scope`: edge weight is the Jaccard similarity of the two
/// channels' distinct commenter sets; channels without commenters stay as
/// isolated nodes.
WeightedGraph build_channel_graph(const Corpus& corpus,
                                  std::span<const std::string> scope);

/// Highest-weight edges first, ties by (a, b). When `node_kinds` is given
/// (one entry per node), edges joining two nodes of the same kind are dropped
/// before ranking.
std::vector<WeightedEdge> top_k_edges(const WeightedGraph& graph, std::size_t k,
                                      std::span<const ChannelKind> node_kinds = {});

/// Kind of every node of a channel graph, aligned with `graph.nodes`.
std::vector<ChannelKind> node_kinds(const WeightedGraph& graph,
                                    const Corpus& corpus);

}  // namespace mediagraph
