#include "mediagraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "mediagraph/error.hpp"
#include "mediagraph/parallel.hpp"

namespace mediagraph {

SimpleGraph SimpleGraph::from_edges(
    std::vector<std::string> ids,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  SimpleGraph g;
  const auto n = ids.size();
  g.ids_ = std::move(ids);
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("edge ({}, {}) outside {} nodes", a, b, n));
    }
    if (a > b) std::swap(a, b);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.targets_.resize(2 * edges.size());
  auto cursor = g.offsets_;
  // Edges are sorted by (a, b): pushing b into a's row and a into b's row
  // keeps every row sorted without a second sort.
  for (const auto& [a, b] : edges) g.targets_[cursor[b]++] = a;
  for (const auto& [a, b] : edges) g.targets_[cursor[a]++] = b;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = g.targets_.begin();
    if (!std::is_sorted(row + g.offsets_[i], row + g.offsets_[i + 1])) {
      std::sort(row + g.offsets_[i], row + g.offsets_[i + 1]);
    }
  }
  return g;
}

bool SimpleGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  const auto row = neighbors(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SimpleGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t a = 0; a < node_count(); ++a) {
    for (auto b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BipartiteGraph::edges()
    const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t v = 0; v < videos.size(); ++v) {
    for (auto k : commenters_of(v)) out.emplace_back(v, k);
  }
  return out;
}

SimpleGraph BipartiteGraph::to_simple() const {
  std::vector<std::string> ids = videos;
  ids.insert(ids.end(), commenters.begin(), commenters.end());
  const auto base = static_cast<std::uint32_t>(videos.size());
  auto pairs = edges();
  for (auto& p : pairs) p.second += base;
  return SimpleGraph::from_edges(std::move(ids), std::move(pairs));
}

SimpleGraph WeightedGraph::to_simple() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.emplace_back(e.a, e.b);
  return SimpleGraph::from_edges(nodes, std::move(pairs));
}

BipartiteGraph build_vcg(std::string_view channel_id, const Corpus& corpus,
                         const VcgOptions& options) {
  const auto channel = corpus.find_channel(channel_id);
  if (!channel) {
    throw Error(ErrorCode::UnknownId,
                fmt::format("unknown channel id '{}'", channel_id));
  }
  BipartiteGraph g;
  g.channel_id = std::string(channel_id);

  std::vector<VideoIdx> videos;
  for (auto v : corpus.channel_videos(*channel)) {
    if (options.include_zero_comment_videos ||
        !corpus.video_commenters(v).empty()) {
      videos.push_back(v);
    }
  }
  std::sort(videos.begin(), videos.end(), [&](VideoIdx x, VideoIdx y) {
    return corpus.videos()[x].id < corpus.videos()[y].id;
  });

  // Corpus commenter indices are already in id order, so the channel's
  // commenter list doubles as the local index.
  const auto members = corpus.channel_commenters(*channel);
  g.commenters.reserve(members.size());
  for (auto k : members) g.commenters.push_back(corpus.commenter_id(k));

  g.videos.reserve(videos.size());
  g.offsets.reserve(videos.size() + 1);
  for (auto v : videos) {
    g.videos.push_back(corpus.videos()[v].id);
    for (auto k : corpus.video_commenters(v)) {
      const auto it = std::lower_bound(members.begin(), members.end(), k);
      g.targets.push_back(static_cast<std::uint32_t>(it - members.begin()));
    }
    g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
  }
  return g;
}

WeightedGraph project_commenters(const BipartiteGraph& vcg,
                                 const ProjectionOptions& options) {
  const auto n_videos = vcg.videos.size();
  const auto n = vcg.commenters.size();
  for (std::size_t v = 0; v < n_videos; ++v) {
    const auto size = vcg.commenters_of(v).size();
    if (options.max_commenters_per_video != 0 &&
        size > options.max_commenters_per_video) {
      throw Error(ErrorCode::Guard,
                  fmt::format("video '{}' of channel '{}' has {} commenters, "
                              "above the projection cap of {}",
                              vcg.videos[v], vcg.channel_id, size,
                              options.max_commenters_per_video));
    }
  }

  // Commenter -> videos (transpose of the VCG rows).
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (auto k : vcg.targets) ++offsets[k + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::uint32_t> videos_of(vcg.targets.size());
  {
    auto cursor = offsets;
    for (std::uint32_t v = 0; v < n_videos; ++v) {
      for (auto k : vcg.commenters_of(v)) videos_of[cursor[k]++] = v;
    }
  }

  // Rows are processed in fixed blocks; each block accumulates a[b] counts
  // for b > a over every shared video, so a pair is counted once per video.
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<WeightedEdge>> partial(blocks);
  parallel_for(blocks, options.workers, [&](std::size_t block) {
    std::vector<std::uint32_t> count(n, 0);
    std::vector<std::uint32_t> touched;
    auto& out = partial[block];
    const auto first = block * kBlock;
    const auto last = std::min(n, first + kBlock);
    for (auto a = static_cast<std::uint32_t>(first); a < last; ++a) {
      for (auto i = offsets[a]; i < offsets[a + 1]; ++i) {
        const auto row = vcg.commenters_of(videos_of[i]);
        for (auto it = std::upper_bound(row.begin(), row.end(), a);
             it != row.end(); ++it) {
          if (count[*it]++ == 0) touched.push_back(*it);
        }
      }
      std::sort(touched.begin(), touched.end());
      for (auto b : touched) {
        out.push_back({a, b, static_cast<double>(count[b])});
        count[b] = 0;
      }
      touched.clear();
    }
  });

  WeightedGraph g;
  g.nodes = vcg.commenters;
  std::size_t total = 0;
  for (const auto& p : partial) total += p.size();
  g.edges.reserve(total);
  for (auto& p : partial) {
    g.edges.insert(g.edges.end(), p.begin(), p.end());
    std::vector<WeightedEdge>().swap(p);
  }
  return g;
}

AugmentedGraph build_avcg(const BipartiteGraph& vcg, const WeightedGraph& cpwg,
                          std::uint32_t threshold) {
  if (threshold < 1) {
    throw Error(ErrorCode::Config, "AVCG threshold must be at least 1");
  }
  if (cpwg.nodes != vcg.commenters) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("CPWG nodes do not match the commenters of the VCG "
                            "of channel '{}'",
                            vcg.channel_id));
  }
  AugmentedGraph g;
  g.video_count = vcg.videos.size();
  g.commenter_count = vcg.commenters.size();
  g.threshold = threshold;
  g.vcg_edge_count = vcg.edge_count();

  const auto base = static_cast<std::uint32_t>(g.video_count);
  auto pairs = vcg.edges();
  for (auto& p : pairs) p.second += base;
  for (const auto& e : cpwg.edges) {
    if (e.weight >= threshold) {
      pairs.emplace_back(e.a + base, e.b + base);
      ++g.commenter_edge_count;
    }
  }
  std::vector<std::string> ids = vcg.videos;
  ids.insert(ids.end(), vcg.commenters.begin(), vcg.commenters.end());
  g.graph = SimpleGraph::from_edges(std::move(ids), std::move(pairs));
  return g;
}

WeightedGraph build_channel_graph(const Corpus& corpus,
                                  std::span<const std::string> scope) {
  if (scope.empty()) {
    throw Error(ErrorCode::Config, "channel graph scope is empty");
  }
  WeightedGraph g;
  g.nodes.assign(scope.begin(), scope.end());
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  const auto s = g.nodes.size();

  // Corpus channel -> position in the scope, or -1 when out of scope.
  std::vector<std::int64_t> slot(corpus.channels().size(), -1);
  std::vector<std::uint64_t> sizes(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    const auto c = corpus.find_channel(g.nodes[i]);
    if (!c) {
      throw Error(ErrorCode::UnknownId,
                  fmt::format("unknown channel id '{}'", g.nodes[i]));
    }
    slot[*c] = static_cast<std::int64_t>(i);
    sizes[i] = corpus.channel_commenters(*c).size();
  }

  // Intersections via one pass over commenters: each commenter contributes
  // to every pair of scoped channels it touched.
  std::vector<std::uint64_t> shared(s * s, 0);
  std::vector<std::uint32_t> touched;
  for (CommenterIdx k = 0; k < corpus.commenter_count(); ++k) {
    touched.clear();
    for (auto v : corpus.commenter_videos(k)) {
      const auto pos = slot[corpus.video_channel(v)];
      if (pos >= 0) touched.push_back(static_cast<std::uint32_t>(pos));
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t i = 0; i < touched.size(); ++i) {
      for (std::size_t j = i + 1; j < touched.size(); ++j) {
        ++shared[touched[i] * s + touched[j]];
      }
    }
  }
  for (std::uint32_t a = 0; a < s; ++a) {
    for (std::uint32_t b = a + 1; b < s; ++b) {
      const auto inter = shared[a * s + b];
      if (inter == 0) continue;
      const auto uni = sizes[a] + sizes[b] - inter;
      g.edges.push_back(
          {a, b, static_cast<double>(inter) / static_cast<double>(uni)});
    }
  }
  return g;
}

std::vector<WeightedEdge> top_k_edges(const WeightedGraph& graph, std::size_t k,
                                      std::span<const ChannelKind> node_kinds) {
  if (k < 1) throw Error(ErrorCode::Config, "top-k requires k >= 1");
  if (!node_kinds.empty() && node_kinds.size() != graph.node_count()) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("{} node kinds for {} nodes", node_kinds.size(),
                            graph.node_count()));
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    if (!node_kinds.empty() && node_kinds[e.a] == node_kinds[e.b]) continue;
    edges.push_back(e);
  }
  const auto keep = std::min(k, edges.size());
  std::partial_sort(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(keep),
                    edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
                      if (x.weight != y.weight) return x.weight > y.weight;
                      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                    });
  edges.resize(keep);
  return edges;
}

std::vector<ChannelKind> node_kinds(const WeightedGraph& graph,
                                    const Corpus& corpus) {
  std::vector<ChannelKind> kinds;
  kinds.reserve(graph.node_count());
  for (const auto& id : graph.nodes) {
    const auto c = corpus.find_channel(id);
    if (!c) {
      throw Error(ErrorCode::UnknownId, fmt::format("unknown channel id '{}'", id));
    }
    kinds.push_back(corpus.channels()[*c].kind);
  }
  return kinds;
}

}  // namespace mediagraph
