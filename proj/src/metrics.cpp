#include "mediagraph/metrics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

constexpr std::int32_t kUnvisited = -1;

// Single-source BFS over a graph-sized distance buffer that is restored to
// kUnvisited afterwards, so repeated sweeps cost O(component).
class BfsRunner {
 public:
  explicit BfsRunner(const SimpleGraph& graph)
      : graph_(graph), dist_(graph.node_count(), kUnvisited),
        parent_(graph.node_count(), 0) {}

  /// Visits everything reachable from `source`; order() holds the visit
  /// order (non-decreasing distance) until the next run.
  std::uint32_t run(std::uint32_t source) {
    for (auto v : order_) dist_[v] = kUnvisited;
    order_.clear();
    dist_[source] = 0;
    parent_[source] = source;
    order_.push_back(source);
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const auto v = order_[head];
      for (auto w : graph_.neighbors(v)) {
        if (dist_[w] == kUnvisited) {
          dist_[w] = dist_[v] + 1;
          parent_[w] = v;
          order_.push_back(w);
        }
      }
    }
    return static_cast<std::uint32_t>(dist_[order_.back()]);
  }

  std::uint32_t farthest() const { return order_.back(); }
  std::int32_t distance(std::uint32_t v) const { return dist_[v]; }
  std::uint32_t parent(std::uint32_t v) const { return parent_[v]; }
  const std::vector<std::uint32_t>& order() const { return order_; }

 private:
  const SimpleGraph& graph_;
  std::vector<std::int32_t> dist_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> order_;
};

// Bit-parallel BFS from up to 64 sources inside one component; returns the
// largest eccentricity among the sources.
class MultiSourceBfs {
 public:
  MultiSourceBfs(const SimpleGraph& graph, std::span<const std::uint32_t> component)
      : graph_(graph), component_(component),
        seen_(graph.node_count(), 0), visit_(graph.node_count(), 0),
        next_(graph.node_count(), 0) {}

  std::uint32_t max_eccentricity(std::span<const std::uint32_t> sources) {
    std::uint32_t level = 0;
    std::uint32_t reached_level = 0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      seen_[sources[i]] |= std::uint64_t{1} << i;
      visit_[sources[i]] |= std::uint64_t{1} << i;
    }
    bool active = true;
    while (active) {
      ++level;
      for (auto v : component_) {
        if (const auto bits = visit_[v]) {
          for (auto w : graph_.neighbors(v)) next_[w] |= bits;
        }
      }
      active = false;
      for (auto v : component_) {
        const auto fresh = next_[v] & ~seen_[v];
        next_[v] = 0;
        visit_[v] = fresh;
        if (fresh) {
          seen_[v] |= fresh;
          active = true;
        }
      }
      if (active) reached_level = level;
    }
    for (auto v : component_) seen_[v] = 0;
    return reached_level;
  }

 private:
  const SimpleGraph& graph_;
  std::span<const std::uint32_t> component_;
  std::vector<std::uint64_t> seen_;
  std::vector<std::uint64_t> visit_;
  std::vector<std::uint64_t> next_;
};

}  // namespace

double density(std::size_t nodes, std::size_t edges) {
  if (nodes < 2) {
    throw Error(ErrorCode::UndefinedMetric,
                fmt::format("density is undefined for {} node(s)", nodes));
  }
  const double n = static_cast<double>(nodes);
  return 2.0 * static_cast<double>(edges) / (n * (n - 1.0));
}

double density(const SimpleGraph& graph) {
  return density(graph.node_count(), graph.edge_count());
}

double density(const WeightedGraph& graph) {
  return density(graph.node_count(), graph.edge_count());
}

double bipartite_density(const BipartiteGraph& graph) {
  if (graph.videos.empty() || graph.commenters.empty()) {
    throw Error(ErrorCode::UndefinedMetric,
                "bipartite density is undefined for an empty partition");
  }
  return static_cast<double>(graph.edge_count()) /
         (static_cast<double>(graph.videos.size()) *
          static_cast<double>(graph.commenters.size()));
}

TriangleCounts count_triangles(const SimpleGraph& graph) {
  const auto n = static_cast<std::uint32_t>(graph.node_count());
  TriangleCounts counts;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint64_t d = graph.degree(v);
    counts.triplets += d * (d - (d > 0 ? 1 : 0)) / 2;
  }

  // Orient each edge from lower to higher (degree, index) rank; every
  // triangle is then found exactly once from its lowest-ranked corner.
  auto ranks_below = [&](std::uint32_t a, std::uint32_t b) {
    const auto da = graph.degree(a), db = graph.degree(b);
    return da < db || (da == db && a < b);
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (auto w : graph.neighbors(v)) {
      if (ranks_below(v, w)) ++offsets[v + 1];
    }
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::uint32_t> out(offsets[n]);
  for (std::uint32_t v = 0; v < n; ++v) {
    auto cursor = offsets[v];
    for (auto w : graph.neighbors(v)) {
      if (ranks_below(v, w)) out[cursor++] = w;
    }
  }
  std::vector<std::uint8_t> mark(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) mark[out[i]] = 1;
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) {
      const auto v = out[i];
      for (auto j = offsets[v]; j < offsets[v + 1]; ++j) {
        counts.triangles += mark[out[j]];
      }
    }
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) mark[out[i]] = 0;
  }
  return counts;
}

double transitivity(const SimpleGraph& graph) {
  return count_triangles(graph).transitivity();
}

std::vector<std::vector<std::uint32_t>> connected_components(
    const SimpleGraph& graph) {
  const auto n = static_cast<std::uint32_t>(graph.node_count());
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::vector<std::uint32_t>> components;
  std::vector<std::uint32_t> min_node;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto w : graph.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    std::uint32_t smallest = comp.front();
    for (auto v : comp) {
      if (graph.id(v) < graph.id(smallest)) smallest = v;
    }
    min_node.push_back(smallest);
    components.push_back(std::move(comp));
  }
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (components[x].size() != components[y].size()) {
      return components[x].size() > components[y].size();
    }
    const auto& ix = graph.id(min_node[x]);
    const auto& iy = graph.id(min_node[y]);
    if (ix != iy) return ix < iy;
    return min_node[x] < min_node[y];
  });
  std::vector<std::vector<std::uint32_t>> sorted;
  sorted.reserve(components.size());
  for (auto i : order) sorted.push_back(std::move(components[i]));
  return sorted;
}

std::uint32_t diameter(const SimpleGraph& graph, const DiameterOptions& options) {
  if (graph.node_count() == 0) return 0;
  const auto components = connected_components(graph);
  const auto& comp = components.front();
  if (comp.size() > options.max_nodes) {
    throw Error(ErrorCode::Guard,
                fmt::format("largest component has {} nodes, above the exact "
                            "diameter limit of {}",
                            comp.size(), options.max_nodes));
  }
  if (comp.size() == 1) return 0;

  // Exact diameter by iterative fringe upper bounds: BFS from a central node
  // u, then evaluate eccentricities level by level from the outermost fringe
  // until the lower bound exceeds twice the next level.
  BfsRunner bfs(graph);
  std::uint32_t hub = comp.front();
  for (auto v : comp) {
    if (graph.degree(v) > graph.degree(hub)) hub = v;
  }
  bfs.run(hub);
  const auto a = bfs.farthest();
  std::uint32_t lower = bfs.run(a);
  const auto b = bfs.farthest();
  std::uint32_t center = b;
  for (std::uint32_t step = 0; step < lower / 2; ++step) center = bfs.parent(center);

  const std::uint32_t ecc_center = bfs.run(center);
  lower = std::max(lower, ecc_center);
  std::vector<std::vector<std::uint32_t>> fringe(ecc_center + 1);
  for (auto v : bfs.order()) fringe[bfs.distance(v)].push_back(v);

  MultiSourceBfs msbfs(graph, comp);
  std::uint32_t upper = 2 * ecc_center;
  for (std::uint32_t level = ecc_center; upper > lower && level > 0; --level) {
    const std::uint32_t next_bound = 2 * (level - 1);
    const auto& nodes = fringe[level];
    for (std::size_t i = 0; i < nodes.size(); i += 64) {
      const auto count = std::min<std::size_t>(64, nodes.size() - i);
      lower = std::max(lower, msbfs.max_eccentricity(
                                  std::span(nodes).subspan(i, count)));
      if (lower >= upper) return lower;
    }
    // Every unevaluated pair now lies within levels < `level`.
    if (lower > next_bound) return lower;
    upper = next_bound;
  }
  return lower;
}

NetworkSummary summarize_graphs(const BipartiteGraph& vcg,
                                const WeightedGraph& cpwg,
                                const AugmentedGraph& avcg,
                                const DiameterOptions& options) {
  NetworkSummary s;
  s.channel_id = vcg.channel_id;
  s.component_count = connected_components(avcg.graph).size();
  s.vcg_density =
      density(vcg.videos.size() + vcg.commenters.size(), vcg.edge_count());
  s.vcg_density_norm = bipartite_density(vcg);
  s.avcg_density = density(avcg.graph);
  s.avcg_transitivity = transitivity(avcg.graph);
  s.avcg_diameter = diameter(avcg.graph, options);
  s.cpwg_edge_count = cpwg.edge_count();
  s.cpwg_density = cpwg.node_count() < 2
                       ? std::numeric_limits<double>::quiet_NaN()
                       : density(cpwg);
  return s;
}

std::optional<NetworkSummary> summarize_channel(std::string_view channel_id,
                                                const Corpus& corpus,
                                                const SummaryOptions& options) {
  const auto vcg = build_vcg(channel_id, corpus, options.vcg);
  if (vcg.edge_count() == 0) return std::nullopt;
  const auto cpwg = project_commenters(vcg, options.projection);
  const auto avcg = build_avcg(vcg, cpwg, options.threshold);
  return summarize_graphs(vcg, cpwg, avcg, options.diameter);
}

}  // namespace mediagraph
