#include <doctest.h>

#include "fixtures.hpp"
#include "mediagraph/error.hpp"
#include "mediagraph/metrics.hpp"
#include "oracles.hpp"

using namespace mediagraph;
using fixtures::Builder;

namespace {

using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

SimpleGraph graph(std::size_t n, Edges edges) {
  return SimpleGraph::from_edges(oracle::node_ids(n), std::move(edges));
}

SimpleGraph complete(std::size_t n) {
  Edges e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return graph(n, e);
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("density") {
    CHECK(density(complete(4)) == 1.0);
    CHECK(density(graph(4, {})) == 0.0);
    CHECK(density(6, 6) == doctest::Approx(0.4));
    CHECK_THROWS_AS(density(graph(1, {})), Error);
    try {
      (void)density(0, 0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UndefinedMetric);
    }
  }

  TEST_CASE("bipartite density") {
    auto corpus = fixtures::micro_example();
    CHECK(bipartite_density(build_vcg("ch", corpus)) == doctest::Approx(2.0 / 3.0));
    Builder b;
    b.channel("ch").video("v1", "ch").video("v2", "ch").video("v3", "ch");
    for (auto v : {"v1", "v2", "v3"}) b.comments(v, {"a", "b", "c"});
    CHECK(bipartite_density(build_vcg("ch", b.build())) == 1.0);
    BipartiteGraph empty;
    CHECK_THROWS_AS(bipartite_density(empty), Error);
  }

  TEST_CASE("transitivity") {
    CHECK(transitivity(complete(3)) == 1.0);
    CHECK(transitivity(graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == 0.0);
    CHECK(transitivity(graph(3, {})) == 0.0);
    auto vcg = build_vcg("ch", fixtures::micro_example());
    auto avcg = build_avcg(vcg, project_commenters(vcg));
    auto counts = count_triangles(avcg.graph);
    auto m = oracle::adjacency(avcg.graph.node_count(), avcg.graph.edges());
    auto [tri, trip] = oracle::triangles_and_triplets(m);
    CHECK(counts.triangles == tri);
    CHECK(counts.triplets == trip);
    // b, c, v1 and b, c, v2 close; 7 edges.
    CHECK(tri == 2);
  }

  TEST_CASE("components") {
    auto two = graph(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {5, 6}});
    auto comps = connected_components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<std::uint32_t>{3, 4, 5, 6});
    CHECK(connected_components(complete(5)).size() == 1);
    CHECK(connected_components(graph(3, {})).size() == 3);
    CHECK(connected_components(graph(0, {})).empty());
  }

  TEST_CASE("diameter") {
    CHECK(diameter(graph(4, {{0, 1}, {1, 2}, {2, 3}})) == 3);
    CHECK(diameter(complete(5)) == 1);
    CHECK(diameter(graph(1, {})) == 0);
    CHECK(diameter(graph(0, {})) == 0);
    // Largest component wins even when a smaller one is longer.
    auto g = graph(9, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {5, 6}});
    CHECK(diameter(g) == 1);
    DiameterOptions tight;
    tight.max_nodes = 3;
    try {
      (void)diameter(complete(4), tight);
      FAIL("expected a guard error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Guard);
    }
  }

  TEST_CASE("random graphs match the exhaustive oracles") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 40; ++round) {
      const std::size_t n = 2 + rng() % 40;
      const double p = static_cast<double>(rng() % 100) / 400.0;
      auto edges = oracle::random_edges(n, p, rng);
      auto g = graph(n, edges);
      auto m = oracle::adjacency(n, edges);
      CHECK(g.edge_count() == oracle::edge_count(m));
      auto [tri, trip] = oracle::triangles_and_triplets(m);
      auto t = count_triangles(g);
      CHECK(t.triangles == tri);
      CHECK(t.triplets == trip);
      auto comps = oracle::components(m);
      CHECK(connected_components(g) == comps);
      CHECK(diameter(g) == oracle::diameter_of(m, comps.front()));
    }
  }

  TEST_CASE("summary of the micro example") {
    auto s = summarize_channel("ch", fixtures::micro_example());
    REQUIRE(s);
    CHECK(s->component_count == 1);
    CHECK(s->vcg_density == doctest::Approx(0.4));
    CHECK(s->vcg_density_norm == doctest::Approx(2.0 / 3.0));
    CHECK(s->cpwg_edge_count == 3);
    CHECK(s->cpwg_density == doctest::Approx(1.0));
    CHECK(s->avcg_density == doctest::Approx(7.0 / 15.0));
    CHECK(s->avcg_density >= s->vcg_density);
  }

  TEST_CASE("summary of a single-video channel") {
    Builder b;
    b.channel("ch").video("v1", "ch").comments("v1", {"a", "b", "c"});
    auto s = summarize_channel("ch", b.build());
    REQUIRE(s);
    CHECK(s->avcg_diameter == 2);
    CHECK(s->avcg_transitivity == 0.0);
    CHECK(s->cpwg_density == 1.0);
  }

  TEST_CASE("two-clique channel reports the larger clique") {
    Builder b;
    b.channel("ch").video("v1", "ch").video("v2", "ch").video("v3", "ch");
    b.comments("v1", {"a", "b", "c"}).comments("v2", {"a", "b", "c"}).comments("v3", {"x"});
    auto s = summarize_channel("ch", b.build());
    REQUIRE(s);
    CHECK(s->component_count == 2);
    // v1, v2, a, b, c with a-b-c joined by heavy edges.
    CHECK(s->avcg_diameter == 2);
  }

  TEST_CASE("channel without comments is skipped") {
    Builder b;
    b.channel("ch").video("v1", "ch");
    CHECK_FALSE(summarize_channel("ch", b.build()).has_value());
  }

  TEST_CASE("single commenter leaves projection density undefined") {
    Builder b;
    b.channel("ch").video("v1", "ch").comments("v1", {"a"});
    auto s = summarize_channel("ch", b.build());
    REQUIRE(s);
    CHECK(std::isnan(s->cpwg_density));
  }
}
