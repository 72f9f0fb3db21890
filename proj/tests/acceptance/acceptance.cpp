// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "mediagraph/audience.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/extraction.hpp"
#include "mediagraph/graph.hpp"
#include "mediagraph/metrics.hpp"
#include "mediagraph/stats.hpp"
#include "mediagraph/synth.hpp"
#include "oracles.hpp"

using namespace mediagraph;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Collects the first few mismatches so a failing line says why.
struct Checker {
  std::size_t failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Result result(std::string detail) const {
    if (failures == 0) return {true, std::move(detail)};
    return {false, fmt::format("{} mismatches, first: {}", failures, first)};
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BipartiteGraph random_bipartite(std::mt19937_64& rng) {
  BipartiteGraph g;
  const std::size_t videos = 1 + rng() % 50;
  const std::size_t commenters = 1 + rng() % 200;
  const double p = std::uniform_real_distribution<double>(0.01, 0.3)(rng);
  g.channel_id = "ch";
  for (std::size_t v = 0; v < videos; ++v) g.videos.push_back(fmt::format("v{:03}", v));
  for (std::size_t k = 0; k < commenters; ++k) g.commenters.push_back(fmt::format("u{:04}", k));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t v = 0; v < videos; ++v) {
    for (std::uint32_t k = 0; k < commenters; ++k)
      if (u(rng) < p) g.targets.push_back(k);
    g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
  }
  return g;
}

Result projection_oracle() {
  std::mt19937_64 rng(20240301);
  Checker c;
  double library_time = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    auto vcg = random_bipartite(rng);
    const auto t1 = Clock::now();
    auto cpwg = project_commenters(vcg);
    library_time += seconds_since(t1);

    std::map<std::string, std::set<std::string>> videos_of;
    for (std::size_t v = 0; v < vcg.videos.size(); ++v)
      for (auto k : vcg.commenters_of(v)) videos_of[vcg.commenters[k]].insert(vcg.videos[v]);
    auto expected = oracle::pairwise_projection(videos_of);
    std::map<std::pair<std::string, std::string>, std::uint64_t> got;
    for (const auto& e : cpwg.edges)
      got[{cpwg.nodes[e.a], cpwg.nodes[e.b]}] = static_cast<std::uint64_t>(e.weight);
    c.expect(got == expected, fmt::format("graph {} edge map differs", i));
  }
  const double total = seconds_since(t0);
  c.expect(total < 5.0, fmt::format("took {:.2f} s", total));
  return c.result(fmt::format("200 graphs, {:.3f} s projecting, {:.2f} s total (limit 5 s)",
                              library_time, total));
}

Result metric_oracles() {
  std::mt19937_64 rng(777);
  Checker c;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 99;
    const double p = std::uniform_real_distribution<double>(0.0, 0.15)(rng);
    auto edges = oracle::random_edges(n, p, rng);
    auto g = SimpleGraph::from_edges(oracle::node_ids(n), edges);
    auto m = oracle::adjacency(n, edges);

    const auto e = oracle::edge_count(m);
    c.expect(g.edge_count() == e, fmt::format("graph {} edge count", i));
    c.expect(density(g) == static_cast<double>(2 * e) / static_cast<double>(n * (n - 1)),
             fmt::format("graph {} density", i));
    auto [tri, trip] = oracle::triangles_and_triplets(m);
    auto t = count_triangles(g);
    c.expect(t.triangles == tri && t.triplets == trip, fmt::format("graph {} triangles", i));
    const double expected_t =
        trip == 0 ? 0.0 : static_cast<double>(3 * tri) / static_cast<double>(trip);
    c.expect(transitivity(g) == expected_t, fmt::format("graph {} transitivity", i));
    auto comps = oracle::components(m);
    c.expect(connected_components(g) == comps, fmt::format("graph {} components", i));
    c.expect(diameter(g) == oracle::diameter_of(m, comps.front()),
             fmt::format("graph {} diameter", i));
  }
  return c.result("200 graphs up to 100 nodes; density, transitivity, components, diameter exact");
}

std::set<std::pair<std::string, std::string>> id_edges(const SimpleGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [a, b] : g.edges()) {
    auto x = g.id(a), y = g.id(b);
    if (y < x) std::swap(x, y);
    out.insert({x, y});
  }
  return out;
}

Result avcg_law() {
  Checker c;
  std::size_t channels = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto config = SynthConfig::all_groups(3);
    config.videos_per_channel = 12;
    config.commenter_pool = 400;
    config.in_group_probability = 0.08;
    config.cross_group_probability = 0.01;
    config.repeat_probability = 0.2;
    auto corpus = generate_synthetic(config, seed);
    for (const auto& ch : corpus.channels()) {
      auto vcg = build_vcg(ch.id, corpus);
      if (vcg.edge_count() == 0) continue;
      ++channels;
      auto cpwg = project_commenters(vcg);
      auto base = id_edges(vcg.to_simple());
      auto heavy = base, all = base;
      for (const auto& e : cpwg.edges) {
        all.insert({cpwg.nodes[e.a], cpwg.nodes[e.b]});
        if (e.weight >= 2) heavy.insert({cpwg.nodes[e.a], cpwg.nodes[e.b]});
      }
      auto avcg = build_avcg(vcg, cpwg, 2);
      c.expect(id_edges(avcg.graph) == heavy, ch.id + " threshold 2 edge set");
      const auto nodes = vcg.videos.size() + vcg.commenters.size();
      if (nodes >= 2) {
        c.expect(density(avcg.graph) >= density(nodes, vcg.edge_count()),
                 ch.id + " density bound");
      }
      c.expect(id_edges(build_avcg(vcg, cpwg, 1).graph) == all, ch.id + " threshold 1");
    }
  }
  return c.result(fmt::format("{} synthetic channels", channels));
}

Result micro_example() {
  Checker c;
  auto corpus = fixtures::micro_example();
  auto vcg = build_vcg("ch", corpus);
  auto cpwg = project_commenters(vcg);
  auto avcg = build_avcg(vcg, cpwg);
  auto s = summarize_graphs(vcg, cpwg, avcg);
  c.expect(std::abs(s.vcg_density - 0.4) < 1e-12, fmt::format("vcg_density {}", s.vcg_density));
  c.expect(std::abs(s.vcg_density_norm - 2.0 / 3.0) < 1e-12,
           fmt::format("bipartite density {}", s.vcg_density_norm));
  std::map<std::pair<std::string, std::string>, double> w;
  for (const auto& e : cpwg.edges) w[{cpwg.nodes[e.a], cpwg.nodes[e.b]}] = e.weight;
  const std::map<std::pair<std::string, std::string>, double> expected{
      {{"a", "b"}, 1}, {{"a", "c"}, 1}, {{"b", "c"}, 2}};
  c.expect(w == expected, "CPWG edges");
  c.expect(s.cpwg_density == 1.0, fmt::format("cpwg_density {}", s.cpwg_density));
  auto extra = id_edges(avcg.graph);
  for (const auto& e : id_edges(vcg.to_simple())) extra.erase(e);
  c.expect(extra == std::set<std::pair<std::string, std::string>>{{"b", "c"}}, "AVCG extra edges");
  return c.result("vcg 0.4, bipartite 2/3, CPWG {ab:1, ac:1, bc:2}, CPWG density 1, AVCG adds bc");
}

Result taxonomy_partition() {
  Checker c;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    TaxonomyPlan plan;
    for (auto& n : plan.group_sizes) n = rng() % 40;
    plan.group_sizes[0] += 1;
    auto planted = generate_planted_taxonomy(plan, seed);
    auto rows = taxonomy_report(planted.corpus);
    double sum = 0.0;
    std::size_t total = 0;
    for (auto n : plan.group_sizes) total += n;
    for (std::size_t g = 0; g < 5; ++g) {
      sum += rows[g].share_percent;
      c.expect(rows[g].commenters == plan.group_sizes[g],
               fmt::format("seed {} group {} count {} vs {}", seed, g, rows[g].commenters,
                           plan.group_sizes[g]));
      const double expected = 100.0 * static_cast<double>(plan.group_sizes[g]) / total;
      c.expect(std::abs(rows[g].share_percent - expected) < 1e-9,
               fmt::format("seed {} group {} share", seed, g));
    }
    c.expect(std::abs(sum - 100.0) <= 1e-9, fmt::format("seed {} sum {}", seed, sum));
  }
  return c.result("100 seeds; shares sum to 100 +/- 1e-9 and match planted sizes");
}

Result overlap_matrix_check() {
  Checker c;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto config = SynthConfig::all_groups(2);
    config.commenter_pool = 300;
    config.in_group_probability = 0.1;
    config.cross_group_probability = 0.01 * static_cast<double>(seed % 5);
    auto corpus = generate_synthetic(config, seed);
    auto m = overlap_matrix(corpus);
    auto sets = oracle::group_commenters(corpus);
    for (std::size_t y = 0; y < m.size(); ++y) {
      c.expect(m.cell(y, y) == 100.0, fmt::format("seed {} diagonal {}", seed, y));
      const auto& sy = sets.at({static_cast<int>(m.groups[y].kind),
                                static_cast<int>(m.groups[y].orientation)});
      for (std::size_t x = 0; x < m.size(); ++x) {
        const auto& sx = sets.at({static_cast<int>(m.groups[x].kind),
                                  static_cast<int>(m.groups[x].orientation)});
        std::size_t common = 0;
        for (const auto& a : sy) common += sx.count(a);
        const double expected = 100.0 * static_cast<double>(common) / sy.size();
        const double cell = m.cell(y, x);
        c.expect(cell >= 0.0 && cell <= 100.0, fmt::format("seed {} cell range", seed));
        c.expect(std::abs(cell - expected) < 1e-12,
                 fmt::format("seed {} cell ({}, {}) {} vs {}", seed, y, x, cell, expected));
      }
    }
  }
  return c.result("20 corpora; diagonal 100, cells in [0, 100], recomputed from commenter sets");
}

Result appendix_fixtures() {
  Checker c;
  Gazetteer g({{"Emmanuel Macron", {}, "RE", Orientation::Center},
               {"Jean Dupont", {}, "X", Orientation::Right},
               {"Simone Veil", {}, "UDF", Orientation::Center}});
  Video interview;
  interview.id = "a1";
  interview.title = "Interview exclusive avec Emmanuel Macron et Jean Dupont";
  interview.description =
      "Le président Emmanuel Macron s’entretient avec Jean Dupont sur les enjeux actuels.";
  Video homage;
  homage.id = "a2";
  homage.title = "Hommage à Simone Veil";
  homage.description = "Le président a évoqué Simone Veil dans son discours.";

  const auto dir = fixtures::temp_dir("appendix");
  {
    std::ofstream out(dir / "fixture.jsonl");
    auto line = [](const Video& v, const std::string& output) {
      return nlohmann::json{{"prompt", make_extraction_request(v).prompt_text},
                            {"output", output}}
                 .dump() +
             "\n";
    };
    out << line(interview, R"({"Invited": ["Emmanuel Macron", "Jean Dupont"]})");
    out << line(homage, R"({"Invited": []})");
  }
  auto backend = FixtureBackend::load(dir / "fixture.jsonl");
  fs::remove_all(dir);

  auto names = [&](const InterviewExtraction& x) {
    std::vector<std::string> out;
    for (auto i : x.politicians) out.push_back(g[i].full_name);
    return out;
  };
  auto a = extract_interviewees(interview, backend, g);
  auto b = extract_interviewees(homage, backend, g);
  c.expect(names(a) == std::vector<std::string>{"Emmanuel Macron", "Jean Dupont"} &&
               a.flags.empty(),
           "example 1");
  c.expect(b.politicians.empty() && b.flags.empty(), "example 2");
  return c.result("[Emmanuel Macron, Jean Dupont] and [] from replayed outputs");
}

Result pearson_check() {
  Checker c;
  std::vector<double> x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = i;
    y[i] = 2.0 * i + 1.0;
  }
  c.expect(std::abs(pearson(x, y).r - 1.0) < 1e-12, "linear data");
  std::mt19937_64 rng(59);
  std::normal_distribution<double> d(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = 3 + rng() % 200;
    std::vector<double> a(n), b(n);
    const double slope = d(rng);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 50.0 + 10.0 * d(rng);
      b[i] = slope * a[i] + 5.0 * d(rng);
    }
    const double r = pearson(a, b).r;
    worst = std::max(worst, std::abs(r - oracle::pearson_r(a, b)));
    std::vector<double> a2(n), b2(n);
    const double k1 = 0.5 + std::abs(d(rng)), k2 = -(0.5 + std::abs(d(rng)));
    for (std::size_t i = 0; i < n; ++i) {
      a2[i] = k1 * a[i] + 3.0;
      b2[i] = k2 * b[i] - 7.0;
    }
    const auto r2 = pearson(a2, b2);
    c.expect(std::abs(r2.r + r) < 1e-9, fmt::format("sample {} affine invariance", s));
    c.expect(std::abs(r2.p - pearson(a, b).p) < 1e-9, fmt::format("sample {} affine p", s));
  }
  c.expect(worst < 1e-9, fmt::format("oracle difference {}", worst));
  return c.result(fmt::format("r = 1 on linear data; max |r - oracle| = {:.1e} over 100 samples; "
                              "affine invariant",
                              worst));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result determinism_performance() {
  Checker c;
  const auto dir = fixtures::temp_dir("scale");
  const std::string cli = MEDIAGRAPH_CLI;
  const auto d = dir.string();
  // 8 groups x 5 channels x 250 videos = 10k videos; about 500k comments
  // from 50k commenters.
  c.expect(shell(cli + " -q synth --out " + d + "/corpus --seed 7 --channels-per-group 5 "
                       "--videos-per-channel 250 --commenters 50000 --p-in 0.0064 "
                       "--p-cross 0.0002 --p-repeat 0.025") == 0,
           "synth failed");
  std::ofstream(dir / "pipeline.conf") << "corpus_dir = corpus\n";
  double worst = 0.0;
  for (int parallel : {1, 4}) {
    const auto t0 = Clock::now();
    const int rc = shell(fmt::format("{} -q run --config {}/pipeline.conf --parallel {} --out {}/out{}",
                                     cli, d, parallel, d, parallel));
    const double took = seconds_since(t0);
    worst = std::max(worst, took);
    c.expect(rc == 0, fmt::format("run --parallel {} exit {}", parallel, rc));
    c.expect(took < 60.0, fmt::format("run --parallel {} took {:.1f} s", parallel, took));
  }
  const auto m1 = slurp(dir / "out1/manifest.json");
  const auto m4 = slurp(dir / "out4/manifest.json");
  c.expect(!m1.empty() && m1 == m4, "manifests differ");
  std::size_t comments = 0;
  {
    std::ifstream in(dir / "corpus/comments.jsonl");
    std::string line;
    while (std::getline(in, line)) ++comments;
  }
  fs::remove_all(dir);
  return c.result(fmt::format("{} comments; slowest run {:.1f} s (limit 60 s); manifests for "
                              "--parallel 1 and 4 byte-identical",
                              comments, worst));
}

Result presence_overlap_check() {
  Checker c;
  const auto fr = static_cast<std::size_t>(PresenceCategory::FarRight);
  const auto none = static_cast<std::size_t>(PresenceCategory::NoPolitician);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PresencePlan plan;
    plan.nm_channels = 2 + seed;
    plan.commenters_per_plain_video = 10 + seed;
    plan.background_members = 3 + seed;
    auto p = generate_planted_presence(plan, seed);
    auto o = presence_overlap(p.corpus, p.annotations, p.gazetteer);
    const auto& cell = o.mean[fr][index_of(Orientation::FarRight)];
    c.expect(cell && std::abs(*cell - 100.0) < 1e-9, fmt::format("seed {} far-right cell", seed));
    for (auto orient : kAllOrientations) {
      const auto& v = o.mean[none][index_of(orient)];
      c.expect(v && std::abs(*v - p.background_percent) <= 1e-9,
               fmt::format("seed {} no-politician {} = {} vs {}", seed, to_string(orient),
                           v ? *v : -1.0, p.background_percent));
    }
  }
  return c.result("(FarRight, FarRight) = 100; no-politician cells at planted background +/- 1e-9");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"projection oracle", projection_oracle},
      {"metric oracles", metric_oracles},
      {"AVCG law", avcg_law},
      {"worked micro-example", micro_example},
      {"taxonomy partition", taxonomy_partition},
      {"overlap matrix", overlap_matrix_check},
      {"interview fixtures", appendix_fixtures},
      {"pearson", pearson_check},
      {"determinism/performance", determinism_performance},
      {"presence-overlap consistency", presence_overlap_check},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}
