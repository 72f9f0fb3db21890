#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/synth.hpp"

using namespace mediagraph;
using fixtures::Builder;

namespace {

Gazetteer gaz() {
  return Gazetteer({{"Anne Gauche", {}, "A", Orientation::Left},
                    {"Bruno Centre", {}, "B", Orientation::Center},
                    {"Carla Droite", {}, "C", Orientation::Right},
                    {"Denis Extreme", {}, "D", Orientation::FarRight},
                    {"Eva Rouge", {}, "E", Orientation::FarLeft}});
}

VideoAnnotation ann(std::string id, std::vector<std::string> mentioned,
                    std::vector<std::string> interviewed = {}) {
  return {std::move(id), std::move(mentioned), std::move(interviewed), {}};
}

std::vector<std::string> authors(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

TEST_SUITE("coverage") {
  TEST_CASE("all centrist coverage") {
    Builder b;
    b.channel("l", ChannelKind::NM, Orientation::Left).channel("c").channel("r", ChannelKind::NM, Orientation::Right);
    b.video("a", "l").video("b", "c").video("d", "r");
    auto corpus = b.build();
    std::vector<VideoAnnotation> a{ann("a", {"Bruno Centre"}), ann("b", {"Bruno Centre"}),
                                   ann("d", {"Bruno Centre"})};
    auto rows = coverage_shares(corpus, a, gaz(), CoverageMode::Mentions);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
      CHECK(r.occurrences == 1);
      CHECK(r.shares[index_of(Orientation::Center)] == 100.0);
    }
    auto none = coverage_shares(corpus, a, gaz(), CoverageMode::Interviews);
    REQUIRE(none.size() == 3);
    for (const auto& r : none) {
      CHECK(r.occurrences == 0);
      for (double s : r.shares) CHECK(s == 0.0);
    }
  }

  TEST_CASE("planted mix on a center channel") {
    Builder b;
    b.channel("c");
    std::vector<VideoAnnotation> a;
    for (int i = 0; i < 100; ++i) {
      const auto id = "v" + std::to_string(i);
      b.video(id, "c");
      const char* who = i < 30 ? "Anne Gauche" : i < 80 ? "Bruno Centre" : "Denis Extreme";
      a.push_back(ann(id, {}, {who}));
    }
    auto rows = coverage_shares(b.build(), a, gaz(), CoverageMode::Interviews);
    const auto& center = rows[1];
    CHECK(center.nm_orientation == Orientation::Center);
    CHECK(center.occurrences == 100);
    CHECK(center.shares[index_of(Orientation::Left)] == doctest::Approx(30.0));
    CHECK(center.shares[index_of(Orientation::Center)] == doctest::Approx(50.0));
    CHECK(center.shares[index_of(Orientation::FarRight)] == doctest::Approx(20.0));
    double sum = 0;
    for (double s : center.shares) sum += s;
    CHECK(sum == doctest::Approx(100.0));
  }

  TEST_CASE("two interviewees count once each") {
    Builder b;
    b.channel("c").video("v", "c");
    std::vector<VideoAnnotation> a{ann("v", {}, {"Anne Gauche", "Carla Droite"})};
    auto rows = coverage_shares(b.build(), a, gaz(), CoverageMode::Interviews);
    CHECK(rows[1].occurrences == 2);
    CHECK(rows[1].counts[index_of(Orientation::Left)] == 1);
    CHECK(rows[1].counts[index_of(Orientation::Right)] == 1);
  }

  TEST_CASE("presence lift") {
    Builder b;
    b.channel("c").video("p", "c").video("n", "c");
    b.comments("p", authors("x", 186)).comments("n", authors("y", 100));
    std::vector<VideoAnnotation> a{ann("p", {"Bruno Centre"}), ann("n", {})};
    auto lift = presence_commenter_lift(b.build(), a);
    REQUIRE(lift.lift);
    CHECK(*lift.lift == doctest::Approx(1.86));
  }

  TEST_CASE("presence lift macro average and exclusions") {
    Builder b;
    b.channel("c1").channel("c2").channel("c3").channel("pp", ChannelKind::PP, Orientation::Left);
    b.video("p1", "c1").video("n1", "c1").video("p2", "c2").video("n2", "c2").video("only", "c3");
    b.video("pp1", "pp");
    b.comments("p1", authors("a", 4)).comments("n1", authors("b", 2));
    b.comments("p2", authors("c", 3)).comments("n2", authors("d", 3));
    b.comments("only", authors("e", 3));
    std::vector<VideoAnnotation> a{ann("p1", {"Anne Gauche"}), ann("n1", {}),
                                   ann("p2", {"Anne Gauche"}), ann("n2", {}), ann("only", {})};
    auto lift = presence_commenter_lift(b.build(), a);
    REQUIRE(lift.lift);
    CHECK(*lift.lift == doctest::Approx(1.5));
    CHECK(lift.channels.size() == 2);
    CHECK(lift.excluded == std::vector<std::string>{"c3"});
  }

  TEST_CASE("no qualifying channel gives no lift") {
    Builder b;
    b.channel("c").video("n", "c").comments("n", {"a"});
    std::vector<VideoAnnotation> a{ann("n", {})};
    CHECK_FALSE(presence_commenter_lift(b.build(), a).lift.has_value());
  }

  TEST_CASE("presence overlap cell") {
    Builder b;
    b.channel("nm").channel("fl", ChannelKind::PP, Orientation::FarLeft);
    b.video("v", "nm").video("w", "fl").comments("v", {"a", "b"}).comments("w", {"b", "c"});
    std::vector<VideoAnnotation> a{ann("v", {})};
    auto o = presence_overlap(b.build(), a, gaz());
    const auto none = static_cast<std::size_t>(PresenceCategory::NoPolitician);
    CHECK(*o.mean[none][index_of(Orientation::FarLeft)] == 50.0);
    CHECK(*o.mean[none][index_of(Orientation::Right)] == 0.0);
    CHECK(o.channels[none] == 1);
    const auto any = static_cast<std::size_t>(PresenceCategory::AnyPolitician);
    CHECK(o.channels[any] == 0);
    CHECK_FALSE(o.mean[any][0].has_value());
    REQUIRE(o.per_channel.size() == 1);
    CHECK(std::isnan(o.per_channel[0].percent[any][0]));
  }

  TEST_CASE("planted presence") {
    auto p = generate_planted_presence({}, 9);
    auto o = presence_overlap(p.corpus, p.annotations, p.gazetteer);
    const auto fr = static_cast<std::size_t>(PresenceCategory::FarRight);
    const auto none = static_cast<std::size_t>(PresenceCategory::NoPolitician);
    CHECK(*o.mean[fr][index_of(Orientation::FarRight)] == doctest::Approx(100.0));
    for (auto orient : kAllOrientations)
      CHECK(std::abs(*o.mean[none][index_of(orient)] - p.background_percent) < 1e-9);
    CHECK(category_for(Orientation::FarRight) == PresenceCategory::FarRight);
  }

  TEST_CASE("annotation store round trip and corpus annotation") {
    Builder b;
    b.channel("c").channel("pp", ChannelKind::PP, Orientation::Right);
    b.video("v1", "c").video("v2", "c").video("v3", "pp");
    b.videos_[0].title = "Anne Gauche face à Denis Extreme";
    b.videos_[2].title = "Anne Gauche";
    auto corpus = b.build();
    auto g = gaz();
    GazetteerBackend backend(g);
    auto a = annotate_corpus(corpus, g, backend);
    REQUIRE(a.size() == 2);
    CHECK(a[0].video_id == "v1");
    CHECK(a[0].mentioned == std::vector<std::string>{"Anne Gauche", "Denis Extreme"});
    CHECK(a[0].interviewed == a[0].mentioned);
    CHECK(a[1].mentioned.empty());

    const auto dir = fixtures::temp_dir("ann");
    write_annotations(dir / "a.jsonl", a);
    CHECK(read_annotations(dir / "a.jsonl") == a);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("annotation cache skips the backend") {
    Builder b;
    b.channel("c").video("v1", "c");
    auto corpus = b.build();
    auto g = gaz();
    FixtureBackend empty;  // every call would be a failure
    std::vector<VideoAnnotation> cache{ann("v1", {}, {"Bruno Centre"})};
    AnnotateOptions opt;
    opt.cache = cache;
    auto a = annotate_corpus(corpus, g, empty, opt);
    REQUIRE(a.size() == 1);
    CHECK(a[0].interviewed == std::vector<std::string>{"Bruno Centre"});
    CHECK(a[0].flags.empty());
  }
}
