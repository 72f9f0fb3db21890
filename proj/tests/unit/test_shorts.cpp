#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <set>

#include "fixtures.hpp"
#include "mediagraph/activity.hpp"
#include "mediagraph/shorts.hpp"

using namespace mediagraph;
using fixtures::Builder;

namespace {

// Resolver answering from a fixed set of Short ids; ids in `down` are
// unreachable.
struct FakeResolver {
  std::set<std::string> shorts;
  std::set<std::string> down;
  std::shared_ptr<std::atomic<int>> calls = std::make_shared<std::atomic<int>>(0);

  ShortsResolver get() const {
    return [*this](std::string_view id) {
      ++*calls;
      ShortsProbeResult r;
      r.video_id = std::string(id);
      if (down.count(r.video_id)) return r;
      r.status = ProbeStatus::Resolved;
      r.final_url = shorts.count(r.video_id) ? "https://host/shorts/" + r.video_id
                                             : "https://host/watch?v=" + r.video_id;
      return r;
    };
  }
};

Corpus ten_videos(ShortsLabel label = ShortsLabel::Unlabeled) {
  Builder b;
  b.channel("ch");
  for (int i = 0; i < 10; ++i) b.video("v" + std::to_string(i), "ch", 0, label);
  return b.build();
}

}  // namespace

TEST_SUITE("shorts") {
  TEST_CASE("classification by final url") {
    auto fixed = [](std::string url, ProbeStatus status) {
      return ShortsResolver([=](std::string_view id) {
        return ShortsProbeResult{std::string(id), url, status};
      });
    };
    CHECK(classify_video("abc", fixed("https://host/shorts/abc", ProbeStatus::Resolved)) ==
          ShortsLabel::Short);
    CHECK(classify_video("abc", fixed("https://host/watch?v=abc", ProbeStatus::Resolved)) ==
          ShortsLabel::Regular);
    CHECK(classify_video("abc", fixed("", ProbeStatus::Unreachable)) == ShortsLabel::Unlabeled);
  }

  TEST_CASE("unreachable probe is retried once") {
    int calls = 0;
    ShortsResolver r = [&](std::string_view id) {
      ++calls;
      if (calls == 1) return ShortsProbeResult{std::string(id), "", ProbeStatus::Unreachable};
      return ShortsProbeResult{std::string(id), "https://h/shorts/x", ProbeStatus::Resolved};
    };
    CHECK(classify_video("x", r) == ShortsLabel::Short);
    CHECK(calls == 2);
  }

  TEST_CASE("four of ten shorts gives forty percent") {
    FakeResolver fake;
    fake.shorts = {"v0", "v3", "v5", "v8"};
    auto out = label_corpus(ten_videos(), fake.get());
    CHECK(out.counts.short_count == 4);
    CHECK(out.counts.regular == 6);
    auto m = upload_metrics("ch", out.corpus, CollectionWindow::parse("2024-03-01", "2024-07-14"));
    REQUIRE(m.percent_shorts);
    CHECK(*m.percent_shorts == doctest::Approx(40.0));
  }

  TEST_CASE("one failure leaves one unlabeled video outside the denominator") {
    FakeResolver fake;
    fake.shorts = {"v0", "v1", "v2"};
    fake.down = {"v9"};
    auto out = label_corpus(ten_videos(), fake.get());
    CHECK(out.counts.unlabeled == 1);
    auto m = upload_metrics("ch", out.corpus, CollectionWindow::parse("2024-03-01", "2024-07-14"));
    CHECK(m.labeled_count == 9);
    CHECK(*m.percent_shorts == doctest::Approx(100.0 * 3 / 9));
  }

  TEST_CASE("prelabeled videos are not probed and labelling is idempotent") {
    FakeResolver fake;
    auto out = label_corpus(ten_videos(ShortsLabel::Regular), fake.get());
    CHECK(*fake.calls == 0);
    CHECK(out.counts.probed == 0);

    FakeResolver second;
    second.shorts = {"v1"};
    auto once = label_corpus(ten_videos(), second.get(), 3);
    CHECK(*second.calls == 10);
    auto twice = label_corpus(once.corpus, second.get());
    CHECK(*second.calls == 10);
    for (std::size_t i = 0; i < 10; ++i)
      CHECK(once.corpus.videos()[i].shorts_label == twice.corpus.videos()[i].shorts_label);
  }

  TEST_CASE("http resolver follows redirects") {
    httplib::Server server;
    server.Get(R"(/shorts/(\w+))", [](const httplib::Request& req, httplib::Response& res) {
      const auto id = req.matches[1].str();
      if (id.rfind("s", 0) == 0) {
        res.set_content("short", "text/plain");
      } else {
        res.set_redirect("/watch?v=" + id);
      }
    });
    server.Get("/watch", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("regular", "text/plain");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpResolverConfig cfg;
    cfg.url_template = "http://127.0.0.1:" + std::to_string(port) + "/shorts/{id}";
    cfg.delay = std::chrono::milliseconds(0);
    cfg.timeout = std::chrono::seconds(5);
    auto resolver = make_http_resolver(cfg);
    CHECK(classify_video("s1", resolver) == ShortsLabel::Short);
    CHECK(classify_video("r1", resolver) == ShortsLabel::Regular);
    auto probe = resolver("r2");
    CHECK(probe.final_url.find("/watch?v=r2") != std::string::npos);

    server.stop();
    th.join();
    auto dead = resolver("s1");
    CHECK(dead.status == ProbeStatus::Unreachable);
  }
}
