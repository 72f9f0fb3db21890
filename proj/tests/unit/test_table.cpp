#include <doctest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"
#include "mediagraph/metrics.hpp"
#include "mediagraph/report.hpp"
#include "mediagraph/synth.hpp"
#include "mediagraph/table.hpp"

using namespace mediagraph;

namespace {

const Table* find(const NamedTables& tables, std::string_view name) {
  for (const auto& [n, t] : tables)
    if (n == name) return &t;
  return nullptr;
}

}  // namespace

TEST_SUITE("table") {
  TEST_CASE("number styles") {
    CHECK(format_number(0.000291, NumberStyle::Display) == "2.91e-04");
    CHECK(format_number(0.4, NumberStyle::Display) == "0.40");
    CHECK(format_number(98.6, NumberStyle::Display) == "98.60");
    CHECK(format_number(0.0, NumberStyle::Display) == "0");
    CHECK(format_number(-0.005, NumberStyle::Display) == "-5.00e-03");
    CHECK(format_number(0.1, NumberStyle::Machine) == "0.1");
    CHECK(format_number(2.0 / 3.0, NumberStyle::Machine) == "0.6666666666666666");
    CHECK(format_number(std::nan(""), NumberStyle::Machine).empty());
  }

  TEST_CASE("csv escaping and metadata") {
    Table t;
    t.add_meta("note", "hello");
    t.columns = {"name", "value"};
    t.rows.push_back({std::string("a,\"b\""), std::int64_t{3}});
    t.rows.push_back({std::monostate{}, 0.5});
    CHECK(to_csv(t) == "# note: hello\nname,value\n\"a,\"\"b\"\"\",3\n,0.5\n");
  }

  TEST_CASE("csv round trip") {
    Table t;
    t.add_meta("k", "v");
    t.columns = {"s", "i", "d", "e"};
    t.rows.push_back({std::string("x y"), std::int64_t{-4}, 0.125, std::monostate{}});
    const auto dir = fixtures::temp_dir("table");
    write_csv(dir / "t.csv", t);
    auto back = read_csv(dir / "t.csv");
    CHECK(back.metadata == t.metadata);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == 1);
    CHECK(std::get<std::string>(back.rows[0][0]) == "x y");
    CHECK(std::get<std::int64_t>(back.rows[0][1]) == -4);
    CHECK(std::get<double>(back.rows[0][2]) == 0.125);
    CHECK(std::holds_alternative<std::monostate>(back.rows[0][3]));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("json form") {
    Table t;
    t.add_meta("k", "v");
    t.columns = {"a", "b"};
    t.rows.push_back({std::int64_t{1}, std::nan("")});
    auto j = nlohmann::json::parse(to_json(t));
    CHECK(j["metadata"]["k"] == "v");
    CHECK(j["columns"][1] == "b");
    CHECK(j["rows"][0][0] == 1);
    CHECK(j["rows"][0][1].is_null());
  }
}

TEST_SUITE("report") {
  TEST_CASE("network table has the summary columns in order") {
    auto s = summarize_channel("ch", fixtures::micro_example());
    REQUIRE(s);
    std::vector<NetworkSummary> rows{*s};
    auto t = network_summary_table(rows, 2);
    CHECK(t.columns == std::vector<std::string>(kNetworkColumns.begin(), kNetworkColumns.end()));
    REQUIRE(t.rows.size() == 1);
    CHECK(std::get<std::string>(t.rows[0][0]) == "ch");
    CHECK(std::get<double>(t.rows[0][2]) == doctest::Approx(0.4));
    std::vector<GroupKey> keys{{ChannelKind::NM, Orientation::Center}};
    auto g = network_group_table(rows, keys, 2);
    CHECK(g.columns.front() == "kind");
    CHECK(g.rows.size() == 1);
  }

  TEST_CASE("empty corpus gives header-only tables") {
    Corpus empty = Corpus::build({}, {}, {});
    const auto window = CollectionWindow::parse("2024-03-01", "2024-07-14");
    for (const auto& [name, t] : activity_tables(empty, window)) {
      CHECK_FALSE(t.columns.empty());
      if (name == "shorts_correlation") continue;  // always one row per kind
      CHECK(t.rows.empty());
    }
    auto audience = audience_tables(empty);
    CHECK(find(audience, "overlap")->rows.empty());
    std::vector<NetworkSummary> none;
    CHECK(network_summary_table(none, 2).rows.empty());
    auto csv = to_csv(network_summary_table(none, 2));
    CHECK(csv.find("channel_id,component_count") != std::string::npos);
  }

  TEST_CASE("activity tables on a synthetic corpus") {
    auto c = SynthConfig::all_groups(2);
    c.commenter_pool = 50;
    auto corpus = generate_synthetic(c, 3);
    auto tables = activity_tables(corpus, c.window);
    auto* channels = find(tables, "activity_channels");
    REQUIRE(channels);
    CHECK(channels->rows.size() == corpus.channels().size());
    auto* groups = find(tables, "activity_groups");
    CHECK(groups->rows.size() == 8);
    auto* corr = find(tables, "shorts_correlation");
    CHECK(corr->rows.size() == 3);
    CHECK(find(tables, "ccdf_nm_left_uploads") != nullptr);
    CHECK(find(tables, "ccdf_pp_far_right_views") != nullptr);
  }

  TEST_CASE("coverage and channel edge tables") {
    auto p = generate_planted_presence({}, 1);
    auto tables = coverage_tables(p.corpus, p.annotations, p.gazetteer);
    for (auto name : {"coverage_mentions", "coverage_interviews", "presence_lift", "presence_overlap"})
      CHECK(find(tables, name) != nullptr);
    CHECK(find(tables, "coverage_mentions")->rows.size() == 3);
    std::vector<std::string> scope;
    for (const auto& ch : p.corpus.channels()) scope.push_back(ch.id);
    auto edges = channel_edges_table(build_channel_graph(p.corpus, scope), p.corpus, 3);
    CHECK(edges.rows.size() <= 3);
  }
}
