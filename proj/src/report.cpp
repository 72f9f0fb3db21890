#include "mediagraph/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "mediagraph/activity.hpp"
#include "mediagraph/audience.hpp"
#include "mediagraph/error.hpp"
#include "mediagraph/stats.hpp"

namespace mediagraph {
namespace {

Cell num(double v) { return v; }
Cell num(std::optional<double> v) {
  if (!v) return std::monostate{};
  return *v;
}
Cell count(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell text(std::string_view s) { return std::string(s); }

void add_network_meta(Table& t, std::uint32_t threshold) {
  t.add_meta("avcg_threshold", fmt::format("{}", threshold));
  t.add_meta("components", "connected components of the AVCG");
  t.add_meta("diameter", "exact, on the largest AVCG component (ties: smallest node id)");
  t.add_meta("vcg_density", "edges / (|videos| + |commenters| choose 2)");
  t.add_meta("vcg_density_norm", "edges / (|videos| * |commenters|)");
  t.add_meta("cpwg_density", "edges / (|commenters| choose 2); empty below 2 commenters");
}

std::vector<std::optional<double>> network_values(const NetworkSummary& s) {
  return {static_cast<double>(s.component_count),
          s.vcg_density,
          s.vcg_density_norm,
          s.avcg_density,
          s.avcg_transitivity,
          static_cast<double>(s.avcg_diameter),
          static_cast<double>(s.cpwg_edge_count),
          std::isnan(s.cpwg_density) ? std::nullopt : std::optional(s.cpwg_density)};
}

void add_group_columns(Table& t) {
  t.columns.insert(t.columns.begin(), {"kind", "orientation", "channels"});
}

std::vector<Cell> group_prefix(const GroupAverage& g) {
  return {text(to_string(g.key.kind)), text(to_string(g.key.orientation)),
          count(g.rows)};
}

std::string ccdf_name(GroupKey key, std::string_view metric) {
  auto o = std::string(to_string(key.orientation));
  std::replace(o.begin(), o.end(), '-', '_');
  auto k = std::string(to_string(key.kind));
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return fmt::format("ccdf_{}_{}_{}", k, o, metric);
}

Table ccdf_table(std::span<const double> values, GroupKey key, std::string_view metric) {
  Table t;
  t.add_meta("group", key.label());
  t.add_meta("metric", std::string(metric));
  t.add_meta("convention", "survival = P(X >= value); duplicate values merged");
  t.columns = {"value", "survival"};
  const auto series = ccdf(values);
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    t.rows.push_back({num(series.values[i]), num(series.survival[i])});
  }
  return t;
}

}  // namespace

Table network_summary_table(std::span<const NetworkSummary> rows, std::uint32_t threshold) {
  Table t;
  add_network_meta(t, threshold);
  t.columns.assign(kNetworkColumns.begin(), kNetworkColumns.end());
  for (const auto& s : rows) {
    t.rows.push_back({text(s.channel_id), count(s.component_count), num(s.vcg_density),
                      num(s.vcg_density_norm), num(s.avcg_density),
                      num(s.avcg_transitivity), count(s.avcg_diameter),
                      count(s.cpwg_edge_count), num(s.cpwg_density)});
  }
  return t;
}

Table network_group_table(std::span<const NetworkSummary> rows,
                          std::span<const GroupKey> keys, std::uint32_t threshold) {
  if (rows.size() != keys.size()) {
    throw Error(ErrorCode::Mismatch, "network rows and group keys differ in length");
  }
  std::vector<GroupedRow> grouped;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    grouped.push_back({keys[i], network_values(rows[i])});
  }
  Table t;
  add_network_meta(t, threshold);
  t.add_meta("averaging", "unweighted mean over channels of the group");
  t.columns.assign(kNetworkColumns.begin() + 1, kNetworkColumns.end());
  add_group_columns(t);
  for (const auto& g : group_average(grouped)) {
    auto row = group_prefix(g);
    for (const auto& m : g.means) row.push_back(num(m));
    t.rows.push_back(std::move(row));
  }
  return t;
}

NamedTables activity_tables(const Corpus& corpus, const CollectionWindow& window) {
  NamedTables out;
  const auto days = fmt::format("{} ({} .. {}, inclusive)", window.day_count(),
                                format_date(window.start()), format_date(window.end()));

  Table channels;
  channels.add_meta("window_days", days);
  channels.add_meta("percent_shorts", "share of Shorts among labelled videos");
  channels.add_meta("engagement", "means of snapshot counts per video");
  channels.columns = {"channel_id",     "title",           "kind",
                      "orientation",    "video_count",     "labeled_count",
                      "videos_per_day", "percent_shorts",  "views_per_video",
                      "likes_per_video", "comments_per_video", "shorts_impact"};
  Table impact;
  impact.add_meta("shorts_impact", "mean views of Shorts / mean views of regular videos");
  impact.columns = {"channel_id", "kind", "orientation", "percent_shorts",
                    "views_per_video", "shorts_impact"};

  std::vector<GroupedRow> rows;
  std::map<GroupKey, std::vector<double>> uploads, views;
  // Per kind: (percent_shorts, mean_views) of channels having both.
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> corr;

  for (ChannelIdx c = 0; c < corpus.channels().size(); ++c) {
    const auto& ch = corpus.channels()[c];
    const auto up = upload_metrics(ch.id, corpus, window);
    const auto eng = engagement_metrics(ch.id, corpus);
    const auto ratio = shorts_impact(ch.id, corpus);
    rows.push_back(activity_row(ch, up, eng));
    uploads[ch.group()].push_back(static_cast<double>(up.video_count));
    for (auto v : corpus.channel_videos(c)) {
      views[ch.group()].push_back(static_cast<double>(corpus.videos()[v].view_count));
    }
    std::optional<double> mv, ml, mc;
    if (eng) {
      mv = eng->mean_views;
      ml = eng->mean_likes;
      mc = eng->mean_comments;
    }
    channels.rows.push_back({text(ch.id), text(ch.title), text(to_string(ch.kind)),
                             text(to_string(ch.orientation)), count(up.video_count),
                             count(up.labeled_count), num(up.videos_per_day),
                             num(up.percent_shorts), num(mv), num(ml), num(mc), num(ratio)});
    impact.rows.push_back({text(ch.id), text(to_string(ch.kind)),
                           text(to_string(ch.orientation)), num(up.percent_shorts), num(mv),
                           num(ratio)});
    if (up.percent_shorts && mv) {
      for (const auto& key : {std::string(to_string(ch.kind)), std::string("all")}) {
        corr[key].first.push_back(*up.percent_shorts);
        corr[key].second.push_back(*mv);
      }
    }
  }

  Table groups;
  groups.add_meta("window_days", days);
  groups.add_meta("averaging", "unweighted mean over channels of the group");
  groups.columns.assign(kActivityColumns.begin(), kActivityColumns.end());
  add_group_columns(groups);
  for (const auto& g : group_average(rows)) {
    auto row = group_prefix(g);
    for (const auto& m : g.means) row.push_back(num(m));
    groups.rows.push_back(std::move(row));
  }

  Table correlation;
  correlation.add_meta("x", "percent_shorts per channel");
  correlation.add_meta("y", "views_per_video per channel");
  correlation.add_meta("p", "two-sided, Student t with n - 2 degrees of freedom");
  correlation.columns = {"kind", "n", "r", "p", "status"};
  for (const auto* key : {"NM", "PP", "all"}) {
    const auto it = corr.find(key);
    const std::size_t n = it == corr.end() ? 0 : it->second.first.size();
    std::vector<Cell> row{text(key), count(n)};
    try {
      if (it == corr.end()) throw Error(ErrorCode::UndefinedMetric, "no channels");
      const auto r = pearson(it->second.first, it->second.second);
      row.insert(row.end(), {num(r.r), num(r.p), text("ok")});
    } catch (const Error& e) {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, text("undefined")});
    }
    correlation.rows.push_back(std::move(row));
  }

  out.emplace_back("activity_groups", std::move(groups));
  out.emplace_back("activity_channels", std::move(channels));
  out.emplace_back("shorts_impact", std::move(impact));
  out.emplace_back("shorts_correlation", std::move(correlation));
  for (const auto& [key, values] : uploads) {
    out.emplace_back(ccdf_name(key, "uploads"), ccdf_table(values, key, "uploads per channel"));
  }
  for (const auto& [key, values] : views) {
    if (values.empty()) continue;
    out.emplace_back(ccdf_name(key, "views"), ccdf_table(values, key, "views per video"));
  }
  return out;
}

NamedTables audience_tables(const Corpus& corpus) {
  NamedTables out;

  Table taxonomy;
  taxonomy.add_meta("share", "percent of all commenters");
  taxonomy.columns = {"group", "commenters", "share_percent", "mean_comments_per_commenter"};
  for (const auto& r : taxonomy_report(corpus)) {
    taxonomy.rows.push_back({text(to_string(r.group)), count(r.commenters),
                             num(r.share_percent), num(r.mean_comments_per_commenter)});
  }

  const auto sides = pp_side_shares(corpus);
  Table pp;
  pp.add_meta("left_side", "PP far-left, left");
  pp.add_meta("right_side", "PP right, far-right");
  pp.add_meta("other", "commenters touching a PP center channel");
  pp.columns = {"pp_commenters", "left_only", "right_only", "both", "other"};
  pp.rows.push_back({count(sides.pp_commenters), num(sides.left_only),
                     num(sides.right_only), num(sides.both), num(sides.other)});

  const auto m = overlap_matrix(corpus);
  Table overlap;
  overlap.add_meta("cell", "100 * |commenters(row) & commenters(column)| / |commenters(row)|");
  overlap.columns = {"group", "commenters"};
  for (const auto& g : m.groups) overlap.columns.push_back(g.label());
  for (std::size_t y = 0; y < m.size(); ++y) {
    std::vector<Cell> row{text(m.groups[y].label()), count(m.group_sizes[y])};
    for (std::size_t x = 0; x < m.size(); ++x) row.push_back(num(m.cell(y, x)));
    overlap.rows.push_back(std::move(row));
  }

  out.emplace_back("taxonomy", std::move(taxonomy));
  out.emplace_back("pp_sides", std::move(pp));
  out.emplace_back("overlap", std::move(overlap));
  return out;
}

NamedTables coverage_tables(const Corpus& corpus,
                            std::span<const VideoAnnotation> annotations,
                            const Gazetteer& gazetteer) {
  NamedTables out;
  auto shares_table = [&](CoverageMode mode) {
    Table t;
    t.add_meta("unit", "(video, politician) occurrences on NM channels");
    if (mode == CoverageMode::Interviews) {
      t.add_meta("excluded", "videos flagged backend_failure");
    }
    t.columns = {"nm_orientation", "occurrences"};
    for (auto o : kAllOrientations) t.columns.push_back(fmt::format("{}_percent", to_string(o)));
    for (const auto& r : coverage_shares(corpus, annotations, gazetteer, mode)) {
      std::vector<Cell> row{text(to_string(r.nm_orientation)), count(r.occurrences)};
      for (std::size_t o = 0; o < 5; ++o) {
        row.push_back(r.occurrences ? num(r.shares[o]) : Cell{});
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  };

  const auto lift = presence_commenter_lift(corpus, annotations);
  Table lt;
  lt.add_meta("lift", "mean distinct commenters with / without a mentioned politician");
  lt.add_meta("macro_lift", lift.lift ? fmt::format("{}", *lift.lift) : std::string("undefined"));
  lt.add_meta("excluded_channels", fmt::format("{}", lift.excluded.size()));
  lt.columns = {"channel_id", "with_politician", "without_politician", "lift"};
  for (const auto& c : lift.channels) {
    lt.rows.push_back({text(c.channel_id), num(c.with_politician),
                       num(c.without_politician), num(c.lift)});
  }

  const auto presence = presence_overlap(corpus, annotations, gazetteer);
  Table pt;
  pt.add_meta("cell", "mean over NM channels of the percent of the category's commenters "
                      "also commenting on PP channels of the column orientation");
  pt.add_meta("excluded", "videos flagged backend_failure");
  pt.columns = {"category", "channels"};
  for (auto o : kAllOrientations) pt.columns.push_back(fmt::format("pp_{}", to_string(o)));
  for (std::size_t c = 0; c < kPresenceCategoryCount; ++c) {
    std::vector<Cell> row{text(to_string(static_cast<PresenceCategory>(c))),
                          count(presence.channels[c])};
    for (std::size_t o = 0; o < 5; ++o) row.push_back(num(presence.mean[c][o]));
    pt.rows.push_back(std::move(row));
  }

  out.emplace_back("coverage_mentions", shares_table(CoverageMode::Mentions));
  out.emplace_back("coverage_interviews", shares_table(CoverageMode::Interviews));
  out.emplace_back("presence_lift", std::move(lt));
  out.emplace_back("presence_overlap", std::move(pt));
  return out;
}

Table channel_edges_table(const WeightedGraph& chpwg, const Corpus& corpus, std::size_t k) {
  Table t;
  t.add_meta("weight", "Jaccard similarity of the two channels' commenter sets");
  t.add_meta("order", "weight descending, then node order");
  t.columns = {"channel_a", "group_a", "channel_b", "group_b", "weight"};
  if (chpwg.nodes.empty() || k == 0) return t;
  for (const auto& e : top_k_edges(chpwg, k)) {
    auto group = [&](std::uint32_t n) -> Cell {
      const auto c = corpus.find_channel(chpwg.nodes[n]);
      if (!c) return std::monostate{};
      return corpus.channels()[*c].group().label();
    };
    t.rows.push_back({text(chpwg.nodes[e.a]), group(e.a), text(chpwg.nodes[e.b]),
                      group(e.b), num(e.weight)});
  }
  return t;
}

}  // namespace mediagraph
