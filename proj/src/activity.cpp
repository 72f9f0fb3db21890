#include "mediagraph/activity.hpp"

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

ChannelIdx require_channel(std::string_view id, const Corpus& corpus) {
  const auto c = corpus.find_channel(id);
  if (!c) throw Error(ErrorCode::UnknownId, fmt::format("unknown channel id '{}'", id));
  return *c;
}

}  // namespace

UploadMetrics upload_metrics(std::string_view channel_id, const Corpus& corpus,
                             const CollectionWindow& window) {
  const auto c = require_channel(channel_id, corpus);
  UploadMetrics m;
  m.channel_id = std::string(channel_id);
  std::size_t shorts = 0;
  for (auto v : corpus.channel_videos(c)) {
    const auto& video = corpus.videos()[v];
    if (!window.contains(video.published_at)) continue;
    ++m.video_count;
    if (video.shorts_label == ShortsLabel::Unlabeled) continue;
    ++m.labeled_count;
    if (video.shorts_label == ShortsLabel::Short) ++shorts;
  }
  m.videos_per_day =
      static_cast<double>(m.video_count) / static_cast<double>(window.day_count());
  if (m.labeled_count > 0) {
    m.percent_shorts = 100.0 * static_cast<double>(shorts) /
                       static_cast<double>(m.labeled_count);
  }
  return m;
}

std::optional<EngagementMetrics> engagement_metrics(std::string_view channel_id,
                                                    const Corpus& corpus) {
  const auto c = require_channel(channel_id, corpus);
  const auto videos = corpus.channel_videos(c);
  if (videos.empty()) return std::nullopt;
  long double views = 0, likes = 0, comments = 0;
  for (auto v : videos) {
    const auto& video = corpus.videos()[v];
    views += video.view_count;
    likes += video.like_count;
    comments += video.comment_count;
  }
  const auto n = static_cast<long double>(videos.size());
  EngagementMetrics m;
  m.channel_id = std::string(channel_id);
  m.mean_views = static_cast<double>(views / n);
  m.mean_likes = static_cast<double>(likes / n);
  m.mean_comments = static_cast<double>(comments / n);
  return m;
}

std::optional<double> shorts_impact(std::string_view channel_id,
                                    const Corpus& corpus) {
  const auto c = require_channel(channel_id, corpus);
  long double short_views = 0, regular_views = 0;
  std::size_t shorts = 0, regulars = 0;
  for (auto v : corpus.channel_videos(c)) {
    const auto& video = corpus.videos()[v];
    if (video.shorts_label == ShortsLabel::Short) {
      short_views += video.view_count;
      ++shorts;
    } else if (video.shorts_label == ShortsLabel::Regular) {
      regular_views += video.view_count;
      ++regulars;
    }
  }
  if (shorts == 0 || regulars == 0 || regular_views == 0) return std::nullopt;
  return static_cast<double>((short_views / shorts) / (regular_views / regulars));
}

GroupedRow activity_row(const Channel& channel, const UploadMetrics& upload,
                        const std::optional<EngagementMetrics>& engagement) {
  GroupedRow row;
  row.key = channel.group();
  row.values = {upload.videos_per_day, upload.percent_shorts,
                engagement ? std::optional(engagement->mean_views) : std::nullopt,
                engagement ? std::optional(engagement->mean_likes) : std::nullopt,
                engagement ? std::optional(engagement->mean_comments) : std::nullopt};
  return row;
}

}  // namespace mediagraph
