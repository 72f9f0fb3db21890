#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/stats.hpp"

namespace mediagraph {

struct UploadMetrics {
  std::string channel_id;
  std::size_t video_count = 0;
  double videos_per_day = 0.0;
  /// Share of Shorts among labelled videos, in [0, 100]; nullopt when no
  /// video of the channel is labelled.
  std::optional<double> percent_shorts;
  std::size_t labeled_count = 0;
};

struct EngagementMetrics {
  std::string channel_id;
  double mean_views = 0.0;
  double mean_likes = 0.0;
  double mean_comments = 0.0;
};

/// Videos per day over the window's inclusive day count, and the Shorts
/// percentage over labelled videos only.
UploadMetrics upload_metrics(std::string_view channel_id, const Corpus& corpus,
                             const CollectionWindow& window);

/// Means of the snapshot view/like/comment counts. nullopt (the
/// excluded-channel marker) for channels without videos.
std::optional<EngagementMetrics> engagement_metrics(std::string_view channel_id,
                                                    const Corpus& corpus);

/// Mean views of Shorts divided by mean views of regular videos. nullopt
/// (not applicable) unless the channel has at least one of each, or when the
/// regular mean is zero.
std::optional<double> shorts_impact(std::string_view channel_id,
                                    const Corpus& corpus);

/// Column order used by the orientation-level table.
inline constexpr std::array<std::string_view, 5> kActivityColumns = {
    "videos_per_day", "percent_shorts", "views_per_video", "likes_per_video",
    "comments_per_video"};

/// Per-channel activity row in kActivityColumns order, keyed by the
/// channel's group.
GroupedRow activity_row(const Channel& channel, const UploadMetrics& upload,
                        const std::optional<EngagementMetrics>& engagement);

}  // namespace mediagraph
