#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mediagraph/time.hpp"
#include "mediagraph/types.hpp"

namespace mediagraph {

struct Channel {
  std::string id;
  std::string title;
  ChannelKind kind = ChannelKind::NM;
  Orientation orientation = Orientation::Center;
  std::uint64_t subscriber_count = 0;

  GroupKey group() const noexcept { return {kind, orientation}; }
};

struct Video {
  std::string id;
  std::string channel_id;
  Timestamp published_at{};
  std::string title;
  std::string description;
  std::uint64_t view_count = 0;
  std::uint64_t like_count = 0;
  std::uint64_t comment_count = 0;
  ShortsLabel shorts_label = ShortsLabel::Unlabeled;
};

struct Comment {
  std::string id;
  std::string video_id;
  std::string author_id;
  Timestamp published_at{};
};

struct ValidationReport {
  std::size_t videos_out_of_window = 0;
  std::size_t comments_on_excluded_videos = 0;
};

/// Dense indices into a Corpus. Commenter indices follow the lexicographic
/// order of author ids, so any structure keyed by them is order-stable.
using ChannelIdx = std::uint32_t;
using VideoIdx = std::uint32_t;
using CommenterIdx = std::uint32_t;

/// Validated, indexed, immutable collection of channels, videos and comments.
///
/// Indexes: channel -> videos, video -> distinct commenters (sorted),
/// commenter -> distinct videos (sorted), channel -> distinct commenters.
/// Several comments by one author on one video are kept as records but
/// collapse to a single entry in the distinct sets.
class Corpus {
 public:
  Corpus() = default;

  /// Validates references and uniqueness, drops videos outside `window`
  /// (and their comments), then builds all indexes. Throws Error with
  /// DuplicateId / DanglingReference / InvalidValue.
  static Corpus build(std::vector<Channel> channels, std::vector<Video> videos,
                      std::vector<Comment> comments,
                      std::optional<CollectionWindow> window = std::nullopt);

  const std::vector<Channel>& channels() const noexcept { return channels_; }
  const std::vector<Video>& videos() const noexcept { return videos_; }
  const std::vector<Comment>& comments() const noexcept { return comments_; }
  const ValidationReport& report() const noexcept { return report_; }
  const std::optional<CollectionWindow>& window() const noexcept {
    return window_;
  }

  std::optional<ChannelIdx> find_channel(std::string_view id) const;
  std::optional<VideoIdx> find_video(std::string_view id) const;
  std::optional<CommenterIdx> find_commenter(std::string_view id) const;

  ChannelIdx video_channel(VideoIdx v) const { return video_channel_[v]; }
  std::span<const VideoIdx> channel_videos(ChannelIdx c) const;
  std::span<const CommenterIdx> video_commenters(VideoIdx v) const;
  std::span<const VideoIdx> commenter_videos(CommenterIdx k) const;
  std::span<const CommenterIdx> channel_commenters(ChannelIdx c) const;

  std::size_t commenter_count() const noexcept { return commenter_ids_.size(); }
  const std::string& commenter_id(CommenterIdx k) const {
    return commenter_ids_[k];
  }
  /// Number of comment records written by commenter k.
  std::uint64_t commenter_comment_count(CommenterIdx k) const {
    return commenter_comments_[k];
  }
  /// Number of comment records on video v (not deduplicated).
  std::uint64_t video_comment_records(VideoIdx v) const {
    return video_comment_records_[v];
  }

  /// Copy with per-video shorts labels replaced (indexes are reused).
  Corpus with_shorts_labels(std::vector<ShortsLabel> labels) const;

 private:
  struct Csr {
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> values;
    std::span<const std::uint32_t> row(std::size_t i) const {
      return {values.data() + offsets[i], values.data() + offsets[i + 1]};
    }
  };

  void build_indexes();

  std::vector<Channel> channels_;
  std::vector<Video> videos_;
  std::vector<Comment> comments_;
  std::optional<CollectionWindow> window_;
  ValidationReport report_;

  std::unordered_map<std::string, ChannelIdx> channel_by_id_;
  std::unordered_map<std::string, VideoIdx> video_by_id_;
  std::vector<std::string> commenter_ids_;
  std::vector<ChannelIdx> video_channel_;
  std::vector<std::uint64_t> commenter_comments_;
  std::vector<std::uint64_t> video_comment_records_;
  Csr channel_videos_;
  Csr video_commenters_;
  Csr commenter_videos_;
  Csr channel_commenters_;
};

/// Loads the three line-delimited JSON files. Malformed lines throw
/// ParseError naming file and line; other violations throw Error.
Corpus load_corpus(const std::filesystem::path& channel_path,
                   const std::filesystem::path& video_path,
                   const std::filesystem::path& comment_path,
                   std::optional<CollectionWindow> window = std::nullopt);

/// `dir/channels.jsonl`, `dir/videos.jsonl`, `dir/comments.jsonl`.
Corpus load_corpus_dir(const std::filesystem::path& dir,
                       std::optional<CollectionWindow> window = std::nullopt);

/// Writes the three files into `dir` (created if needed). Output is a pure
/// function of the corpus records.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

inline constexpr std::string_view kChannelsFile = "channels.jsonl";
inline constexpr std::string_view kVideosFile = "videos.jsonl";
inline constexpr std::string_view kCommentsFile = "comments.jsonl";

}  // namespace mediagraph
