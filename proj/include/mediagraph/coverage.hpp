#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/extraction.hpp"
#include "mediagraph/gazetteer.hpp"

namespace mediagraph {

/// Politicians mentioned in a video's title and interviewed in it, stored by
/// gazetteer full name.
struct VideoAnnotation {
  std::string video_id;
  std::vector<std::string> mentioned;
  std::vector<std::string> interviewed;
  std::vector<std::string> flags;

  friend bool operator==(const VideoAnnotation&, const VideoAnnotation&) = default;
};

/// Line-delimited JSON {"video_id","mentioned","interviewed","flags"}.
std::vector<VideoAnnotation> read_annotations(const std::filesystem::path& path);
void write_annotations(const std::filesystem::path& path,
                       std::span<const VideoAnnotation> annotations);

struct AnnotateOptions {
  std::size_t workers = 1;
  /// Annotations from an earlier run; videos found here without a
  /// backend-failure flag are reused instead of re-extracted.
  std::span<const VideoAnnotation> cache;
};

/// Annotates every NM video: mentions from the title via gazetteer
/// matching, interviewees from title + description via `backend`. Output
/// follows corpus video order.
std::vector<VideoAnnotation> annotate_corpus(const Corpus& corpus,
                                             const Gazetteer& gazetteer,
                                             ExtractionBackend& backend,
                                             const AnnotateOptions& options = {});

enum class CoverageMode { Mentions, Interviews };

/// Distribution of politician orientations among (video, politician)
/// occurrences on NM channels of one orientation.
struct CoverageRow {
  Orientation nm_orientation = Orientation::Center;
  std::uint64_t occurrences = 0;
  std::array<std::uint64_t, 5> counts{};  // by kAllOrientations
  std::array<double, 5> shares{};         // percent; all 0 without occurrences
};

/// Rows for left, center and right NM channels, always all three.
std::vector<CoverageRow> coverage_shares(const Corpus& corpus,
                                         std::span<const VideoAnnotation> annotations,
                                         const Gazetteer& gazetteer,
                                         CoverageMode mode);

struct ChannelLift {
  std::string channel_id;
  double with_politician = 0.0;     // mean distinct commenters
  double without_politician = 0.0;
  double lift = 0.0;
};

struct PresenceLift {
  /// Macro-average over included channels; nullopt when none qualifies.
  std::optional<double> lift;
  std::vector<ChannelLift> channels;
  /// NM channels lacking one of the two video classes (or with a zero
  /// baseline), left out of the average.
  std::vector<std::string> excluded;
};

/// Per NM channel, mean distinct commenters on videos mentioning a
/// politician over videos mentioning none; macro-averaged.
PresenceLift presence_commenter_lift(const Corpus& corpus,
                                     std::span<const VideoAnnotation> annotations);

/// NM video categories: no politician interviewed, any politician
/// interviewed, and one per interviewed-politician orientation.
enum class PresenceCategory : std::uint8_t {
  NoPolitician,
  AnyPolitician,
  FarLeft,
  Left,
  Center,
  Right,
  FarRight,
};

inline constexpr std::size_t kPresenceCategoryCount = 7;
std::string_view to_string(PresenceCategory category) noexcept;
PresenceCategory category_for(Orientation orientation) noexcept;

struct PresenceOverlap {
  /// mean[c][o]: average over NM channels of the percentage of the
  /// category-c commenters also commenting on PP channels of orientation o.
  std::array<std::array<std::optional<double>, 5>, kPresenceCategoryCount> mean{};
  /// Channels contributing to each category (non-empty commenter set).
  std::array<std::size_t, kPresenceCategoryCount> channels{};
  /// Per-channel cells, NaN where the category is empty on that channel.
  struct ChannelCells {
    std::string channel_id;
    std::array<std::array<double, 5>, kPresenceCategoryCount> percent{};
  };
  std::vector<ChannelCells> per_channel;
};

PresenceOverlap presence_overlap(const Corpus& corpus,
                                 std::span<const VideoAnnotation> annotations,
                                 const Gazetteer& gazetteer);

}  // namespace mediagraph
