#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mediagraph/audience.hpp"
#include "mediagraph/corpus.hpp"
#include "mediagraph/coverage.hpp"
#include "mediagraph/gazetteer.hpp"

namespace mediagraph {

struct SynthGroup {
  ChannelKind kind = ChannelKind::NM;
  Orientation orientation = Orientation::Center;
  std::size_t channels = 1;
};

/// Commenters get a home group (commenter k -> group k mod G). A video of
/// group g receives each home-g commenter with `in_group_probability` and
/// every other commenter with `cross_group_probability`; each selected
/// commenter then writes one comment plus a geometric number of repeats.
struct SynthConfig {
  std::vector<SynthGroup> groups;
  std::size_t videos_per_channel = 10;
  std::size_t commenter_pool = 100;
  double in_group_probability = 0.1;
  double cross_group_probability = 0.0;
  double repeat_probability = 0.0;
  /// Probability of a Short; negative leaves every video unlabelled.
  double shorts_probability = 0.25;
  CollectionWindow window = CollectionWindow::parse("2024-03-01", "2024-07-14");

  /// Every report group with `channels` channels each.
  static SynthConfig all_groups(std::size_t channels);
};

/// Deterministic in (config, seed). Throws Error(Config) for invalid
/// probabilities, NM groups with far orientations, or a zero commenter pool
/// with a non-zero comment probability.
Corpus generate_synthetic(const SynthConfig& config, std::uint64_t seed);

struct TaxonomyPlan {
  /// Commenters per CommenterGroup, in kCommenterGroups order.
  std::array<std::size_t, 5> group_sizes{60, 20, 5, 10, 5};
  std::size_t channels_per_group = 2;
  std::size_t videos_per_channel = 3;
  std::size_t max_comments_per_video = 4;
};

struct PlantedTaxonomy {
  Corpus corpus;
  /// Planted group of every commenter, indexed like the corpus commenters.
  std::vector<CommenterGroup> planted;
};

PlantedTaxonomy generate_planted_taxonomy(const TaxonomyPlan& plan,
                                          std::uint64_t seed);

struct PpSidePlan {
  std::size_t left_only = 2;
  std::size_t right_only = 3;
  std::size_t both = 1;
  std::size_t other = 0;
  /// Extra commenters active on NM channels only; they must not count.
  std::size_t nm_only = 5;
};

Corpus generate_planted_pp_sides(const PpSidePlan& plan, std::uint64_t seed);

/// NM channels with plain videos (no politician) and videos interviewing a
/// far-right politician. Interview videos are commented only by far-right PP
/// commenters; on each channel exactly `background_members` of the plain
/// commenters also comment on each PP orientation.
struct PresencePlan {
  std::size_t nm_channels = 3;
  std::size_t plain_videos = 4;
  std::size_t interview_videos = 2;
  std::size_t commenters_per_plain_video = 10;
  std::size_t commenters_per_interview_video = 8;
  std::size_t background_members = 10;
  std::size_t far_right_pool = 30;
};

struct PlantedPresence {
  Corpus corpus;
  Gazetteer gazetteer;
  /// Ground truth for every NM video.
  std::vector<VideoAnnotation> annotations;
  /// 100 * background_members / plain commenters per channel.
  double background_percent = 0.0;
  std::string far_right_politician;
};

PlantedPresence generate_planted_presence(const PresencePlan& plan,
                                          std::uint64_t seed);

}  // namespace mediagraph
