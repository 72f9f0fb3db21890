#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/corpus.hpp"

namespace mediagraph {

/// Which channel kinds and PP orientations a commenter touched; touching
/// means at least one comment on a video of such a channel.
struct CommenterProfile {
  std::string author_id;
  std::uint64_t comment_count = 0;
  bool touched_nm = false;
  bool touched_pp = false;
  /// Bit i set when a PP channel with orientation kAllOrientations[i] was
  /// touched.
  std::uint8_t pp_orientations = 0;

  std::size_t pp_orientation_count() const noexcept;
};

enum class CommenterGroup : std::uint8_t {
  OnlyNM,
  OnlyPPSingle,
  OnlyPPCross,
  CrossTypeSingle,
  CrossTypeCross,
};

inline constexpr std::array<CommenterGroup, 5> kCommenterGroups = {
    CommenterGroup::OnlyNM, CommenterGroup::OnlyPPSingle,
    CommenterGroup::OnlyPPCross, CommenterGroup::CrossTypeSingle,
    CommenterGroup::CrossTypeCross};

std::string_view to_string(CommenterGroup group) noexcept;

/// Profiles for every commenter of the corpus, in commenter-index order.
std::vector<CommenterProfile> build_profiles(const Corpus& corpus);

CommenterGroup classify_commenter(const CommenterProfile& profile);

struct TaxonomyRow {
  CommenterGroup group = CommenterGroup::OnlyNM;
  std::size_t commenters = 0;
  double share_percent = 0.0;
  /// 0 for empty groups.
  double mean_comments_per_commenter = 0.0;
};

/// One row per group in kCommenterGroups order.
std::vector<TaxonomyRow> taxonomy_report(const Corpus& corpus);

/// Split of PP commenters by the sides of the PP spectrum they touched. Left
/// side is {far-left, left}, right side {right, far-right}; anyone touching a
/// center PP channel is "other".
struct PpSideShares {
  std::size_t pp_commenters = 0;
  double left_only = 0.0;
  double right_only = 0.0;
  double both = 0.0;
  double other = 0.0;
};

PpSideShares pp_side_shares(const Corpus& corpus);

/// cell(Y, X) = 100 * |commenters(Y) ∩ commenters(X)| / |commenters(Y)| over
/// the (kind, orientation) groups that have commenters, in report order.
struct OverlapMatrix {
  std::vector<GroupKey> groups;
  std::vector<std::uint64_t> group_sizes;
  /// Row-major |Y ∩ X| counts.
  std::vector<std::uint64_t> intersections;

  std::size_t size() const noexcept { return groups.size(); }
  std::uint64_t intersection(std::size_t y, std::size_t x) const {
    return intersections[y * groups.size() + x];
  }
  double cell(std::size_t y, std::size_t x) const {
    return 100.0 * static_cast<double>(intersection(y, x)) /
           static_cast<double>(group_sizes[y]);
  }
};

OverlapMatrix overlap_matrix(const Corpus& corpus);

}  // namespace mediagraph
