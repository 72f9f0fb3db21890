#include "mediagraph/audience.hpp"

#include <bit>

namespace mediagraph {
namespace {

constexpr std::uint8_t bit_of(Orientation o) {
  return static_cast<std::uint8_t>(1u << index_of(o));
}

constexpr std::uint8_t kLeftSide = bit_of(Orientation::FarLeft) | bit_of(Orientation::Left);
constexpr std::uint8_t kRightSide = bit_of(Orientation::Right) | bit_of(Orientation::FarRight);
constexpr std::uint8_t kCenter = bit_of(Orientation::Center);

}  // namespace

std::size_t CommenterProfile::pp_orientation_count() const noexcept {
  return static_cast<std::size_t>(std::popcount(pp_orientations));
}

std::string_view to_string(CommenterGroup group) noexcept {
  switch (group) {
    case CommenterGroup::OnlyNM: return "only_nm";
    case CommenterGroup::OnlyPPSingle: return "only_pp_single_orientation";
    case CommenterGroup::OnlyPPCross: return "only_pp_cross_orientation";
    case CommenterGroup::CrossTypeSingle: return "cross_type_single_orientation";
    case CommenterGroup::CrossTypeCross: return "cross_type_cross_orientation";
  }
  return "only_nm";
}

std::vector<CommenterProfile> build_profiles(const Corpus& corpus) {
  std::vector<CommenterProfile> profiles(corpus.commenter_count());
  for (CommenterIdx k = 0; k < profiles.size(); ++k) {
    auto& p = profiles[k];
    p.author_id = corpus.commenter_id(k);
    p.comment_count = corpus.commenter_comment_count(k);
    for (auto v : corpus.commenter_videos(k)) {
      const auto& ch = corpus.channels()[corpus.video_channel(v)];
      if (ch.kind == ChannelKind::NM) {
        p.touched_nm = true;
      } else {
        p.touched_pp = true;
        p.pp_orientations |= bit_of(ch.orientation);
      }
    }
  }
  return profiles;
}

CommenterGroup classify_commenter(const CommenterProfile& profile) {
  const bool cross = profile.pp_orientation_count() >= 2;
  if (!profile.touched_pp) return CommenterGroup::OnlyNM;
  if (!profile.touched_nm) {
    return cross ? CommenterGroup::OnlyPPCross : CommenterGroup::OnlyPPSingle;
  }
  return cross ? CommenterGroup::CrossTypeCross : CommenterGroup::CrossTypeSingle;
}

std::vector<TaxonomyRow> taxonomy_report(const Corpus& corpus) {
  std::array<std::uint64_t, 5> members{};
  std::array<std::uint64_t, 5> comments{};
  std::uint64_t total = 0;
  for (const auto& p : build_profiles(corpus)) {
    const auto g = static_cast<std::size_t>(classify_commenter(p));
    ++members[g];
    comments[g] += p.comment_count;
    ++total;
  }
  std::vector<TaxonomyRow> rows;
  for (auto group : kCommenterGroups) {
    const auto g = static_cast<std::size_t>(group);
    TaxonomyRow row;
    row.group = group;
    row.commenters = members[g];
    if (total > 0) {
      row.share_percent = 100.0 * static_cast<double>(members[g]) /
                          static_cast<double>(total);
    }
    if (members[g] > 0) {
      row.mean_comments_per_commenter =
          static_cast<double>(comments[g]) / static_cast<double>(members[g]);
    }
    rows.push_back(row);
  }
  return rows;
}

PpSideShares pp_side_shares(const Corpus& corpus) {
  std::uint64_t left = 0, right = 0, both = 0, other = 0;
  for (const auto& p : build_profiles(corpus)) {
    if (!p.touched_pp) continue;
    const auto mask = p.pp_orientations;
    if (mask & kCenter) {
      ++other;
    } else if ((mask & kLeftSide) && (mask & kRightSide)) {
      ++both;
    } else if (mask & kLeftSide) {
      ++left;
    } else {
      ++right;
    }
  }
  PpSideShares s;
  s.pp_commenters = left + right + both + other;
  if (s.pp_commenters > 0) {
    const double n = static_cast<double>(s.pp_commenters);
    s.left_only = 100.0 * static_cast<double>(left) / n;
    s.right_only = 100.0 * static_cast<double>(right) / n;
    s.both = 100.0 * static_cast<double>(both) / n;
    s.other = 100.0 * static_cast<double>(other) / n;
  }
  return s;
}

OverlapMatrix overlap_matrix(const Corpus& corpus) {
  // Membership of each commenter as a bitmask over the report-order groups.
  constexpr std::size_t kSlots = 10;  // 8 report groups + invalid NM slots
  std::array<std::uint64_t, kSlots * kSlots> counts{};
  std::array<std::uint64_t, kSlots> sizes{};
  for (CommenterIdx k = 0; k < corpus.commenter_count(); ++k) {
    std::uint16_t mask = 0;
    for (auto v : corpus.commenter_videos(k)) {
      const auto& ch = corpus.channels()[corpus.video_channel(v)];
      mask |= static_cast<std::uint16_t>(1u << ch.group().ordinal());
    }
    for (std::size_t y = 0; y < kSlots; ++y) {
      if (!(mask & (1u << y))) continue;
      ++sizes[y];
      for (std::size_t x = 0; x < kSlots; ++x) {
        if (mask & (1u << x)) ++counts[y * kSlots + x];
      }
    }
  }
  OverlapMatrix m;
  std::vector<std::size_t> slots;
  for (const auto& key : kReportGroups) {
    if (sizes[key.ordinal()] == 0) continue;
    m.groups.push_back(key);
    m.group_sizes.push_back(sizes[key.ordinal()]);
    slots.push_back(key.ordinal());
  }
  m.intersections.resize(slots.size() * slots.size());
  for (std::size_t y = 0; y < slots.size(); ++y) {
    for (std::size_t x = 0; x < slots.size(); ++x) {
      m.intersections[y * slots.size() + x] = counts[slots[y] * kSlots + slots[x]];
    }
  }
  return m;
}

}  // namespace mediagraph
