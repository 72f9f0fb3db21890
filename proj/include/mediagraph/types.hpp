#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mediagraph {

enum class ChannelKind : std::uint8_t { NM, PP };

enum class Orientation : std::uint8_t { FarLeft, Left, Center, Right, FarRight };

enum class ShortsLabel : std::uint8_t { Unlabeled, Short, Regular };

inline constexpr std::array<Orientation, 5> kAllOrientations = {
    Orientation::FarLeft, Orientation::Left, Orientation::Center,
    Orientation::Right, Orientation::FarRight};

inline constexpr std::array<Orientation, 3> kNewsOrientations = {
    Orientation::Left, Orientation::Center, Orientation::Right};

constexpr std::size_t index_of(Orientation o) noexcept {
  return static_cast<std::size_t>(o);
}

std::string_view to_string(ChannelKind kind) noexcept;
std::string_view to_string(Orientation orientation) noexcept;
std::string_view to_string(ShortsLabel label) noexcept;

// Accept the canonical spelling plus common variants ("FarRight", "far_right",
// "Far Right"). Case-insensitive.
std::optional<ChannelKind> parse_kind(std::string_view text);
std::optional<Orientation> parse_orientation(std::string_view text);
std::optional<ShortsLabel> parse_shorts_label(std::string_view text);

/// (kind, orientation) pair used as the grouping key for every
/// orientation-level table.
struct GroupKey {
  ChannelKind kind = ChannelKind::NM;
  Orientation orientation = Orientation::Center;

  friend bool operator==(const GroupKey&, const GroupKey&) = default;
  friend auto operator<=>(const GroupKey& a, const GroupKey& b) {
    return a.ordinal() <=> b.ordinal();
  }

  /// Position in the fixed report order: NM left/center/right, then PP
  /// far-left .. far-right. Invalid NM orientations sort after.
  std::size_t ordinal() const noexcept;
  std::string label() const;
};

/// The eight report groups in their documented order.
inline constexpr std::array<GroupKey, 8> kReportGroups = {
    GroupKey{ChannelKind::NM, Orientation::Left},
    GroupKey{ChannelKind::NM, Orientation::Center},
    GroupKey{ChannelKind::NM, Orientation::Right},
    GroupKey{ChannelKind::PP, Orientation::FarLeft},
    GroupKey{ChannelKind::PP, Orientation::Left},
    GroupKey{ChannelKind::PP, Orientation::Center},
    GroupKey{ChannelKind::PP, Orientation::Right},
    GroupKey{ChannelKind::PP, Orientation::FarRight}};

}  // namespace mediagraph
