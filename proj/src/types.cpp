#include "mediagraph/types.hpp"

#include <algorithm>
#include <cctype>

namespace mediagraph {
namespace {

// Lowercase and drop separators so "Far Right", "far_right", "FarRight" and
// "far-right" all compare equal.
std::string squash(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view to_string(ChannelKind kind) noexcept {
  return kind == ChannelKind::NM ? "NM" : "PP";
}

std::string_view to_string(Orientation orientation) noexcept {
  switch (orientation) {
    case Orientation::FarLeft: return "far-left";
    case Orientation::Left: return "left";
    case Orientation::Center: return "center";
    case Orientation::Right: return "right";
    case Orientation::FarRight: return "far-right";
  }
  return "center";
}

std::string_view to_string(ShortsLabel label) noexcept {
  switch (label) {
    case ShortsLabel::Short: return "short";
    case ShortsLabel::Regular: return "regular";
    case ShortsLabel::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::optional<ChannelKind> parse_kind(std::string_view text) {
  const auto s = squash(text);
  if (s == "nm") return ChannelKind::NM;
  if (s == "pp") return ChannelKind::PP;
  return std::nullopt;
}

std::optional<Orientation> parse_orientation(std::string_view text) {
  const auto s = squash(text);
  if (s == "farleft") return Orientation::FarLeft;
  if (s == "left") return Orientation::Left;
  if (s == "center" || s == "centre") return Orientation::Center;
  if (s == "right") return Orientation::Right;
  if (s == "farright") return Orientation::FarRight;
  return std::nullopt;
}

std::optional<ShortsLabel> parse_shorts_label(std::string_view text) {
  const auto s = squash(text);
  if (s == "short") return ShortsLabel::Short;
  if (s == "regular" || s == "rv") return ShortsLabel::Regular;
  if (s == "unlabeled" || s.empty()) return ShortsLabel::Unlabeled;
  return std::nullopt;
}

std::size_t GroupKey::ordinal() const noexcept {
  const auto o = index_of(orientation);
  if (kind == ChannelKind::PP) return 3 + o;
  switch (orientation) {
    case Orientation::Left: return 0;
    case Orientation::Center: return 1;
    case Orientation::Right: return 2;
    default: return orientation == Orientation::FarLeft ? 8 : 9;
  }
}

std::string GroupKey::label() const {
  std::string out(to_string(orientation));
  out += ' ';
  out += to_string(kind);
  return out;
}

}  // namespace mediagraph
