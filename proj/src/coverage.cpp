#include "mediagraph/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "mediagraph/error.hpp"
#include "mediagraph/parallel.hpp"

namespace mediagraph {
namespace {

bool has_flag(const VideoAnnotation& a, std::string_view flag) {
  return std::find(a.flags.begin(), a.flags.end(), flag) != a.flags.end();
}

// Corpus video index -> annotation, for annotations naming known videos.
std::vector<const VideoAnnotation*> index_annotations(
    const Corpus& corpus, std::span<const VideoAnnotation> annotations) {
  std::vector<const VideoAnnotation*> by_video(corpus.videos().size(), nullptr);
  for (const auto& a : annotations) {
    if (const auto v = corpus.find_video(a.video_id)) by_video[*v] = &a;
  }
  return by_video;
}

std::vector<std::string> string_list(const nlohmann::json& obj, const char* key,
                                     const std::string& file, std::size_t line) {
  std::vector<std::string> out;
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(file, line, fmt::format("'{}' must be a list", key));
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw ParseError(file, line, fmt::format("'{}' must hold strings", key));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<VideoAnnotation> read_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  }
  std::vector<VideoAnnotation> out;
  std::string line;
  std::size_t line_no = 0;
  const auto file = path.string();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(file, line_no, fmt::format("malformed JSON: {}", e.what()));
    }
    const auto id = obj.find("video_id");
    if (id == obj.end() || !id->is_string()) {
      throw ParseError(file, line_no, "missing string field 'video_id'");
    }
    VideoAnnotation a;
    a.video_id = id->get<std::string>();
    a.mentioned = string_list(obj, "mentioned", file, line_no);
    a.interviewed = string_list(obj, "interviewed", file, line_no);
    a.flags = string_list(obj, "flags", file, line_no);
    out.push_back(std::move(a));
  }
  return out;
}

void write_annotations(const std::filesystem::path& path,
                       std::span<const VideoAnnotation> annotations) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  }
  for (const auto& a : annotations) {
    nlohmann::ordered_json j;
    j["video_id"] = a.video_id;
    j["mentioned"] = a.mentioned;
    j["interviewed"] = a.interviewed;
    j["flags"] = a.flags;
    out << j.dump() << '\n';
  }
}

std::vector<VideoAnnotation> annotate_corpus(const Corpus& corpus,
                                             const Gazetteer& gazetteer,
                                             ExtractionBackend& backend,
                                             const AnnotateOptions& options) {
  std::unordered_map<std::string_view, const VideoAnnotation*> cached;
  for (const auto& a : options.cache) {
    if (!has_flag(a, kFlagBackendFailure)) cached.emplace(a.video_id, &a);
  }
  std::vector<VideoIdx> targets;
  for (VideoIdx v = 0; v < corpus.videos().size(); ++v) {
    if (corpus.channels()[corpus.video_channel(v)].kind == ChannelKind::NM) {
      targets.push_back(v);
    }
  }
  std::vector<VideoAnnotation> out(targets.size());
  parallel_for(targets.size(), options.workers, [&](std::size_t i) {
    const auto& video = corpus.videos()[targets[i]];
    if (auto it = cached.find(video.id); it != cached.end()) {
      out[i] = *it->second;
      return;
    }
    VideoAnnotation a;
    a.video_id = video.id;
    for (auto e : gazetteer.match(video.title)) {
      a.mentioned.push_back(gazetteer[e].full_name);
    }
    auto interviews = extract_interviewees(video, backend, gazetteer);
    for (auto e : interviews.politicians) {
      a.interviewed.push_back(gazetteer[e].full_name);
    }
    a.flags = std::move(interviews.flags);
    out[i] = std::move(a);
  });
  return out;
}

std::vector<CoverageRow> coverage_shares(const Corpus& corpus,
                                         std::span<const VideoAnnotation> annotations,
                                         const Gazetteer& gazetteer,
                                         CoverageMode mode) {
  std::vector<CoverageRow> rows;
  for (auto o : kNewsOrientations) rows.push_back({o, 0, {}, {}});
  auto row_for = [&](Orientation o) -> CoverageRow* {
    for (auto& r : rows) {
      if (r.nm_orientation == o) return &r;
    }
    return nullptr;
  };
  for (const auto& a : annotations) {
    const auto v = corpus.find_video(a.video_id);
    if (!v) continue;
    const auto& channel = corpus.channels()[corpus.video_channel(*v)];
    if (channel.kind != ChannelKind::NM) continue;
    if (mode == CoverageMode::Interviews && has_flag(a, kFlagBackendFailure)) continue;
    auto* row = row_for(channel.orientation);
    if (!row) continue;
    const auto& names = mode == CoverageMode::Mentions ? a.mentioned : a.interviewed;
    std::vector<std::size_t> seen;
    for (const auto& name : names) {
      const auto entry = gazetteer.find(name);
      if (!entry || std::find(seen.begin(), seen.end(), *entry) != seen.end()) continue;
      seen.push_back(*entry);
      ++row->counts[index_of(gazetteer[*entry].orientation)];
      ++row->occurrences;
    }
  }
  for (auto& r : rows) {
    if (r.occurrences == 0) continue;
    for (std::size_t o = 0; o < 5; ++o) {
      r.shares[o] = 100.0 * static_cast<double>(r.counts[o]) /
                    static_cast<double>(r.occurrences);
    }
  }
  return rows;
}

PresenceLift presence_commenter_lift(const Corpus& corpus,
                                     std::span<const VideoAnnotation> annotations) {
  const auto by_video = index_annotations(corpus, annotations);
  PresenceLift result;
  double total = 0.0;
  for (ChannelIdx c = 0; c < corpus.channels().size(); ++c) {
    const auto& channel = corpus.channels()[c];
    if (channel.kind != ChannelKind::NM) continue;
    std::uint64_t with_sum = 0, without_sum = 0;
    std::size_t with_n = 0, without_n = 0;
    for (auto v : corpus.channel_videos(c)) {
      const auto* a = by_video[v];
      if (!a) continue;
      const auto commenters = corpus.video_commenters(v).size();
      if (a->mentioned.empty()) {
        without_sum += commenters;
        ++without_n;
      } else {
        with_sum += commenters;
        ++with_n;
      }
    }
    if (with_n == 0 || without_n == 0 || without_sum == 0) {
      result.excluded.push_back(channel.id);
      continue;
    }
    ChannelLift lift;
    lift.channel_id = channel.id;
    lift.with_politician = static_cast<double>(with_sum) / static_cast<double>(with_n);
    lift.without_politician =
        static_cast<double>(without_sum) / static_cast<double>(without_n);
    lift.lift = lift.with_politician / lift.without_politician;
    total += lift.lift;
    result.channels.push_back(std::move(lift));
  }
  if (!result.channels.empty()) {
    result.lift = total / static_cast<double>(result.channels.size());
  }
  return result;
}

std::string_view to_string(PresenceCategory category) noexcept {
  switch (category) {
    case PresenceCategory::NoPolitician: return "no_politician";
    case PresenceCategory::AnyPolitician: return "any_politician";
    case PresenceCategory::FarLeft: return "far-left";
    case PresenceCategory::Left: return "left";
    case PresenceCategory::Center: return "center";
    case PresenceCategory::Right: return "right";
    case PresenceCategory::FarRight: return "far-right";
  }
  return "no_politician";
}

PresenceCategory category_for(Orientation orientation) noexcept {
  return static_cast<PresenceCategory>(2 + index_of(orientation));
}

PresenceOverlap presence_overlap(const Corpus& corpus,
                                 std::span<const VideoAnnotation> annotations,
                                 const Gazetteer& gazetteer) {
  const auto by_video = index_annotations(corpus, annotations);

  // PP orientations each commenter touched, as bits over kAllOrientations.
  std::vector<std::uint8_t> pp_mask(corpus.commenter_count(), 0);
  for (CommenterIdx k = 0; k < corpus.commenter_count(); ++k) {
    for (auto v : corpus.commenter_videos(k)) {
      const auto& ch = corpus.channels()[corpus.video_channel(v)];
      if (ch.kind == ChannelKind::PP) {
        pp_mask[k] |= static_cast<std::uint8_t>(1u << index_of(ch.orientation));
      }
    }
  }

  PresenceOverlap result;
  std::array<std::array<double, 5>, kPresenceCategoryCount> sums{};
  // Per-commenter category bits for the current channel.
  std::vector<std::uint8_t> categories(corpus.commenter_count(), 0);
  std::vector<CommenterIdx> members;
  for (ChannelIdx c = 0; c < corpus.channels().size(); ++c) {
    const auto& channel = corpus.channels()[c];
    if (channel.kind != ChannelKind::NM) continue;
    members.clear();
    for (auto v : corpus.channel_videos(c)) {
      const auto* a = by_video[v];
      if (!a || has_flag(*a, kFlagBackendFailure)) continue;
      std::uint8_t bits = 0;
      for (const auto& name : a->interviewed) {
        if (const auto e = gazetteer.find(name)) {
          bits |= static_cast<std::uint8_t>(
              1u << static_cast<unsigned>(category_for(gazetteer[*e].orientation)));
        }
      }
      bits |= static_cast<std::uint8_t>(
          bits ? 1u << static_cast<unsigned>(PresenceCategory::AnyPolitician)
               : 1u << static_cast<unsigned>(PresenceCategory::NoPolitician));
      for (auto k : corpus.video_commenters(v)) {
        if (categories[k] == 0) members.push_back(k);
        categories[k] |= bits;
      }
    }
    std::array<std::uint64_t, kPresenceCategoryCount> size{};
    std::array<std::array<std::uint64_t, 5>, kPresenceCategoryCount> hits{};
    for (auto k : members) {
      for (std::size_t cat = 0; cat < kPresenceCategoryCount; ++cat) {
        if (!(categories[k] & (1u << cat))) continue;
        ++size[cat];
        for (std::size_t o = 0; o < 5; ++o) {
          if (pp_mask[k] & (1u << o)) ++hits[cat][o];
        }
      }
      categories[k] = 0;
    }
    PresenceOverlap::ChannelCells cells;
    cells.channel_id = channel.id;
    for (std::size_t cat = 0; cat < kPresenceCategoryCount; ++cat) {
      if (size[cat] > 0) ++result.channels[cat];
      for (std::size_t o = 0; o < 5; ++o) {
        if (size[cat] == 0) {
          cells.percent[cat][o] = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        cells.percent[cat][o] = 100.0 * static_cast<double>(hits[cat][o]) /
                                static_cast<double>(size[cat]);
        sums[cat][o] += cells.percent[cat][o];
      }
    }
    result.per_channel.push_back(std::move(cells));
  }
  for (std::size_t cat = 0; cat < kPresenceCategoryCount; ++cat) {
    if (result.channels[cat] == 0) continue;
    for (std::size_t o = 0; o < 5; ++o) {
      result.mean[cat][o] = sums[cat][o] / static_cast<double>(result.channels[cat]);
    }
  }
  return result;
}

}  // namespace mediagraph
