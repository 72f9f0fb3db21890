#include "mediagraph/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<std::uint32_t> offsets_from_counts(
    const std::vector<std::uint32_t>& counts) {
  std::vector<std::uint32_t> offsets(counts.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    offsets[i + 1] = offsets[i] + counts[i];
  }
  return offsets;
}

// ---- JSON field access with line-scoped diagnostics ----

struct LineContext {
  const std::string& file;
  std::size_t line;

  [[noreturn]] void fail(const std::string& detail) const {
    throw ParseError(file, line, detail);
  }

  const json& field(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      fail(fmt::format("missing required field '{}'", key));
    }
    return *it;
  }

  std::string string_field(const json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (!v.is_string()) fail(fmt::format("field '{}' must be a string", key));
    return v.get<std::string>();
  }

  std::uint64_t count_field(const json& obj, const char* key) const {
    const auto& v = field(obj, key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      const auto i = v.get<std::int64_t>();
      if (i < 0) fail(fmt::format("field '{}' must be non-negative", key));
      return static_cast<std::uint64_t>(i);
    }
    fail(fmt::format("field '{}' must be a non-negative integer", key));
  }

  Timestamp time_field(const json& obj, const char* key) const {
    const auto text = string_field(obj, key);
    const auto ts = parse_timestamp(text);
    if (!ts) fail(fmt::format("field '{}' is not RFC 3339: '{}'", key, text));
    return *ts;
  }
};

template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  }
  const std::string name = path.string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    LineContext ctx{name, line_no};
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      ctx.fail(fmt::format("malformed JSON: {}", e.what()));
    }
    if (!obj.is_object()) ctx.fail("record is not a JSON object");
    fn(obj, ctx);
  }
}

}  // namespace

Corpus Corpus::build(std::vector<Channel> channels, std::vector<Video> videos,
                     std::vector<Comment> comments,
                     std::optional<CollectionWindow> window) {
  Corpus corpus;
  corpus.window_ = window;

  std::unordered_set<std::string_view> channel_ids;
  for (const auto& ch : channels) {
    if (!channel_ids.insert(ch.id).second) {
      throw Error(ErrorCode::DuplicateId,
                  fmt::format("duplicate channel id '{}'", ch.id));
    }
    if (ch.kind == ChannelKind::NM && (ch.orientation == Orientation::FarLeft ||
                                       ch.orientation == Orientation::FarRight)) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("NM channel '{}' has orientation '{}'; NM channels "
                              "use left, center or right",
                              ch.id, to_string(ch.orientation)));
    }
  }

  std::unordered_set<std::string> excluded_videos;
  std::unordered_set<std::string_view> video_ids;
  std::vector<Video> kept_videos;
  kept_videos.reserve(videos.size());
  for (auto& v : videos) {
    if (!channel_ids.contains(v.channel_id)) {
      throw Error(ErrorCode::DanglingReference,
                  fmt::format("video '{}' references unknown channel '{}'",
                              v.id, v.channel_id));
    }
    if (video_ids.contains(v.id) || excluded_videos.contains(v.id)) {
      throw Error(ErrorCode::DuplicateId,
                  fmt::format("duplicate video id '{}'", v.id));
    }
    if (window && !window->contains(v.published_at)) {
      excluded_videos.insert(v.id);
      ++corpus.report_.videos_out_of_window;
      continue;
    }
    kept_videos.push_back(std::move(v));
    video_ids.insert(kept_videos.back().id);
  }
  // kept_videos never reallocates after reserve, but rebuild the view set on
  // the final storage anyway before it moves into the corpus.
  corpus.channels_ = std::move(channels);
  corpus.videos_ = std::move(kept_videos);
  video_ids.clear();
  for (const auto& v : corpus.videos_) video_ids.insert(v.id);

  std::unordered_set<std::string_view> comment_ids;
  comment_ids.reserve(comments.size());
  std::vector<Comment> kept_comments;
  kept_comments.reserve(comments.size());
  for (auto& c : comments) {
    if (!video_ids.contains(c.video_id)) {
      if (excluded_videos.contains(c.video_id)) {
        ++corpus.report_.comments_on_excluded_videos;
        continue;
      }
      throw Error(ErrorCode::DanglingReference,
                  fmt::format("comment '{}' references unknown video '{}'",
                              c.id, c.video_id));
    }
    kept_comments.push_back(std::move(c));
    if (!comment_ids.insert(kept_comments.back().id).second) {
      throw Error(ErrorCode::DuplicateId,
                  fmt::format("duplicate comment id '{}'",
                              kept_comments.back().id));
    }
  }
  corpus.comments_ = std::move(kept_comments);
  corpus.build_indexes();
  return corpus;
}

void Corpus::build_indexes() {
  channel_by_id_.clear();
  video_by_id_.clear();
  channel_by_id_.reserve(channels_.size());
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    channel_by_id_.emplace(channels_[i].id, static_cast<ChannelIdx>(i));
  }
  video_by_id_.reserve(videos_.size());
  video_channel_.resize(videos_.size());
  std::vector<std::uint32_t> per_channel(channels_.size(), 0);
  for (std::size_t i = 0; i < videos_.size(); ++i) {
    video_by_id_.emplace(videos_[i].id, static_cast<VideoIdx>(i));
    const auto c = channel_by_id_.at(videos_[i].channel_id);
    video_channel_[i] = c;
    ++per_channel[c];
  }
  channel_videos_.offsets = offsets_from_counts(per_channel);
  channel_videos_.values.assign(videos_.size(), 0);
  {
    auto cursor = channel_videos_.offsets;
    for (std::size_t i = 0; i < videos_.size(); ++i) {
      channel_videos_.values[cursor[video_channel_[i]]++] =
          static_cast<VideoIdx>(i);
    }
  }

  // Intern author ids in lexicographic order.
  std::vector<std::string_view> authors;
  authors.reserve(comments_.size());
  for (const auto& c : comments_) authors.push_back(c.author_id);
  std::sort(authors.begin(), authors.end());
  authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
  commenter_ids_.assign(authors.begin(), authors.end());
  std::unordered_map<std::string_view, CommenterIdx> commenter_by_id;
  commenter_by_id.reserve(commenter_ids_.size());
  for (std::size_t k = 0; k < commenter_ids_.size(); ++k) {
    commenter_by_id.emplace(commenter_ids_[k], static_cast<CommenterIdx>(k));
  }

  commenter_comments_.assign(commenter_ids_.size(), 0);
  video_comment_records_.assign(videos_.size(), 0);
  std::vector<std::uint64_t> pairs;  // video << 32 | commenter
  pairs.reserve(comments_.size());
  for (const auto& c : comments_) {
    const auto v = video_by_id_.at(c.video_id);
    const auto k = commenter_by_id.at(c.author_id);
    ++commenter_comments_[k];
    ++video_comment_records_[v];
    pairs.push_back((std::uint64_t{v} << 32) | k);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::uint32_t> per_video(videos_.size(), 0);
  std::vector<std::uint32_t> per_commenter(commenter_ids_.size(), 0);
  for (auto p : pairs) {
    ++per_video[p >> 32];
    ++per_commenter[p & 0xffffffffu];
  }
  video_commenters_.offsets = offsets_from_counts(per_video);
  video_commenters_.values.resize(pairs.size());
  commenter_videos_.offsets = offsets_from_counts(per_commenter);
  commenter_videos_.values.resize(pairs.size());
  {
    auto cursor = commenter_videos_.offsets;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto v = static_cast<VideoIdx>(pairs[i] >> 32);
      const auto k = static_cast<CommenterIdx>(pairs[i] & 0xffffffffu);
      video_commenters_.values[i] = k;
      // Pairs are sorted by video, so each commenter row fills in video order.
      commenter_videos_.values[cursor[k]++] = v;
    }
  }

  std::vector<std::uint64_t> channel_pairs;
  channel_pairs.reserve(pairs.size());
  for (auto p : pairs) {
    const auto c = video_channel_[p >> 32];
    channel_pairs.push_back((std::uint64_t{c} << 32) | (p & 0xffffffffu));
  }
  std::sort(channel_pairs.begin(), channel_pairs.end());
  channel_pairs.erase(std::unique(channel_pairs.begin(), channel_pairs.end()),
                      channel_pairs.end());
  std::vector<std::uint32_t> per_channel_commenters(channels_.size(), 0);
  for (auto p : channel_pairs) ++per_channel_commenters[p >> 32];
  channel_commenters_.offsets = offsets_from_counts(per_channel_commenters);
  channel_commenters_.values.resize(channel_pairs.size());
  for (std::size_t i = 0; i < channel_pairs.size(); ++i) {
    channel_commenters_.values[i] =
        static_cast<CommenterIdx>(channel_pairs[i] & 0xffffffffu);
  }
}

std::optional<ChannelIdx> Corpus::find_channel(std::string_view id) const {
  auto it = channel_by_id_.find(std::string(id));
  if (it == channel_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<VideoIdx> Corpus::find_video(std::string_view id) const {
  auto it = video_by_id_.find(std::string(id));
  if (it == video_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<CommenterIdx> Corpus::find_commenter(std::string_view id) const {
  auto it = std::lower_bound(commenter_ids_.begin(), commenter_ids_.end(), id);
  if (it == commenter_ids_.end() || *it != id) return std::nullopt;
  return static_cast<CommenterIdx>(it - commenter_ids_.begin());
}

std::span<const VideoIdx> Corpus::channel_videos(ChannelIdx c) const {
  return channel_videos_.row(c);
}

std::span<const CommenterIdx> Corpus::video_commenters(VideoIdx v) const {
  return video_commenters_.row(v);
}

std::span<const VideoIdx> Corpus::commenter_videos(CommenterIdx k) const {
  return commenter_videos_.row(k);
}

std::span<const CommenterIdx> Corpus::channel_commenters(ChannelIdx c) const {
  return channel_commenters_.row(c);
}

Corpus Corpus::with_shorts_labels(std::vector<ShortsLabel> labels) const {
  if (labels.size() != videos_.size()) {
    throw Error(ErrorCode::Mismatch,
                fmt::format("{} labels for {} videos", labels.size(),
                            videos_.size()));
  }
  Corpus copy = *this;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    copy.videos_[i].shorts_label = labels[i];
  }
  return copy;
}

Corpus load_corpus(const std::filesystem::path& channel_path,
                   const std::filesystem::path& video_path,
                   const std::filesystem::path& comment_path,
                   std::optional<CollectionWindow> window) {
  std::vector<Channel> channels;
  for_each_record(channel_path, [&](const json& obj, const LineContext& ctx) {
    Channel ch;
    ch.id = ctx.string_field(obj, "id");
    ch.title = ctx.string_field(obj, "title");
    const auto kind_text = ctx.string_field(obj, "kind");
    const auto kind = parse_kind(kind_text);
    if (!kind) ctx.fail(fmt::format("unknown channel kind '{}'", kind_text));
    ch.kind = *kind;
    const auto orient_text = ctx.string_field(obj, "orientation");
    const auto orient = parse_orientation(orient_text);
    if (!orient) ctx.fail(fmt::format("unknown orientation '{}'", orient_text));
    ch.orientation = *orient;
    ch.subscriber_count = ctx.count_field(obj, "subscriber_count");
    channels.push_back(std::move(ch));
  });

  std::vector<Video> videos;
  for_each_record(video_path, [&](const json& obj, const LineContext& ctx) {
    Video v;
    v.id = ctx.string_field(obj, "id");
    v.channel_id = ctx.string_field(obj, "channel_id");
    v.published_at = ctx.time_field(obj, "published_at");
    v.title = ctx.string_field(obj, "title");
    v.description = ctx.string_field(obj, "description");
    v.view_count = ctx.count_field(obj, "view_count");
    v.like_count = ctx.count_field(obj, "like_count");
    v.comment_count = ctx.count_field(obj, "comment_count");
    if (auto it = obj.find("shorts_label"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) ctx.fail("field 'shorts_label' must be a string");
      const auto label = parse_shorts_label(it->get<std::string>());
      if (!label) {
        ctx.fail(fmt::format("unknown shorts_label '{}'",
                             it->get<std::string>()));
      }
      v.shorts_label = *label;
    }
    videos.push_back(std::move(v));
  });

  std::vector<Comment> comments;
  for_each_record(comment_path, [&](const json& obj, const LineContext& ctx) {
    Comment c;
    c.id = ctx.string_field(obj, "id");
    c.video_id = ctx.string_field(obj, "video_id");
    c.author_id = ctx.string_field(obj, "author_id");
    c.published_at = ctx.time_field(obj, "published_at");
    comments.push_back(std::move(c));
  });

  return Corpus::build(std::move(channels), std::move(videos),
                       std::move(comments), window);
}

Corpus load_corpus_dir(const std::filesystem::path& dir,
                       std::optional<CollectionWindow> window) {
  return load_corpus(dir / kChannelsFile, dir / kVideosFile,
                     dir / kCommentsFile, window);
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](std::string_view name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::Io,
                  fmt::format("cannot write '{}'", (dir / name).string()));
    }
    return out;
  };

  auto channels = open(kChannelsFile);
  for (const auto& ch : corpus.channels()) {
    ordered_json j;
    j["id"] = ch.id;
    j["title"] = ch.title;
    j["kind"] = to_string(ch.kind);
    j["orientation"] = to_string(ch.orientation);
    j["subscriber_count"] = ch.subscriber_count;
    channels << j.dump() << '\n';
  }

  auto videos = open(kVideosFile);
  for (const auto& v : corpus.videos()) {
    ordered_json j;
    j["id"] = v.id;
    j["channel_id"] = v.channel_id;
    j["published_at"] = format_timestamp(v.published_at);
    j["title"] = v.title;
    j["description"] = v.description;
    j["view_count"] = v.view_count;
    j["like_count"] = v.like_count;
    j["comment_count"] = v.comment_count;
    if (v.shorts_label != ShortsLabel::Unlabeled) {
      j["shorts_label"] = to_string(v.shorts_label);
    }
    videos << j.dump() << '\n';
  }

  auto comments = open(kCommentsFile);
  for (const auto& c : corpus.comments()) {
    ordered_json j;
    j["id"] = c.id;
    j["video_id"] = c.video_id;
    j["author_id"] = c.author_id;
    j["published_at"] = format_timestamp(c.published_at);
    comments << j.dump() << '\n';
  }
}

}  // namespace mediagraph
