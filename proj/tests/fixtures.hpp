#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/time.hpp"

namespace fixtures {

namespace mg = mediagraph;

// Hand-built corpora for tests. Videos default to 2024-04-01 and comments
// get sequential ids.
class Builder {
 public:
  Builder& channel(std::string id, mg::ChannelKind kind = mg::ChannelKind::NM,
                   mg::Orientation o = mg::Orientation::Center) {
    mg::Channel c;
    c.title = "Channel " + id;
    c.id = std::move(id);
    c.kind = kind;
    c.orientation = o;
    channels_.push_back(std::move(c));
    return *this;
  }

  Builder& video(std::string id, std::string channel_id, std::uint64_t views = 0,
                 mg::ShortsLabel label = mg::ShortsLabel::Unlabeled,
                 std::string date = "2024-04-01T12:00:00Z") {
    mg::Video v;
    v.id = std::move(id);
    v.channel_id = std::move(channel_id);
    v.published_at = *mg::parse_timestamp(date);
    v.title = "Title " + v.id;
    v.view_count = views;
    v.shorts_label = label;
    videos_.push_back(std::move(v));
    return *this;
  }

  mg::Video& last_video() { return videos_.back(); }

  // One comment per listed author.
  Builder& comments(const std::string& video_id, const std::vector<std::string>& authors) {
    for (const auto& a : authors) {
      mg::Comment c;
      c.id = "c" + std::to_string(comments_.size());
      c.video_id = video_id;
      c.author_id = a;
      c.published_at = *mg::parse_timestamp("2024-04-02T00:00:00Z");
      comments_.push_back(std::move(c));
    }
    return *this;
  }

  mg::Corpus build(std::optional<mg::CollectionWindow> window = std::nullopt) const {
    return mg::Corpus::build(channels_, videos_, comments_, window);
  }

  std::vector<mg::Channel> channels_;
  std::vector<mg::Video> videos_;
  std::vector<mg::Comment> comments_;
};

// The worked example: one channel, v1{a,b,c}, v2{b,c}, v3{c}.
inline mg::Corpus micro_example() {
  Builder b;
  b.channel("ch").video("v1", "ch").video("v2", "ch").video("v3", "ch");
  b.comments("v1", {"a", "b", "c"}).comments("v2", {"b", "c"}).comments("v3", {"c"});
  return b.build();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  static std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() /
             ("mediagraph_test_" + name + "_" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
