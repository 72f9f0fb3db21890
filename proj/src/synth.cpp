#include "mediagraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

// Samplers built on the raw mt19937_64 stream so output does not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const auto limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::size_t between(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(below(hi - lo + 1));
  }

  // Failures before the first success of a Bernoulli(p) trial.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    const double u = 1.0 - uniform();  // (0, 1]
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  // k distinct values from [0, n), in increasing order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < k && i < n; ++i) {
      std::swap(all[i], all[i + below(n - i)]);
    }
    all.resize(std::min(k, n));
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 engine_;
};

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::Config, fmt::format("{} must lie in [0, 1], got {}", name, p));
  }
}

Timestamp day_start(Date d) { return Timestamp{d}; }

// Collects records and hands out sequential ids.
struct Builder {
  std::vector<Channel> channels;
  std::vector<Video> videos;
  std::vector<Comment> comments;
  CollectionWindow window = CollectionWindow::parse("2024-03-01", "2024-07-14");

  std::size_t add_channel(ChannelKind kind, Orientation o, std::uint64_t subscribers) {
    Channel c;
    c.id = fmt::format("ch{:04d}", channels.size());
    c.title = fmt::format("{} {} channel {}", to_string(kind), to_string(o), channels.size());
    c.kind = kind;
    c.orientation = o;
    c.subscriber_count = subscribers;
    channels.push_back(std::move(c));
    return channels.size() - 1;
  }

  std::size_t add_video(std::size_t channel, Rng& rng, std::string title = {}) {
    Video v;
    v.id = fmt::format("v{:07d}", videos.size());
    v.channel_id = channels[channel].id;
    const auto span_s = window.day_count() * 86400;
    v.published_at = day_start(window.start()) +
                     std::chrono::seconds(rng.below(static_cast<std::uint64_t>(span_s)));
    v.title = title.empty() ? fmt::format("Video {}", videos.size()) : std::move(title);
    videos.push_back(std::move(v));
    return videos.size() - 1;
  }

  void add_comment(std::size_t video, const std::string& author, Rng& rng) {
    Comment c;
    c.id = fmt::format("c{:09d}", comments.size());
    c.video_id = videos[video].id;
    c.author_id = author;
    c.published_at = videos[video].published_at +
                     std::chrono::seconds(rng.below(7 * 86400));
    ++videos[video].comment_count;
    comments.push_back(std::move(c));
  }

  Corpus build() {
    return Corpus::build(std::move(channels), std::move(videos), std::move(comments),
                         window);
  }
};

}  // namespace

SynthConfig SynthConfig::all_groups(std::size_t channels) {
  SynthConfig config;
  for (const auto& g : kReportGroups) config.groups.push_back({g.kind, g.orientation, channels});
  return config;
}

Corpus generate_synthetic(const SynthConfig& config, std::uint64_t seed) {
  check_probability(config.in_group_probability, "in_group_probability");
  check_probability(config.cross_group_probability, "cross_group_probability");
  check_probability(config.repeat_probability, "repeat_probability");
  if (config.repeat_probability >= 1.0) {
    throw Error(ErrorCode::Config, "repeat_probability must be below 1");
  }
  if (config.shorts_probability > 1.0) {
    throw Error(ErrorCode::Config, "shorts_probability must not exceed 1");
  }
  for (const auto& g : config.groups) {
    if (g.kind == ChannelKind::NM && (g.orientation == Orientation::FarLeft ||
                                      g.orientation == Orientation::FarRight)) {
      throw Error(ErrorCode::Config, "NM groups cannot have a far orientation");
    }
  }
  if (config.commenter_pool == 0 &&
      (config.in_group_probability > 0.0 || config.cross_group_probability > 0.0) &&
      config.videos_per_channel > 0 && !config.groups.empty()) {
    throw Error(ErrorCode::Config, "commenter_pool is 0 but comment probabilities are not");
  }

  Rng rng(seed);
  Builder b;
  b.window = config.window;
  const std::size_t group_count = config.groups.size();

  std::vector<std::string> commenter_ids(config.commenter_pool);
  std::vector<std::vector<std::size_t>> members(group_count);
  for (std::size_t k = 0; k < config.commenter_pool; ++k) {
    commenter_ids[k] = fmt::format("u{:07d}", k);
    if (group_count) members[k % group_count].push_back(k);
  }

  // Visit each pool member independently with probability p.
  auto visit = [&](const std::vector<std::size_t>& pool, double p, auto&& fn) {
    if (p <= 0.0) return;
    for (std::uint64_t i = rng.geometric(p); i < pool.size(); i += 1 + rng.geometric(p)) {
      fn(pool[i]);
    }
  };

  for (std::size_t g = 0; g < group_count; ++g) {
    const auto& group = config.groups[g];
    for (std::size_t c = 0; c < group.channels; ++c) {
      const auto subscribers =
          static_cast<std::uint64_t>(std::exp(10.0 + 1.5 * rng.normal()));
      const auto ch = b.add_channel(group.kind, group.orientation, subscribers);
      for (std::size_t j = 0; j < config.videos_per_channel; ++j) {
        const auto v = b.add_video(ch, rng);
        auto& video = b.videos[v];
        bool is_short = false;
        if (config.shorts_probability >= 0.0) {
          is_short = rng.uniform() < config.shorts_probability;
          video.shorts_label = is_short ? ShortsLabel::Short : ShortsLabel::Regular;
        }
        const double mu = is_short ? 9.0 : 8.0;
        video.view_count = static_cast<std::uint64_t>(std::exp(mu + 1.2 * rng.normal()));
        video.like_count = static_cast<std::uint64_t>(
            static_cast<double>(video.view_count) * (0.01 + 0.04 * rng.uniform()));

        auto write = [&](std::size_t k) {
          const auto n = 1 + std::min<std::uint64_t>(
                                 50, rng.geometric(1.0 - config.repeat_probability));
          for (std::uint64_t r = 0; r < n; ++r) b.add_comment(v, commenter_ids[k], rng);
        };
        visit(members[g], config.in_group_probability, write);
        for (std::size_t h = 0; h < group_count; ++h) {
          if (h != g) visit(members[h], config.cross_group_probability, write);
        }
      }
    }
  }
  return b.build();
}

PlantedTaxonomy generate_planted_taxonomy(const TaxonomyPlan& plan, std::uint64_t seed) {
  if (plan.channels_per_group == 0 || plan.videos_per_channel == 0 ||
      plan.max_comments_per_video == 0) {
    throw Error(ErrorCode::Config, "taxonomy plan needs channels, videos and comments");
  }
  Rng rng(seed);
  Builder b;
  // channels_of[kind][orientation] -> channel indices; videos_of[channel].
  std::array<std::array<std::vector<std::size_t>, 5>, 2> channels_of;
  std::vector<std::vector<std::size_t>> videos_of;
  for (const auto& g : kReportGroups) {
    for (std::size_t c = 0; c < plan.channels_per_group; ++c) {
      const auto ch = b.add_channel(g.kind, g.orientation, 1000 + rng.below(100000));
      channels_of[static_cast<std::size_t>(g.kind)][index_of(g.orientation)].push_back(ch);
      videos_of.emplace_back();
      for (std::size_t j = 0; j < plan.videos_per_channel; ++j) {
        videos_of[ch].push_back(b.add_video(ch, rng));
      }
    }
  }
  std::vector<std::size_t> nm_channels;
  for (auto o : kNewsOrientations) {
    const auto& list = channels_of[0][index_of(o)];
    nm_channels.insert(nm_channels.end(), list.begin(), list.end());
  }
  auto pick = [&](const std::vector<std::size_t>& from) { return from[rng.below(from.size())]; };
  auto comment_on_channel = [&](std::size_t ch, const std::string& author) {
    const auto& vids = videos_of[ch];
    const auto n = rng.between(1, vids.size());
    for (auto i : rng.sample(vids.size(), n)) {
      const auto times = rng.between(1, plan.max_comments_per_video);
      for (std::size_t t = 0; t < times; ++t) b.add_comment(vids[i], author, rng);
    }
  };
  auto pp_channel = [&](std::size_t orientation) {
    return pick(channels_of[1][orientation]);
  };

  std::vector<std::pair<std::string, CommenterGroup>> truth;
  for (std::size_t gi = 0; gi < kCommenterGroups.size(); ++gi) {
    const auto group = kCommenterGroups[gi];
    for (std::size_t i = 0; i < plan.group_sizes[gi]; ++i) {
      const auto author = fmt::format("t{}_{:06d}", gi, i);
      truth.emplace_back(author, group);
      const bool nm = group == CommenterGroup::OnlyNM ||
                      group == CommenterGroup::CrossTypeSingle ||
                      group == CommenterGroup::CrossTypeCross;
      std::size_t pp_orientations = 0;
      if (group == CommenterGroup::OnlyPPSingle || group == CommenterGroup::CrossTypeSingle) {
        pp_orientations = 1;
      } else if (group == CommenterGroup::OnlyPPCross ||
                 group == CommenterGroup::CrossTypeCross) {
        pp_orientations = rng.between(2, 3);
      }
      if (nm) {
        const auto n = rng.between(1, 2);
        for (auto i2 : rng.sample(nm_channels.size(), n)) {
          comment_on_channel(nm_channels[i2], author);
        }
      }
      for (auto o : rng.sample(5, pp_orientations)) {
        comment_on_channel(pp_channel(o), author);
        if (pp_orientations == 1 && rng.uniform() < 0.5) {
          comment_on_channel(pp_channel(o), author);  // same orientation again
        }
      }
    }
  }

  PlantedTaxonomy out;
  out.corpus = b.build();
  out.planted.assign(out.corpus.commenter_count(), CommenterGroup::OnlyNM);
  for (const auto& [author, group] : truth) {
    out.planted[*out.corpus.find_commenter(author)] = group;
  }
  return out;
}

Corpus generate_planted_pp_sides(const PpSidePlan& plan, std::uint64_t seed) {
  Rng rng(seed);
  Builder b;
  std::array<std::size_t, 5> pp_video{};
  for (auto o : kAllOrientations) {
    const auto ch = b.add_channel(ChannelKind::PP, o, 1000);
    pp_video[index_of(o)] = b.add_video(ch, rng);
  }
  std::vector<std::size_t> nm_video;
  for (auto o : kNewsOrientations) {
    nm_video.push_back(b.add_video(b.add_channel(ChannelKind::NM, o, 1000), rng));
  }
  // Non-empty subset of `allowed` orientation indices.
  auto subset = [&](std::vector<std::size_t> allowed) {
    std::vector<std::size_t> picked;
    while (picked.empty()) {
      for (auto o : allowed) {
        if (rng.uniform() < 0.5) picked.push_back(o);
      }
    }
    return picked;
  };
  auto write = [&](const std::string& author, const std::vector<std::size_t>& orientations) {
    for (auto o : orientations) b.add_comment(pp_video[o], author, rng);
    if (rng.uniform() < 0.5) b.add_comment(nm_video[rng.below(nm_video.size())], author, rng);
  };
  std::size_t n = 0;
  for (std::size_t i = 0; i < plan.left_only; ++i) {
    write(fmt::format("s{:06d}", n++), subset({0, 1}));
  }
  for (std::size_t i = 0; i < plan.right_only; ++i) {
    write(fmt::format("s{:06d}", n++), subset({3, 4}));
  }
  for (std::size_t i = 0; i < plan.both; ++i) {
    auto o = subset({0, 1});
    const auto r = subset({3, 4});
    o.insert(o.end(), r.begin(), r.end());
    write(fmt::format("s{:06d}", n++), o);
  }
  for (std::size_t i = 0; i < plan.other; ++i) {
    auto o = subset({0, 1, 3, 4});
    o.push_back(2);
    write(fmt::format("s{:06d}", n++), o);
  }
  for (std::size_t i = 0; i < plan.nm_only; ++i) {
    b.add_comment(nm_video[rng.below(nm_video.size())], fmt::format("s{:06d}", n++), rng);
  }
  return b.build();
}

PlantedPresence generate_planted_presence(const PresencePlan& plan, std::uint64_t seed) {
  if (plan.plain_videos == 0 || plan.commenters_per_plain_video == 0) {
    throw Error(ErrorCode::Config, "presence plan needs plain videos with commenters");
  }
  const std::size_t plain_per_channel = plan.plain_videos * plan.commenters_per_plain_video;
  if (plan.background_members > plain_per_channel) {
    throw Error(ErrorCode::Config, "background_members exceeds plain commenters per channel");
  }
  if (plan.interview_videos > 0 && plan.commenters_per_interview_video > plan.far_right_pool) {
    throw Error(ErrorCode::Config, "far_right_pool smaller than an interview audience");
  }
  Rng rng(seed);
  Builder b;

  const std::array<std::pair<const char*, Orientation>, 5> names = {{
      {"Louise Arnaudet", Orientation::FarLeft},
      {"Paul Verchère", Orientation::Left},
      {"Claire Montbrun", Orientation::Center},
      {"Henri Delaunay", Orientation::Right},
      {"Marine Castagnède", Orientation::FarRight},
  }};
  std::vector<Politician> politicians;
  for (const auto& [name, o] : names) {
    politicians.push_back({name, {}, fmt::format("Parti {}", to_string(o)), o});
  }

  PlantedPresence out;
  out.far_right_politician = names[4].first;

  // PP side: one channel with two videos per orientation; audiences filled below.
  std::array<std::vector<std::size_t>, 5> pp_videos;
  std::array<std::vector<std::string>, 5> pp_audience;
  for (auto o : kAllOrientations) {
    const auto ch = b.add_channel(ChannelKind::PP, o, 5000);
    pp_videos[index_of(o)] = {b.add_video(ch, rng), b.add_video(ch, rng)};
  }
  std::vector<std::string> far_right_pool;
  for (std::size_t i = 0; i < plan.far_right_pool; ++i) {
    far_right_pool.push_back(fmt::format("fr{:06d}", i));
  }
  pp_audience[4] = far_right_pool;

  for (std::size_t c = 0; c < plan.nm_channels; ++c) {
    const auto o = kNewsOrientations[c % kNewsOrientations.size()];
    const auto ch = b.add_channel(ChannelKind::NM, o, 20000);
    std::vector<std::string> plain;
    for (std::size_t j = 0; j < plan.plain_videos; ++j) {
      const auto v = b.add_video(ch, rng, fmt::format("Le journal de la semaine {}", j + 1));
      out.annotations.push_back({b.videos[v].id, {}, {}, {}});
      for (std::size_t k = 0; k < plan.commenters_per_plain_video; ++k) {
        plain.push_back(fmt::format("n{:03d}_{:06d}", c, plain.size()));
        b.add_comment(v, plain.back(), rng);
      }
    }
    for (auto o2 : kAllOrientations) {
      for (auto i : rng.sample(plain.size(), plan.background_members)) {
        pp_audience[index_of(o2)].push_back(plain[i]);
      }
    }
    for (std::size_t j = 0; j < plan.interview_videos; ++j) {
      const auto v = b.add_video(ch, rng, fmt::format("Entretien avec {}", names[4].first));
      b.videos[v].description = fmt::format("{} répond à nos questions.", names[4].first);
      out.annotations.push_back(
          {b.videos[v].id, {names[4].first}, {names[4].first}, {}});
      for (auto i : rng.sample(far_right_pool.size(), plan.commenters_per_interview_video)) {
        b.add_comment(v, far_right_pool[i], rng);
      }
    }
  }
  for (auto o : kAllOrientations) {
    const auto& vids = pp_videos[index_of(o)];
    for (const auto& author : pp_audience[index_of(o)]) {
      b.add_comment(vids[rng.below(vids.size())], author, rng);
    }
  }

  out.background_percent = 100.0 * static_cast<double>(plan.background_members) /
                           static_cast<double>(plain_per_channel);
  out.corpus = b.build();
  out.gazetteer = Gazetteer(std::move(politicians));
  return out;
}

}  // namespace mediagraph
