#include "mediagraph/shorts.hpp"

#include <thread>

#include "http.hpp"
#include "mediagraph/parallel.hpp"

namespace mediagraph {

ShortsResolver make_http_resolver(HttpResolverConfig config) {
  return [config = std::move(config)](std::string_view video_id) {
    std::string url = config.url_template;
    if (const auto pos = url.find("{id}"); pos != std::string::npos) {
      url.replace(pos, 4, video_id);
    }
    if (config.delay.count() > 0) std::this_thread::sleep_for(config.delay);
    const auto res = detail::http_get(url, config.timeout);
    ShortsProbeResult probe;
    probe.video_id = std::string(video_id);
    if (res.ok && res.status >= 200 && res.status < 300 && !res.final_url.empty()) {
      probe.status = ProbeStatus::Resolved;
      probe.final_url = res.final_url;
    }
    return probe;
  };
}

ShortsLabel classify_video(std::string_view video_id, const ShortsResolver& resolver,
                           int attempts) {
  for (int i = 0; i < std::max(1, attempts); ++i) {
    const auto probe = resolver(video_id);
    if (probe.status != ProbeStatus::Resolved || probe.final_url.empty()) continue;
    return probe.final_url.find("/shorts/") != std::string::npos
               ? ShortsLabel::Short
               : ShortsLabel::Regular;
  }
  return ShortsLabel::Unlabeled;
}

LabelOutcome label_corpus(const Corpus& corpus, const ShortsResolver& resolver,
                          std::size_t workers) {
  const auto& videos = corpus.videos();
  std::vector<ShortsLabel> labels(videos.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    labels[i] = videos[i].shorts_label;
    if (labels[i] == ShortsLabel::Unlabeled) pending.push_back(i);
  }
  parallel_for(pending.size(), workers, [&](std::size_t j) {
    labels[pending[j]] = classify_video(videos[pending[j]].id, resolver);
  });
  LabelOutcome out;
  out.counts.probed = pending.size();
  for (auto l : labels) {
    if (l == ShortsLabel::Short) ++out.counts.short_count;
    else if (l == ShortsLabel::Regular) ++out.counts.regular;
    else ++out.counts.unlabeled;
  }
  out.corpus = pending.empty() ? corpus : corpus.with_shorts_labels(std::move(labels));
  return out;
}

}  // namespace mediagraph
