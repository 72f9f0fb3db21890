#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "mediagraph/corpus.hpp"

namespace mediagraph {

enum class ProbeStatus { Resolved, Unreachable };

struct ShortsProbeResult {
  std::string video_id;
  std::string final_url;  // non-empty when Resolved
  ProbeStatus status = ProbeStatus::Unreachable;
};

/// Maps a video id to where its Shorts URL ends up. Must be callable from
/// several threads at once when labelling runs in parallel.
using ShortsResolver = std::function<ShortsProbeResult(std::string_view video_id)>;

struct HttpResolverConfig {
  /// "{id}" is replaced with the video id.
  std::string url_template = "https://www.youtube.com/shorts/{id}";
  std::chrono::milliseconds delay{500};  // pause before each request
  std::chrono::seconds timeout{20};
};

/// Production resolver: GET the templated URL, follow redirects, report the
/// final URL.
ShortsResolver make_http_resolver(HttpResolverConfig config = {});

/// Short iff "/shorts/" occurs in the final URL, Regular when resolved
/// without it, Unlabeled when unreachable. An unreachable probe is retried
/// `attempts - 1` more times.
ShortsLabel classify_video(std::string_view video_id, const ShortsResolver& resolver,
                           int attempts = 2);

struct LabelCounts {
  std::size_t short_count = 0;
  std::size_t regular = 0;
  std::size_t unlabeled = 0;
  std::size_t probed = 0;
};

struct LabelOutcome {
  Corpus corpus;
  LabelCounts counts;  // over the whole returned corpus; probed = resolver targets
};

/// Probes every Unlabeled video; labelled videos are left untouched.
LabelOutcome label_corpus(const Corpus& corpus, const ShortsResolver& resolver,
                          std::size_t workers = 1);

}  // namespace mediagraph
