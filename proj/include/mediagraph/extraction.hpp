#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediagraph/corpus.hpp"
#include "mediagraph/gazetteer.hpp"

namespace mediagraph {

/// Instruction block sent ahead of every interviewee-extraction prompt.
extern const std::string_view kInterviewInstruction;

struct ExtractionRequest {
  /// "Title: <title>\nDescription: <description>"
  std::string prompt_text;
  double temperature = 0.0;
  int max_tokens = 40;
};

ExtractionRequest make_extraction_request(const Video& video);

struct BackendReply {
  bool ok = false;
  std::string text;
  std::string error;
};

/// Anything that turns an ExtractionRequest into model text. Implementations
/// must be safe to call from several threads at once.
class ExtractionBackend {
 public:
  virtual ~ExtractionBackend() = default;
  virtual BackendReply complete(const ExtractionRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Offline backend: replies {"Invited": [...]} with the gazetteer names found
/// in the prompt. It cannot tell invited people from mentioned ones.
class GazetteerBackend final : public ExtractionBackend {
 public:
  explicit GazetteerBackend(const Gazetteer& gazetteer) : gazetteer_(gazetteer) {}
  BackendReply complete(const ExtractionRequest& request) override;
  std::string name() const override { return "gazetteer"; }

 private:
  const Gazetteer& gazetteer_;
};

/// Replays recorded outputs keyed by prompt text. Unknown prompts are
/// transport failures.
class FixtureBackend final : public ExtractionBackend {
 public:
  FixtureBackend() = default;
  explicit FixtureBackend(std::map<std::string, std::string> replies)
      : replies_(std::move(replies)) {}

  /// Line-delimited JSON {"prompt": ..., "output": ...}.
  static FixtureBackend load(const std::filesystem::path& path);

  void add(std::string prompt, std::string output) {
    replies_[std::move(prompt)] = std::move(output);
  }
  BackendReply complete(const ExtractionRequest& request) override;
  std::string name() const override { return "fixture"; }

 private:
  std::map<std::string, std::string> replies_;
};

struct HttpBackendConfig {
  /// Full URL of a chat-completion endpoint, e.g.
  /// "https://api.example.com/v1/chat/completions".
  std::string endpoint;
  std::string model;
  std::string token;  // sent as "Authorization: Bearer <token>" when set
  std::chrono::seconds timeout{60};
};

/// POSTs {model, messages, temperature, max_tokens} and returns
/// choices[0].message.content.
class HttpChatBackend final : public ExtractionBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  BackendReply complete(const ExtractionRequest& request) override;
  std::string name() const override { return "http"; }

  /// The JSON body sent for `request`.
  std::string request_body(const ExtractionRequest& request) const;

 private:
  HttpBackendConfig config_;
};

/// Names under "Invited" in the first balanced JSON object of `text`.
/// Tolerates surrounding prose and single-quoted JSON; nullopt when no
/// object with an "Invited" string list can be recovered.
std::optional<std::vector<std::string>> parse_invited(std::string_view text);

inline constexpr std::string_view kFlagParseFailure = "parse_failure";
inline constexpr std::string_view kFlagBackendFailure = "backend_failure";

struct InterviewExtraction {
  /// Gazetteer entries, deduplicated, in reply order.
  std::vector<std::size_t> politicians;
  std::vector<std::string> flags;
  /// Names the backend returned that are not in the gazetteer.
  std::vector<std::string> discarded;
};

/// Sends the video's title and description to `backend` (one retry on a
/// transport failure) and keeps the returned names that resolve to
/// gazetteer entries.
InterviewExtraction extract_interviewees(const Video& video,
                                         ExtractionBackend& backend,
                                         const Gazetteer& gazetteer);

}  // namespace mediagraph
