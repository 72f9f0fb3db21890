#include "mediagraph/extraction.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "http.hpp"
#include "mediagraph/error.hpp"

namespace mediagraph {

const std::string_view kInterviewInstruction =
    "'''\n"
    "Instruction:\n"
    "Extract only the full personal names of people who are invited in the video.\n"
    "Exclude titles, roles, affiliations, and political parties.\n"
    "Exclude people who are only mentioned but not invited or speaking. "
    "If no speakers, return an empty list.\n"
    "\n"
    "Output format (strict):\n"
    "{\"Invited\": [\"Full Name 1\", \"Full Name 2\"]}\n"
    "\n"
    "You must output only valid JSON, no explanations, no text outside the JSON\n"
    "\n"
    "Examples:\n"
    "\n"
    "-Input: Titre: \"Interview exclusive avec Emmanuel Macron et Jean Dupont\"\n"
    "Description : \"Le président Emmanuel Macron s’entretient avec Jean "
    "Dupont sur les enjeux actuels.\"\n"
    "-Output:{\"Invited\": [\"Emmanuel Macron\", \"Jean Dupont\"]}\n"
    "\n"
    "-Input: Titre: \"Hommage à Simone Veil\"\n"
    "Description: \"Le président a évoqué Simone Veil dans son discours.\"\n"
    "-Output:{\"Invited\": []}\n"
    "\n"
    "Now analyze the following:\n"
    "'''\n";

ExtractionRequest make_extraction_request(const Video& video) {
  ExtractionRequest r;
  r.prompt_text = "Title: " + video.title + "\nDescription: " + video.description;
  return r;
}

BackendReply GazetteerBackend::complete(const ExtractionRequest& request) {
  nlohmann::ordered_json reply;
  reply["Invited"] = nlohmann::json::array();
  for (auto i : gazetteer_.match(request.prompt_text)) {
    reply["Invited"].push_back(gazetteer_[i].full_name);
  }
  return {true, reply.dump(), {}};
}

FixtureBackend FixtureBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  }
  FixtureBackend backend;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      backend.add(obj.at("prompt").get<std::string>(),
                  obj.at("output").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return backend;
}

BackendReply FixtureBackend::complete(const ExtractionRequest& request) {
  const auto it = replies_.find(request.prompt_text);
  if (it == replies_.end()) return {false, {}, "no recorded reply for prompt"};
  return {true, it->second, {}};
}

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw Error(ErrorCode::Config, "http backend needs an endpoint URL");
  }
}

std::string HttpChatBackend::request_body(const ExtractionRequest& request) const {
  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["messages"] = nlohmann::json::array(
      {{{"role", "user"},
        {"content", std::string(kInterviewInstruction) + request.prompt_text}}});
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  return body.dump();
}

BackendReply HttpChatBackend::complete(const ExtractionRequest& request) {
  std::map<std::string, std::string> headers;
  if (!config_.token.empty()) headers["Authorization"] = "Bearer " + config_.token;
  const auto res = detail::http_post_json(config_.endpoint, request_body(request),
                                          headers, config_.timeout);
  if (!res.ok) return {false, {}, res.error};
  if (res.status < 200 || res.status >= 300) {
    return {false, {}, fmt::format("HTTP status {}", res.status)};
  }
  try {
    const auto j = nlohmann::json::parse(res.body);
    return {true, j.at("choices").at(0).at("message").at("content").get<std::string>(), {}};
  } catch (const nlohmann::json::exception& e) {
    return {false, {}, fmt::format("unexpected response body: {}", e.what())};
  }
}

namespace {

// Span of the first balanced {...} in `text`, honouring quoted strings.
std::optional<std::string_view> first_object(std::string_view text) {
  const auto start = text.find('{');
  if (start == std::string_view::npos) return std::nullopt;
  int depth = 0;
  char quote = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (quote) {
      if (c == '\\') ++i;
      else if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return text.substr(start, i - start + 1);
  }
  return std::nullopt;
}

std::optional<std::vector<std::string>> invited_from(const nlohmann::json& j) {
  if (!j.is_object()) return std::nullopt;
  const auto it = j.find("Invited");
  if (it == j.end() || !it->is_array()) return std::nullopt;
  std::vector<std::string> names;
  for (const auto& v : *it) {
    if (!v.is_string()) return std::nullopt;
    names.push_back(v.get<std::string>());
  }
  return names;
}

}  // namespace

std::optional<std::vector<std::string>> parse_invited(std::string_view text) {
  const auto object = first_object(text);
  if (!object) return std::nullopt;
  auto parsed = nlohmann::json::parse(*object, nullptr, false);
  if (parsed.is_discarded()) {
    std::string swapped(*object);
    std::replace(swapped.begin(), swapped.end(), '\'', '"');
    parsed = nlohmann::json::parse(swapped, nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
  }
  return invited_from(parsed);
}

InterviewExtraction extract_interviewees(const Video& video,
                                         ExtractionBackend& backend,
                                         const Gazetteer& gazetteer) {
  const auto request = make_extraction_request(video);
  auto reply = backend.complete(request);
  if (!reply.ok) reply = backend.complete(request);
  InterviewExtraction out;
  if (!reply.ok) {
    out.flags.emplace_back(kFlagBackendFailure);
    return out;
  }
  const auto names = parse_invited(reply.text);
  if (!names) {
    out.flags.emplace_back(kFlagParseFailure);
    return out;
  }
  for (const auto& name : *names) {
    const auto entry = gazetteer.find(name);
    if (!entry) {
      out.discarded.push_back(name);
      continue;
    }
    if (std::find(out.politicians.begin(), out.politicians.end(), *entry) ==
        out.politicians.end()) {
      out.politicians.push_back(*entry);
    }
  }
  return out;
}

}  // namespace mediagraph
