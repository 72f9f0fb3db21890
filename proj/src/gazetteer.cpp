#include "mediagraph/gazetteer.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "mediagraph/error.hpp"
#include "mediagraph/text.hpp"

namespace mediagraph {
namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// First code point of a UTF-8 token.
std::string initial_of(const std::string& token) {
  std::size_t len = 1;
  const auto lead = static_cast<unsigned char>(token[0]);
  if (lead >= 0xF0) len = 4;
  else if (lead >= 0xE0) len = 3;
  else if (lead >= 0xC0) len = 2;
  return token.substr(0, std::min(len, token.size()));
}

}  // namespace

Gazetteer::Gazetteer(std::vector<Politician> entries, bool derive_initialised_forms)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string> full_names;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto tokens = normalized_tokens(entries_[i].full_name);
    if (tokens.empty()) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("politician name '{}' has no letters",
                              entries_[i].full_name));
    }
    if (!full_names.insert(join(tokens)).second) {
      throw Error(ErrorCode::DuplicateId,
                  fmt::format("duplicate politician name '{}'",
                              entries_[i].full_name));
    }
  }
  // Full names first so a derived or alias phrase can never shadow one.
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    add_phrase(normalized_tokens(entries_[i].full_name), i);
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& alias : entries_[i].aliases) {
      const auto tokens = normalized_tokens(alias);
      if (!tokens.empty()) add_phrase(tokens, i);
    }
    if (derive_initialised_forms) {
      auto tokens = normalized_tokens(entries_[i].full_name);
      if (tokens.size() >= 2) {
        for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
          tokens[t] = initial_of(tokens[t]);
        }
        add_phrase(tokens, i);
      }
    }
  }
  for (auto& [first, list] : by_first_token_) {
    std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return phrases_[a].tokens.size() > phrases_[b].tokens.size();
    });
  }
}

void Gazetteer::add_phrase(const std::vector<std::string>& tokens,
                           std::size_t entry) {
  const auto key = join(tokens);
  if (auto it = phrase_by_text_.find(key); it != phrase_by_text_.end()) {
    auto& existing = phrases_[it->second];
    if (existing.entry != entry && !existing.ambiguous) {
      // Two entries claim the phrase. A full name always wins over an alias.
      if (normalize_text(entries_[existing.entry].full_name) == key) return;
      existing.ambiguous = true;
      ++ambiguous_;
    }
    return;
  }
  phrase_by_text_.emplace(key, phrases_.size());
  by_first_token_[tokens.front()].push_back(phrases_.size());
  phrases_.push_back({tokens, entry, false});
}

Gazetteer Gazetteer::load(const std::filesystem::path& path,
                          bool derive_initialised_forms) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  }
  std::vector<Politician> entries;
  std::string line;
  std::size_t line_no = 0;
  const auto name = path.string();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(name, line_no, fmt::format("malformed JSON: {}", e.what()));
    }
    auto text = [&](const char* key) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw ParseError(name, line_no,
                         fmt::format("missing string field '{}'", key));
      }
      return it->get<std::string>();
    };
    Politician p;
    p.full_name = text("full_name");
    p.party = text("party");
    const auto orient = text("orientation");
    const auto o = parse_orientation(orient);
    if (!o) throw ParseError(name, line_no, fmt::format("unknown orientation '{}'", orient));
    p.orientation = *o;
    if (auto it = obj.find("aliases"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) throw ParseError(name, line_no, "'aliases' must be a list");
      for (const auto& a : *it) {
        if (!a.is_string()) throw ParseError(name, line_no, "alias must be a string");
        p.aliases.push_back(a.get<std::string>());
      }
    }
    entries.push_back(std::move(p));
  }
  return Gazetteer(std::move(entries), derive_initialised_forms);
}

void Gazetteer::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  }
  for (const auto& p : entries_) {
    nlohmann::ordered_json j;
    j["full_name"] = p.full_name;
    j["aliases"] = p.aliases;
    j["party"] = p.party;
    j["orientation"] = to_string(p.orientation);
    out << j.dump() << '\n';
  }
}

std::optional<std::size_t> Gazetteer::find(std::string_view name) const {
  const auto it = phrase_by_text_.find(normalize_text(name));
  if (it == phrase_by_text_.end() || phrases_[it->second].ambiguous) {
    return std::nullopt;
  }
  return phrases_[it->second].entry;
}

std::vector<std::size_t> Gazetteer::match(std::string_view text) const {
  const auto tokens = normalized_tokens(text);
  std::vector<std::size_t> found;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t consumed = 0;
    if (auto it = by_first_token_.find(tokens[i]); it != by_first_token_.end()) {
      for (auto p : it->second) {
        const auto& phrase = phrases_[p];
        const auto len = phrase.tokens.size();
        if (i + len > tokens.size()) continue;
        if (!std::equal(phrase.tokens.begin(), phrase.tokens.end(),
                        tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
          continue;
        }
        // Longest candidate wins; an ambiguous one still consumes its span.
        consumed = len;
        if (!phrase.ambiguous &&
            std::find(found.begin(), found.end(), phrase.entry) == found.end()) {
          found.push_back(phrase.entry);
        }
        break;
      }
    }
    i += consumed == 0 ? 1 : consumed;
  }
  return found;
}

std::vector<const Politician*> match_politicians(std::string_view text,
                                                 const Gazetteer& gazetteer) {
  std::vector<const Politician*> out;
  for (auto i : gazetteer.match(text)) out.push_back(&gazetteer[i]);
  return out;
}

}  // namespace mediagraph
