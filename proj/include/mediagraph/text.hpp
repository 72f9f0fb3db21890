#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mediagraph {

/// Name-matching normal form of UTF-8 text: NFKD, diacritics removed, full
/// case folding, and every run of non-alphanumeric code points collapsed to
/// a single token boundary. Invalid UTF-8 sequences count as boundaries.
std::vector<std::string> normalized_tokens(std::string_view utf8);

/// normalized_tokens joined with single spaces.
std::string normalize_text(std::string_view utf8);

}  // namespace mediagraph
