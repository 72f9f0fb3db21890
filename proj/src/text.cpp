#include "mediagraph/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {

std::vector<std::string> normalized_tokens(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkd = icu::Normalizer2::getNFKDInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidValue,
                fmt::format("ICU NFKD unavailable: {}", u_errorName(status)));
  }
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString text = nfkd->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidValue,
                fmt::format("ICU normalisation failed: {}", u_errorName(status)));
  }
  text.foldCase(U_FOLD_CASE_DEFAULT);
  // Folding can recompose nothing but may expose new marks (e.g. U+0130).
  text = nfkd->normalize(text, status);

  std::vector<std::string> tokens;
  icu::UnicodeString current;
  auto flush = [&] {
    if (current.isEmpty()) return;
    std::string out;
    current.toUTF8String(out);
    tokens.push_back(std::move(out));
    current.remove();
  };
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    const auto type = u_charType(c);
    if (type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK) continue;
    if (u_isalnum(c)) {
      current.append(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string normalize_text(std::string_view utf8) {
  std::string out;
  for (const auto& t : normalized_tokens(utf8)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace mediagraph
