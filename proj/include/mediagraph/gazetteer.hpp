#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mediagraph/types.hpp"

namespace mediagraph {

struct Politician {
  std::string full_name;
  std::vector<std::string> aliases;
  std::string party;
  Orientation orientation = Orientation::Center;
};

/// Curated politician list with a token-sequence matcher over normalised
/// names and aliases.
///
/// Each entry is matchable by its full name, its aliases, and a derived
/// initialised form ("Florian Philippot" -> "F. Philippot", "Jean-Luc
/// Mélenchon" -> "J.-L. Mélenchon"). A phrase claimed by two different
/// entries is ambiguous and never matches.
class Gazetteer {
 public:
  Gazetteer() = default;

  /// Throws Error(DuplicateId) when two full names normalise to the same
  /// token sequence, Error(InvalidValue) for names with no letters.
  explicit Gazetteer(std::vector<Politician> entries,
                     bool derive_initialised_forms = true);

  /// Line-delimited JSON {"full_name","aliases","party","orientation"}.
  static Gazetteer load(const std::filesystem::path& path,
                        bool derive_initialised_forms = true);
  void write(const std::filesystem::path& path) const;

  const std::vector<Politician>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Politician& operator[](std::size_t i) const { return entries_[i]; }

  /// Entry whose full name or alias equals `name` after normalisation.
  std::optional<std::size_t> find(std::string_view name) const;

  /// Entries whose name or alias occurs in `text` as a whole-token sequence.
  /// Leftmost-longest scan; deduplicated; ordered by first match position.
  std::vector<std::size_t> match(std::string_view text) const;

  std::size_t ambiguous_phrase_count() const noexcept { return ambiguous_; }

 private:
  void add_phrase(const std::vector<std::string>& tokens, std::size_t entry);

  struct Phrase {
    std::vector<std::string> tokens;
    std::size_t entry = 0;
    bool ambiguous = false;
  };

  std::vector<Politician> entries_;
  std::vector<Phrase> phrases_;
  std::unordered_map<std::string, std::size_t> phrase_by_text_;
  // First token -> phrase indices, longest first.
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_token_;
  std::size_t ambiguous_ = 0;
};

/// Convenience wrapper over Gazetteer::match returning the entries.
std::vector<const Politician*> match_politicians(std::string_view text,
                                                 const Gazetteer& gazetteer);

}  // namespace mediagraph
