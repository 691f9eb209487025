#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sumaudit {

/// NFC composition, trimmed, with every internal whitespace run collapsed to
/// a single ASCII space.
std::string normalize(std::string_view text);

/// Lowercase mapping applied to every case-insensitive comparison in the
/// toolkit (fully-extractive detection, ROUGE tokens).
std::string casefold(std::string_view text);

using TokenSequence = std::vector<std::string>;
using SentenceList = std::vector<std::string>;

enum class TokenMode {
  whitespace,  // normalize, then split on spaces
  rouge,       // lowercase, keep maximal runs of letters/digits
};

TokenSequence tokenize(std::string_view text, TokenMode mode);

/// Abbreviations are stored without their final period ("z.B", "Dr").
class AbbreviationSet {
 public:
  AbbreviationSet() = default;
  AbbreviationSet(std::initializer_list<std::string_view> entries);

  void add(std::string_view abbreviation);
  bool contains(std::string_view token_without_period) const;
  std::size_t size() const { return entries_.size(); }

  static AbbreviationSet german();
  // One entry per line; blank lines and lines starting with '#' are ignored.
  static AbbreviationSet load(const std::filesystem::path& path);
  void add_from_file(const std::filesystem::path& path);

 private:
  std::unordered_set<std::string> entries_;
};

/// Rule-based splitter. A boundary follows '.', '!', '?' or ':' (optionally
/// trailed by closing quotes/brackets) when the next token starts, after any
/// opening quotes/brackets, with an uppercase letter or a digit. A period does
/// not end a sentence after an abbreviation, a single letter, or a digit
/// sequence (ordinals such as "3.").
SentenceList split_sentences(std::string_view text, const AbbreviationSet& abbreviations);
SentenceList split_sentences(std::string_view text);

/// Bag of n-grams with multiplicities.
struct NGramHash {
  std::size_t operator()(const std::vector<std::string>& gram) const noexcept;
};
using NGramCounts = std::unordered_map<std::vector<std::string>, std::size_t, NGramHash>;

/// Throws std::invalid_argument when n == 0.
NGramCounts ngrams(const TokenSequence& tokens, std::size_t n);

}  // namespace sumaudit
