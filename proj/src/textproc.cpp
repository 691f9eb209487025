#include "sumaudit/textproc.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "sumaudit/corpus.hpp"
#include "sumaudit/unicode.hpp"

namespace sumaudit {

std::string normalize(std::string_view text) {
  const std::u32string chars = unicode::decode(unicode::nfc(text));
  std::u32string out;
  out.reserve(chars.size());
  bool pending_space = false;
  for (char32_t c : chars) {
    if (unicode::is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return unicode::encode(out);
}

std::string casefold(std::string_view text) { return unicode::lower(text); }

TokenSequence tokenize(std::string_view text, TokenMode mode) {
  TokenSequence tokens;
  if (mode == TokenMode::whitespace) {
    const std::string norm = normalize(text);
    std::size_t start = 0;
    while (start < norm.size()) {
      std::size_t end = norm.find(' ', start);
      if (end == std::string::npos) end = norm.size();
      tokens.emplace_back(norm.substr(start, end - start));
      start = end + 1;
    }
    return tokens;
  }

  const std::u32string chars = unicode::decode(unicode::lower(unicode::nfc(text)));
  std::u32string current;
  for (char32_t c : chars) {
    if (unicode::is_letter(c) || unicode::is_digit(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(unicode::encode(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(unicode::encode(current));
  return tokens;
}

// --- abbreviations -----------------------------------------------------------

namespace {

std::string_view strip_final_period(std::string_view s) {
  if (!s.empty() && s.back() == '.') s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

AbbreviationSet::AbbreviationSet(std::initializer_list<std::string_view> entries) {
  for (auto e : entries) add(e);
}

void AbbreviationSet::add(std::string_view abbreviation) {
  abbreviation = strip_final_period(trim(abbreviation));
  if (!abbreviation.empty()) entries_.emplace(abbreviation);
}

bool AbbreviationSet::contains(std::string_view token_without_period) const {
  return entries_.count(std::string(token_without_period)) > 0;
}

AbbreviationSet AbbreviationSet::german() {
  return {"z.B.",  "bzw.",  "ca.",   "Dr.",   "Prof.", "Nr.",   "u.a.",  "d.h.",  "vgl.",
          "evtl.", "ggf.",  "inkl.", "Abs.",  "Art.",  "usw.",  "etc.",  "bspw.", "z.T.",
          "u.U.",  "o.ä.",  "s.o.",  "s.u.",  "Str.",  "St.",   "Mio.",  "Mrd.",  "Tel.",
          "Hr.",   "Fr.",   "Jh.",   "Jhd.",  "geb.",  "gest.", "bzgl.", "zzgl.", "Mr.",
          "Mrs.",  "Ms.",   "v.a.",  "i.d.R.", "z.Zt.", "Kap.", "Bd.",   "Hrsg.", "Aufl.",
          "Std.",  "Min.",  "Sek.",  "Dipl.", "Ing.",  "Mag.",  "Hl.",   "sog.",
          "ebd.",  "vs.",   "Abb.",  "Tab.",  "S.",    "Co.",   "Inc.",  "Ltd.",  "e.V.",
          "gem.",  "lt.",   "allg.", "Univ."};
}

void AbbreviationSet::add_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open abbreviation list " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    add(entry);
  }
}

AbbreviationSet AbbreviationSet::load(const std::filesystem::path& path) {
  AbbreviationSet set;
  set.add_from_file(path);
  return set;
}

// --- sentence splitting -------------------------------------------------------

namespace {

bool is_closer(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case U'“': case U'”': case U'’': case U'»': case U'«':
      return true;
    default:
      return false;
  }
}

bool is_opener(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'(': case U'[': case U'{':
    case U'„': case U'“': case U'‚': case U'‘':
    case U'»': case U'«':
      return true;
    default:
      return false;
  }
}

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U':'; }

bool all_digits(std::u32string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char32_t c) { return unicode::is_digit(c); });
}

bool ends_sentence(std::u32string_view token, const AbbreviationSet& abbreviations) {
  while (!token.empty() && is_closer(token.back())) token.remove_suffix(1);
  if (token.empty() || !is_terminator(token.back())) return false;
  if (token.back() != U'.') return true;

  std::u32string_view stem = token.substr(0, token.size() - 1);
  while (!stem.empty() && is_opener(stem.front())) stem.remove_prefix(1);
  if (stem.size() == 1 && unicode::is_letter(stem.front())) return false;
  if (all_digits(stem)) return false;
  return !abbreviations.contains(unicode::encode(stem));
}

bool starts_sentence(std::u32string_view token) {
  while (!token.empty() && is_opener(token.front())) token.remove_prefix(1);
  if (token.empty()) return false;
  return unicode::is_upper(token.front()) || unicode::is_digit(token.front());
}

}  // namespace

SentenceList split_sentences(std::string_view text, const AbbreviationSet& abbreviations) {
  const std::u32string norm = unicode::decode(normalize(text));
  std::vector<std::u32string_view> tokens;
  {
    std::u32string_view rest(norm);
    while (!rest.empty()) {
      const auto end = rest.find(U' ');
      tokens.push_back(rest.substr(0, end));
      if (end == std::u32string_view::npos) break;
      rest.remove_prefix(end + 1);
    }
  }

  SentenceList sentences;
  std::u32string current;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!current.empty()) current.push_back(U' ');
    current.append(tokens[i]);
    const bool last = i + 1 == tokens.size();
    if (last || (ends_sentence(tokens[i], abbreviations) && starts_sentence(tokens[i + 1]))) {
      sentences.push_back(unicode::encode(current));
      current.clear();
    }
  }
  return sentences;
}

SentenceList split_sentences(std::string_view text) {
  static const AbbreviationSet builtin = AbbreviationSet::german();
  return split_sentences(text, builtin);
}

// --- n-grams -----------------------------------------------------------------

std::size_t NGramHash::operator()(const std::vector<std::string>& gram) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& tok : gram) {
    h ^= std::hash<std::string>{}(tok) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

NGramCounts ngrams(const TokenSequence& tokens, std::size_t n) {
  if (n == 0) throw std::invalid_argument("n-gram order must be >= 1");
  NGramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace sumaudit
