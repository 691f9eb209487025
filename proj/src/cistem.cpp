#include "sumaudit/cistem.hpp"

#include "sumaudit/unicode.hpp"

namespace sumaudit {

namespace {

// Placeholders for multi-letter units that must survive suffix stripping.
constexpr char32_t kSch = U'$';
constexpr char32_t kEi = U'%';
constexpr char32_t kIe = U'&';
constexpr char32_t kRepeat = U'*';

void replace_all(std::u32string& s, std::u32string_view from, std::u32string_view to) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, from.size(), from) == 0) {
      out.append(to);
      i += from.size();
    } else {
      out.push_back(s[i++]);
    }
  }
  s = std::move(out);
}

// "xx" -> "x*", scanning left to right without overlap.
std::u32string mark_doubles(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && s[i] == s[i + 1]) {
      out.push_back(s[i]);
      out.push_back(kRepeat);
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// "x*" -> "xx"
std::u32string unmark_doubles(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && s[i + 1] == kRepeat) {
      out.push_back(s[i]);
      out.push_back(s[i]);
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

}  // namespace

std::string cistem_stem(std::string_view word, bool case_insensitive) {
  if (word.empty()) return {};

  std::u32string w = unicode::decode(word);
  const bool upper = unicode::is_upper(w.front());
  w = unicode::lower(w);

  replace_all(w, U"ü", U"u");
  replace_all(w, U"ö", U"o");
  replace_all(w, U"ä", U"a");
  replace_all(w, U"ß", U"ss");

  if (w.size() >= 6 && w[0] == U'g' && w[1] == U'e') w.erase(0, 2);

  replace_all(w, U"sch", std::u32string(1, kSch));
  replace_all(w, U"ei", std::u32string(1, kEi));
  replace_all(w, U"ie", std::u32string(1, kIe));
  w = mark_doubles(w);

  while (w.size() > 3) {
    const char32_t last = w.back();
    const char32_t prev = w[w.size() - 2];
    if (w.size() > 5) {
      if ((last == U'm' || last == U'r') && prev == U'e') {
        w.resize(w.size() - 2);
        continue;
      }
      if (last == U'd' && prev == U'n') {
        w.resize(w.size() - 2);
        continue;
      }
    }
    if ((!upper || case_insensitive) && last == U't') {
      w.pop_back();
      continue;
    }
    if (last == U'e' || last == U's' || last == U'n') {
      w.pop_back();
      continue;
    }
    break;
  }

  w = unmark_doubles(w);
  replace_all(w, std::u32string(1, kEi), U"ei");
  replace_all(w, std::u32string(1, kIe), U"ie");
  replace_all(w, std::u32string(1, kSch), U"sch");
  return unicode::encode(w);
}

}  // namespace sumaudit
