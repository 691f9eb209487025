#include <algorithm>
#include <random>

#include "doctest.h"
#include "sumaudit/textproc.hpp"
#include "sumaudit/unicode.hpp"

using namespace sumaudit;

TEST_CASE("normalize") {
  CHECK(normalize("  Hallo\tWelt \n") == "Hallo Welt");
  CHECK(normalize("") == "");
  CHECK(normalize("a  b") == "a b");
  CHECK(normalize(" \t\n ") == "");
  // no-break space and ideographic space are whitespace too
  CHECK(normalize("a 　b") == "a b");
  // canonical composition: u + combining diaeresis -> ü
  CHECK(normalize("über") == "über");
}

TEST_CASE("tokenize") {
  CHECK(tokenize("Der Hund bellt.", TokenMode::rouge) == TokenSequence{"der", "hund", "bellt"});
  CHECK(tokenize("Größe-Test 3", TokenMode::rouge) == TokenSequence{"größe", "test", "3"});
  CHECK(tokenize("a b  c", TokenMode::whitespace) == TokenSequence{"a", "b", "c"});
  CHECK(tokenize("", TokenMode::whitespace).empty());
  CHECK(tokenize("...", TokenMode::rouge).empty());
  CHECK(tokenize("ÄRGER über 2023!", TokenMode::rouge) == TokenSequence{"ärger", "über", "2023"});
}

TEST_CASE("split_sentences examples") {
  CHECK(split_sentences("Es regnet. Wir bleiben hier.") ==
        SentenceList{"Es regnet.", "Wir bleiben hier."});
  CHECK(split_sentences("Dr. Meier kommt z.B. morgen.") ==
        SentenceList{"Dr. Meier kommt z.B. morgen."});
  CHECK(split_sentences("Am 3. Mai regnet es. Dann nicht.") ==
        SentenceList{"Am 3. Mai regnet es.", "Dann nicht."});
}

TEST_CASE("split_sentences rules") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("Wirklich? Ja! Gut: Weiter.") ==
        SentenceList{"Wirklich?", "Ja!", "Gut:", "Weiter."});
  CHECK(split_sentences("Er kam. und ging.").size() == 1);  // lowercase continuation
  CHECK(split_sentences("Das kostet ca. 5 Euro.").size() == 1);
  CHECK(split_sentences("Vorname A. Nachname kam.").size() == 1);  // initials
  // a bare number before the period reads as an ordinal
  CHECK(split_sentences("Es waren 2019. 2020 kam mehr.").size() == 1);
  CHECK(split_sentences("Er sagte: „Nein.“ Dann ging er.") ==
        SentenceList{"Er sagte:", "„Nein.“", "Dann ging er."});
  CHECK(split_sentences("Siehe Abs. 3 und Art. 5 GG.").size() == 1);
  // zero-width tokens and whitespace runs collapse
  CHECK(split_sentences("  Eins.\n\nZwei.  ") == SentenceList{"Eins.", "Zwei."});
}

TEST_CASE("abbreviation sets") {
  AbbreviationSet set{"usw.", "Kap"};
  CHECK(set.contains("usw"));
  CHECK(set.contains("Kap"));
  CHECK_FALSE(set.contains("usw."));
  CHECK(split_sentences("Das ist Kap. Zwei.", set).size() == 1);
  CHECK(split_sentences("Das ist Kap. Zwei.", AbbreviationSet{}).size() == 2);
  const auto german = AbbreviationSet::german();
  for (auto a : {"z.B", "bzw", "ca", "Dr", "Prof", "Nr", "u.a", "d.h", "vgl", "evtl", "ggf", "inkl", "Abs", "Art"}) {
    CHECK(german.contains(a));
  }
}

TEST_CASE("ngrams") {
  const auto uni = ngrams({"a", "b", "a"}, 1);
  CHECK(uni.size() == 2);
  CHECK(uni.at({"a"}) == 2);
  CHECK(uni.at({"b"}) == 1);
  const auto bi = ngrams({"a", "b", "c"}, 2);
  CHECK(bi.size() == 2);
  CHECK(bi.at({"a", "b"}) == 1);
  CHECK(bi.at({"b", "c"}) == 1);
  CHECK(ngrams({"a"}, 2).empty());
  CHECK_THROWS_AS(ngrams({"a"}, 0), std::invalid_argument);
}

namespace {

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "Haus", "über", "ÄRGER", "straße", "3.", "Mai", ".", "!", "?", ":", " ", "  ", "\t", "\n",
      "z.B.", "Dr.", "ein", "Satz", "E", "„", "“", "-", "2020", "a"};
  std::string s;
  const auto n = rng() % 20;
  for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
  return s;
}

std::string swap_case(const std::string& s, std::mt19937_64& rng) {
  std::string out;
  for (char c : s) {
    if (c >= 'a' && c <= 'z' && rng() % 2) c = static_cast<char>(c - 'a' + 'A');
    else if (c >= 'A' && c <= 'Z' && rng() % 2) c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  // umlauts: Ä <-> ä, Ü <-> ü
  for (auto [up, low] : {std::pair<std::string, std::string>{"Ä", "ä"}, {"Ü", "ü"}}) {
    for (std::size_t pos; (pos = out.find(up)) != std::string::npos;) out.replace(pos, up.size(), low);
  }
  return out;
}

std::string non_space(const std::string& s) {
  std::u32string chars = unicode::decode(s);
  std::u32string kept;
  for (char32_t c : chars) if (!unicode::is_space(c)) kept.push_back(c);
  std::sort(kept.begin(), kept.end());
  return unicode::encode(kept);
}

}  // namespace

TEST_CASE("properties over random text") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_text(rng);
    const std::string norm = normalize(text);
    CHECK(normalize(norm) == norm);
    CHECK(tokenize(swap_case(text, rng), TokenMode::rouge) == tokenize(text, TokenMode::rouge));

    for (const auto& tok : tokenize(text, TokenMode::whitespace)) {
      CHECK_FALSE(tok.empty());
      CHECK(tok.find(' ') == std::string::npos);
    }

    const SentenceList sentences = split_sentences(text);
    std::string joined;
    for (const auto& s : sentences) {
      CHECK_FALSE(s.empty());
      if (!joined.empty()) joined.push_back(' ');
      joined += s;
    }
    CHECK(joined == norm);
    CHECK(non_space(joined) == non_space(text));

    const TokenSequence toks = tokenize(text, TokenMode::rouge);
    for (std::size_t n = 1; n <= 3; ++n) {
      std::size_t total = 0;
      for (const auto& [gram, count] : ngrams(toks, n)) total += count;
      CHECK(total == (toks.size() >= n ? toks.size() - n + 1 : 0));
    }
  }
}
