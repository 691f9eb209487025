#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sumaudit/cistem.hpp"

using sumaudit::cistem_stem;

TEST_CASE("reference implementation examples") {
  CHECK(cistem_stem("und") == "und");
  CHECK(cistem_stem("gelaufen") == "lauf");
  CHECK(cistem_stem("häuser") == "hau");
  CHECK(cistem_stem("Speicherbehältern") == "speicherbehalt");
  CHECK(cistem_stem("Grenzpostens") == "grenzpost");
  CHECK(cistem_stem("Ausgefeiltere") == "ausgefeilt");
  CHECK(cistem_stem("Speicherbehältern", true) == "speicherbehal");
  CHECK(cistem_stem("Grenzpostens", true) == "grenzpo");
  CHECK(cistem_stem("Ausgefeiltere", true) == "ausgefeil");
}

TEST_CASE("edge inputs") {
  CHECK(cistem_stem("") == "");
  CHECK(cistem_stem("a") == "a");
  // ge- is only stripped when at least four characters remain
  CHECK(cistem_stem("gehen") == "geh");
}

TEST_CASE("agrees with every committed reference vector") {
  std::ifstream in(SUMAUDIT_TEST_DATA "/cistem_vectors.tsv");
  REQUIRE(in);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string word, stem_cs, stem_ci;
    std::getline(fields, word, '\t');
    std::getline(fields, stem_cs, '\t');
    std::getline(fields, stem_ci, '\t');
    INFO("word: " << word);
    CHECK(cistem_stem(word) == stem_cs);
    CHECK(cistem_stem(word, true) == stem_ci);
    ++n;
  }
  CHECK(n >= 100);
}
