#pragma once

// Hand-built 10-sample corpus with one planted defect per check. Lengths were
// counted by hand (and cross-checked with a throwaway script):
//   s1  ref 144 chars / 19 tokens / 2 sentences, summary 62 chars / 7 tokens
//   s3  ref 30 chars
//   s5  ref 11 tokens, summary 10 tokens -> CR 1.1
//   s10 ref 116 chars / 20 tokens / 3 sentences, summary 5 tokens -> CR 4.0

#include "sumaudit/corpus.hpp"

namespace fixtures {

inline const char* kS1Ref =
    "Der Bundestag hat am Donnerstag ein neues Gesetz zur Förderung erneuerbarer Energien "
    "beschlossen. Die Opposition kritisierte den Entwurf scharf.";
inline const char* kS1Summary = "Neues Energiegesetz trotz Kritik der Opposition verabschiedet.";

inline sumaudit::Sample sample(std::string id, std::string ref, std::string summary) {
  sumaudit::Sample s;
  s.id = std::move(id);
  s.reference = std::move(ref);
  s.summary = std::move(summary);
  return s;
}

inline sumaudit::Corpus planted10() {
  sumaudit::Corpus c;
  c.samples = {
      sample("s1", kS1Ref, kS1Summary),
      sample("s2",
             "Im Hafen von Hamburg wurden im vergangenen Jahr mehr Container umgeschlagen als je "
             "zuvor.",
             "\t \n"),
      sample("s3", "Zu kurzer Text für Referenzen.", "Eine ausreichend lange Zusammenfassung."),
      sample("s4", "Dieser Text ist zugleich Referenz und Zusammenfassung des Beispiels.",
             "Dieser Text ist  zugleich Referenz und Zusammenfassung des Beispiels. "),
      sample("s5", "Elf Wörter stehen in dieser Referenz, die fast so lang ist.",
             "Zehn Wörter stehen in dieser Zusammenfassung, die genauso lang ist."),
      sample("s6",
             "Ein Unfall auf der A3 sorgte am Morgen für Stau. Die Polizei sperrte die Strecke "
             "für zwei Stunden. Verletzt wurde niemand.",
             "Die Polizei sperrte die Strecke für zwei Stunden."),
      sample("s7", kS1Ref, kS1Summary),
      sample("s8", kS1Ref, "Bundestag beschließt Förderung für erneuerbare Energien."),
      sample("s9",
             "Nach langer Debatte stimmte eine Mehrheit der Abgeordneten für die Reform. Die "
             "Regierung zeigte sich zufrieden.",
             kS1Summary),
      sample("s10",
             "Die Stadt Köln plant eine neue Brücke über den Rhein. Der Bau soll drei Jahre "
             "dauern. Kritiker fürchten hohe Kosten.",
             "Köln plant teure neue Rheinbrücke."),
  };
  return c;
}

}  // namespace fixtures
