#pragma once

#include <string>
#include <string_view>

namespace sumaudit {

/// CISTEM stemmer for German (Weissweiler & Fraser, 2017). Output agrees with
/// the official Python implementation. The stem is lowercase with umlauts
/// folded (ä→a, ö→o, ü→u, ß→ss).
///
/// In the default case-sensitive mode a capitalised word (likely a noun) keeps
/// a final 't'; case_insensitive strips it regardless.
std::string cistem_stem(std::string_view word, bool case_insensitive = false);

}  // namespace sumaudit
