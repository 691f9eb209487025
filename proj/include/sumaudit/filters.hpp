#pragma once

// Data sanity checks for (reference, summary) corpora.
//
// Each sample is attributed to exactly one outcome: the first failing check in
// the order minlen_ref, minlen_summary, identity, min_cr, [max_cr],
// fully_extractive; survivors then go through additive deduplication.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumaudit/corpus.hpp"

namespace sumaudit {

enum class Outcome {
  valid,
  minlen_ref,
  minlen_summary,
  identity,
  min_cr,
  max_cr,
  fully_extractive,
  dup_exact,
  dup_reference,
  dup_summary,
};

inline constexpr std::size_t kOutcomeCount = 10;

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view name);

struct FilterConfig {
  std::size_t min_ref_chars = 50;
  std::size_t min_summary_chars = 20;
  double min_cr = 1.25;
  std::optional<double> max_cr;  // off unless set

  static FilterConfig defaults() { return {}; }
  static FilterConfig wikilingua() { return {20, 8, 1.25, std::nullopt}; }
  // "default" | "wikilingua"
  static FilterConfig preset(std::string_view name);

  // {"min_ref_chars":50,"min_summary_chars":20,"min_cr":1.25,"max_cr":null};
  // omitted keys keep their defaults, unknown keys are rejected.
  static FilterConfig from_json(const Json& j);
  static FilterConfig load(const std::filesystem::path& path);
  Json to_json() const;

  void validate() const;

  bool operator==(const FilterConfig&) const = default;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// CR undefined: the summary has no whitespace tokens.
class UndefinedRatio : public std::domain_error {
  using std::domain_error::domain_error;
};

struct FilterVerdict {
  std::string sample_id;
  Outcome outcome = Outcome::valid;

  bool operator==(const FilterVerdict&) const = default;
};

struct AuditReport {
  std::string split_label;
  std::size_t total = 0;
  std::array<std::size_t, kOutcomeCount> counts{};  // indexed by Outcome; includes valid

  std::size_t count(Outcome o) const { return counts[static_cast<std::size_t>(o)]; }
  std::size_t valid() const { return count(Outcome::valid); }
  double valid_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(valid()) / static_cast<double>(total);
  }
};

struct AuditResult {
  AuditReport report;
  std::vector<FilterVerdict> verdicts;  // one per sample, corpus order
};

// Per-sample checks. Each returns the failing outcome or nullopt.

/// Empty (all-whitespace) texts always fail, whatever the thresholds.
std::optional<Outcome> check_min_length(const Sample& sample, const FilterConfig& config);
std::optional<Outcome> check_identity(const Sample& sample);
/// Whitespace-token ratio len(reference) / len(summary). Throws UndefinedRatio.
double compression_ratio(const Sample& sample);
std::optional<Outcome> check_min_cr(const Sample& sample, const FilterConfig& config);
std::optional<Outcome> check_max_cr(const Sample& sample, const FilterConfig& config);
std::optional<Outcome> check_fully_extractive(const Sample& sample);

/// All per-sample checks in precedence order.
std::optional<Outcome> check_sample(const Sample& sample, const FilterConfig& config);

struct DedupResult {
  Corpus kept;
  std::vector<FilterVerdict> verdicts;  // valid or dup_*, corpus order
};

DedupResult dedup_additive(const Corpus& corpus);

AuditResult audit(const Corpus& corpus, const FilterConfig& config);

Corpus filter(const Corpus& corpus, const FilterConfig& config);

void write_verdicts_jsonl(const std::vector<FilterVerdict>& verdicts, std::ostream& out);

}  // namespace sumaudit
