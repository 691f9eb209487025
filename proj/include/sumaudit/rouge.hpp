#pragma once

// ROUGE-1/2/L with optional Cistem stemming, corpus-level joins on sample id,
// and percentile bootstrap confidence intervals.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumaudit/corpus.hpp"
#include "sumaudit/textproc.hpp"

namespace sumaudit {

enum class RougeVariant { rouge1, rouge2, rougeL };

std::string_view to_string(RougeVariant variant);        // "rouge1", "rouge2", "rougeL"
std::string_view short_name(RougeVariant variant);       // "R-1", "R-2", "R-L"
std::optional<RougeVariant> parse_rouge_variant(std::string_view name);  // also r1/r2/rl

struct RougeScore {
  RougeVariant variant = RougeVariant::rouge1;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Harmonic mean; 0 when both are 0.
double f1_score(double precision, double recall);

/// ROUGE tokenization: lowercase letter/digit runs, Cistem-stemmed if `stem`.
TokenSequence rouge_tokens(std::string_view text, bool stem);

RougeScore rouge_n(const TokenSequence& candidate, const TokenSequence& reference, std::size_t n);
RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference);

RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n,
                   bool stem);
RougeScore rouge_l(std::string_view candidate, std::string_view reference, bool stem);

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

class ScoreError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SampleScores {
  std::string id;
  std::vector<RougeScore> scores;  // one per requested variant, request order
};

struct CorpusScores {
  std::vector<RougeVariant> variants;
  std::vector<SampleScores> samples;      // gold order
  std::vector<std::string> missing_ids;   // gold samples without system output
  std::size_t gold_size = 0;

  double coverage() const {
    return gold_size == 0 ? 0.0 : static_cast<double>(samples.size()) / static_cast<double>(gold_size);
  }
  std::vector<RougeScore> column(RougeVariant variant) const;
};

/// Joins system outputs to gold summaries by id. Throws ScoreError on
/// duplicate system ids, system ids absent from gold, or zero matches.
CorpusScores score_corpus(const std::vector<SystemSummary>& system, const Corpus& gold,
                          const std::vector<RougeVariant>& variants, bool stem);

inline constexpr std::size_t kDefaultResamples = 2000;

struct AggregateScore {
  RougeVariant variant = RougeVariant::rouge1;
  double mean_f1 = 0;
  double mean_precision = 0;
  double mean_recall = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::size_t n_samples = 0;
  std::size_t n_resamples = kDefaultResamples;
  std::uint64_t seed = 0;

  Json to_json() const;
};

/// Point estimate is the plain mean; the CI is the 2.5th/97.5th percentile
/// (linear interpolation) of F1 means over seeded resamples with replacement.
AggregateScore bootstrap_aggregate(std::span<const RougeScore> per_sample,
                                   std::size_t n_resamples = kDefaultResamples,
                                   std::uint64_t seed = 0);

}  // namespace sumaudit
