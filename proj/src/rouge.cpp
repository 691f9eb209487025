#include "sumaudit/rouge.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sumaudit/cistem.hpp"
#include "sumaudit/rng.hpp"
#include "sumaudit/stats.hpp"

namespace sumaudit {

std::string_view to_string(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::rouge1: return "rouge1";
    case RougeVariant::rouge2: return "rouge2";
    case RougeVariant::rougeL: return "rougeL";
  }
  return "rouge1";
}

std::string_view short_name(RougeVariant variant) {
  switch (variant) {
    case RougeVariant::rouge1: return "R-1";
    case RougeVariant::rouge2: return "R-2";
    case RougeVariant::rougeL: return "R-L";
  }
  return "R-1";
}

std::optional<RougeVariant> parse_rouge_variant(std::string_view name) {
  if (name == "r1" || name == "rouge1") return RougeVariant::rouge1;
  if (name == "r2" || name == "rouge2") return RougeVariant::rouge2;
  if (name == "rl" || name == "rougeL" || name == "rougel") return RougeVariant::rougeL;
  return std::nullopt;
}

double f1_score(double precision, double recall) {
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

TokenSequence rouge_tokens(std::string_view text, bool stem) {
  TokenSequence tokens = tokenize(text, TokenMode::rouge);
  if (stem) {
    for (auto& tok : tokens) tok = cistem_stem(tok);
  }
  return tokens;
}

namespace {

RougeScore make_score(RougeVariant variant, double overlap, std::size_t cand_total,
                      std::size_t ref_total) {
  RougeScore s;
  s.variant = variant;
  s.precision = cand_total ? overlap / static_cast<double>(cand_total) : 0.0;
  s.recall = ref_total ? overlap / static_cast<double>(ref_total) : 0.0;
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

}  // namespace

RougeScore rouge_n(const TokenSequence& candidate, const TokenSequence& reference, std::size_t n) {
  const NGramCounts cand = ngrams(candidate, n);
  const NGramCounts ref = ngrams(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  const RougeVariant variant = n == 1 ? RougeVariant::rouge1 : RougeVariant::rouge2;
  return make_score(variant, static_cast<double>(overlap), cand_total, ref_total);
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    prev.swap(cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference) {
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  return make_score(RougeVariant::rougeL, lcs, candidate.size(), reference.size());
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n,
                   bool stem) {
  return rouge_n(rouge_tokens(candidate, stem), rouge_tokens(reference, stem), n);
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference, bool stem) {
  return rouge_l(rouge_tokens(candidate, stem), rouge_tokens(reference, stem));
}

// --- corpus ------------------------------------------------------------------

std::vector<RougeScore> CorpusScores::column(RougeVariant variant) const {
  const auto it = std::find(variants.begin(), variants.end(), variant);
  if (it == variants.end()) throw ScoreError("variant " + std::string(to_string(variant)) + " not scored");
  const auto idx = static_cast<std::size_t>(it - variants.begin());
  std::vector<RougeScore> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.scores[idx]);
  return out;
}

CorpusScores score_corpus(const std::vector<SystemSummary>& system, const Corpus& gold,
                          const std::vector<RougeVariant>& variants, bool stem) {
  if (variants.empty()) throw ScoreError("no ROUGE variants requested");
  std::unordered_map<std::string, const std::string*> by_id;
  for (const auto& s : system) {
    if (!by_id.emplace(s.id, &s.summary).second) {
      throw ScoreError("duplicate system id '" + s.id + "'");
    }
  }
  std::unordered_set<std::string> gold_ids;
  for (const auto& g : gold.samples) gold_ids.insert(g.id);
  for (const auto& s : system) {
    if (!gold_ids.count(s.id)) throw ScoreError("system id '" + s.id + "' not found in gold");
  }

  CorpusScores out;
  out.variants = variants;
  out.gold_size = gold.size();
  for (const auto& g : gold.samples) {
    const auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      out.missing_ids.push_back(g.id);
      continue;
    }
    const TokenSequence cand = rouge_tokens(*it->second, stem);
    const TokenSequence ref = rouge_tokens(g.summary, stem);
    SampleScores row{g.id, {}};
    for (RougeVariant v : variants) {
      switch (v) {
        case RougeVariant::rouge1: row.scores.push_back(rouge_n(cand, ref, 1)); break;
        case RougeVariant::rouge2: row.scores.push_back(rouge_n(cand, ref, 2)); break;
        case RougeVariant::rougeL: row.scores.push_back(rouge_l(cand, ref)); break;
      }
    }
    out.samples.push_back(std::move(row));
  }
  if (out.samples.empty()) throw ScoreError("no system output matches any gold id");
  return out;
}

// --- bootstrap ---------------------------------------------------------------

Json AggregateScore::to_json() const {
  Json j = Json::object();
  j["mean_f1"] = mean_f1;
  j["ci_low"] = ci_low;
  j["ci_high"] = ci_high;
  j["mean_precision"] = mean_precision;
  j["mean_recall"] = mean_recall;
  j["n_samples"] = n_samples;
  j["n_resamples"] = n_resamples;
  j["seed"] = seed;
  return j;
}

AggregateScore bootstrap_aggregate(std::span<const RougeScore> per_sample, std::size_t n_resamples,
                                   std::uint64_t seed) {
  if (per_sample.empty()) throw ScoreError("bootstrap over zero samples");
  if (n_resamples == 0) throw ScoreError("n_resamples must be >= 1");

  AggregateScore agg;
  agg.variant = per_sample.front().variant;
  agg.n_samples = per_sample.size();
  agg.n_resamples = n_resamples;
  agg.seed = seed;
  const auto n = static_cast<double>(per_sample.size());
  for (const auto& s : per_sample) {
    agg.mean_f1 += s.f1;
    agg.mean_precision += s.precision;
    agg.mean_recall += s.recall;
  }
  agg.mean_f1 /= n;
  agg.mean_precision /= n;
  agg.mean_recall /= n;

  SeededRng rng(seed);
  std::vector<double> means(n_resamples);
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < per_sample.size(); ++i) {
      sum += per_sample[rng.below(per_sample.size())].f1;
    }
    m = sum / n;
  }
  std::sort(means.begin(), means.end());
  agg.ci_low = quantile_sorted(means, 0.025);
  agg.ci_high = quantile_sorted(means, 0.975);
  return agg;
}

}  // namespace sumaudit
