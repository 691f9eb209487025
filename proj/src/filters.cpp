#include "sumaudit/filters.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include "sumaudit/textproc.hpp"
#include "sumaudit/unicode.hpp"

namespace sumaudit {

namespace {

constexpr std::array<std::string_view, kOutcomeCount> kOutcomeNames = {
    "valid",  "minlen_ref",       "minlen_summary", "identity",      "min_cr",
    "max_cr", "fully_extractive", "dup_exact",      "dup_reference", "dup_summary",
};

}  // namespace

std::string_view to_string(Outcome outcome) {
  return kOutcomeNames[static_cast<std::size_t>(outcome)];
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (std::size_t i = 0; i < kOutcomeNames.size(); ++i) {
    if (kOutcomeNames[i] == name) return static_cast<Outcome>(i);
  }
  return std::nullopt;
}

// --- config ------------------------------------------------------------------

FilterConfig FilterConfig::preset(std::string_view name) {
  if (name == "default") return defaults();
  if (name == "wikilingua") return wikilingua();
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected default|wikilingua)");
}

void FilterConfig::validate() const {
  if (!(min_cr > 0.0) || !std::isfinite(min_cr)) throw ConfigError("min_cr must be > 0");
  if (max_cr && (!(*max_cr > 0.0) || !std::isfinite(*max_cr))) {
    throw ConfigError("max_cr must be > 0 when set");
  }
}

FilterConfig FilterConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("filter config must be a JSON object");
  FilterConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "min_ref_chars" || key == "min_summary_chars") {
      if (!value.is_number_unsigned()) throw ConfigError(key + " must be a non-negative integer");
      (key == "min_ref_chars" ? c.min_ref_chars : c.min_summary_chars) = value.get<std::size_t>();
    } else if (key == "min_cr") {
      if (!value.is_number()) throw ConfigError("min_cr must be a number");
      c.min_cr = value.get<double>();
    } else if (key == "max_cr") {
      if (value.is_null()) {
        c.max_cr.reset();
      } else if (value.is_number()) {
        c.max_cr = value.get<double>();
      } else {
        throw ConfigError("max_cr must be a number or null");
      }
    } else {
      throw ConfigError("unknown filter config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

FilterConfig FilterConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

Json FilterConfig::to_json() const {
  Json j = Json::object();
  j["min_ref_chars"] = min_ref_chars;
  j["min_summary_chars"] = min_summary_chars;
  j["min_cr"] = min_cr;
  j["max_cr"] = max_cr ? Json(*max_cr) : Json(nullptr);
  return j;
}

// --- per-sample checks -------------------------------------------------------

std::optional<Outcome> check_min_length(const Sample& sample, const FilterConfig& config) {
  const std::size_t ref_chars = unicode::scalar_count(normalize(sample.reference));
  if (ref_chars == 0 || ref_chars < config.min_ref_chars) return Outcome::minlen_ref;
  const std::size_t summary_chars = unicode::scalar_count(normalize(sample.summary));
  if (summary_chars == 0 || summary_chars < config.min_summary_chars) {
    return Outcome::minlen_summary;
  }
  return std::nullopt;
}

std::optional<Outcome> check_identity(const Sample& sample) {
  if (normalize(sample.reference) == normalize(sample.summary)) return Outcome::identity;
  return std::nullopt;
}

double compression_ratio(const Sample& sample) {
  const auto summary_tokens = tokenize(sample.summary, TokenMode::whitespace).size();
  if (summary_tokens == 0) {
    throw UndefinedRatio("compression ratio undefined for sample '" + sample.id +
                         "': summary has no tokens");
  }
  const auto ref_tokens = tokenize(sample.reference, TokenMode::whitespace).size();
  return static_cast<double>(ref_tokens) / static_cast<double>(summary_tokens);
}

std::optional<Outcome> check_min_cr(const Sample& sample, const FilterConfig& config) {
  if (compression_ratio(sample) < config.min_cr) return Outcome::min_cr;
  return std::nullopt;
}

std::optional<Outcome> check_max_cr(const Sample& sample, const FilterConfig& config) {
  if (config.max_cr && compression_ratio(sample) > *config.max_cr) return Outcome::max_cr;
  return std::nullopt;
}

std::optional<Outcome> check_fully_extractive(const Sample& sample) {
  const std::string summary = casefold(normalize(sample.summary));
  const std::string reference = casefold(normalize(sample.reference));
  if (reference.find(summary) != std::string::npos) return Outcome::fully_extractive;
  return std::nullopt;
}

std::optional<Outcome> check_sample(const Sample& sample, const FilterConfig& config) {
  if (auto o = check_min_length(sample, config)) return o;
  if (auto o = check_identity(sample)) return o;
  if (auto o = check_min_cr(sample, config)) return o;
  if (auto o = check_max_cr(sample, config)) return o;
  return check_fully_extractive(sample);
}

// --- corpus level ------------------------------------------------------------

DedupResult dedup_additive(const Corpus& corpus) {
  DedupResult result;
  result.kept.split_label = corpus.split_label;
  result.verdicts.reserve(corpus.size());
  std::unordered_set<std::string> seen_references;
  std::unordered_set<std::string> seen_summaries;
  for (const auto& sample : corpus.samples) {
    std::string ref_key = normalize(sample.reference);
    std::string summary_key = normalize(sample.summary);
    const bool ref_seen = seen_references.count(ref_key) > 0;
    const bool summary_seen = seen_summaries.count(summary_key) > 0;
    Outcome outcome = Outcome::valid;
    if (ref_seen && summary_seen) {
      outcome = Outcome::dup_exact;
    } else if (ref_seen) {
      outcome = Outcome::dup_reference;
    } else if (summary_seen) {
      outcome = Outcome::dup_summary;
    } else {
      seen_references.insert(std::move(ref_key));
      seen_summaries.insert(std::move(summary_key));
      result.kept.samples.push_back(sample);
    }
    result.verdicts.push_back({sample.id, outcome});
  }
  return result;
}

AuditResult audit(const Corpus& corpus, const FilterConfig& config) {
  config.validate();
  AuditResult result;
  result.report.split_label = corpus.split_label.value_or("");
  result.report.total = corpus.size();
  result.verdicts.resize(corpus.size());

  Corpus survivors;
  std::vector<std::size_t> survivor_index;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Sample& sample = corpus.samples[i];
    result.verdicts[i].sample_id = sample.id;
    if (auto failed = check_sample(sample, config)) {
      result.verdicts[i].outcome = *failed;
    } else {
      survivors.samples.push_back(sample);
      survivor_index.push_back(i);
    }
  }

  const DedupResult dedup = dedup_additive(survivors);
  for (std::size_t k = 0; k < survivor_index.size(); ++k) {
    result.verdicts[survivor_index[k]].outcome = dedup.verdicts[k].outcome;
  }

  for (const auto& v : result.verdicts) ++result.report.counts[static_cast<std::size_t>(v.outcome)];
  return result;
}

Corpus filter(const Corpus& corpus, const FilterConfig& config) {
  const AuditResult result = audit(corpus, config);
  Corpus out;
  out.split_label = corpus.split_label;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (result.verdicts[i].outcome == Outcome::valid) out.samples.push_back(corpus.samples[i]);
  }
  return out;
}

void write_verdicts_jsonl(const std::vector<FilterVerdict>& verdicts, std::ostream& out) {
  for (const auto& v : verdicts) {
    Json obj = Json::object();
    obj["id"] = v.sample_id;
    obj["outcome"] = std::string(to_string(v.outcome));
    out << obj.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  }
}

}  // namespace sumaudit
