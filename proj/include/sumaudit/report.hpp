#pragma once

// Report rendering (markdown / CSV / JSON) and run manifests.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumaudit/corpus.hpp"
#include "sumaudit/filters.hpp"
#include "sumaudit/rouge.hpp"
#include "sumaudit/stats.hpp"

namespace sumaudit {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Everything needed to re-run a command. The timestamp is kept out of
/// report bodies so identical runs produce identical bytes.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // (role, path)
  Json config = Json::object();
  Json seeds = Json::object();
  std::string version = std::string(kToolVersion);
  std::string timestamp;  // ISO 8601 UTC

  Json to_json(bool with_timestamp) const;
};

std::string utc_timestamp();

enum class ReportFormat { md, csv, json };
std::string_view to_string(ReportFormat format);
std::optional<ReportFormat> parse_report_format(std::string_view name);

std::string format_percent(double fraction);  // "42.75%"
std::string csv_field(std::string_view value);

std::string render_audit(const AuditReport& report, const FilterConfig& config,
                         const RunManifest& manifest, ReportFormat format);

std::string render_stats(const DistributionStats& stats, const RunManifest& manifest);

struct SystemAggregate {
  std::string label;
  std::vector<AggregateScore> scores;  // one per variant
  double coverage = 1.0;
};

std::string render_scores(const std::vector<SystemAggregate>& systems,
                          const std::vector<RougeVariant>& variants, const RunManifest& manifest,
                          ReportFormat format);

/// id, variant, p, r, f1 (prefixed by a system column when labels are given).
std::string render_per_sample_csv(const std::vector<std::pair<std::string, CorpusScores>>& runs,
                                  bool with_system_column);

}  // namespace sumaudit
