#include "sumaudit/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <fmt/format.h>

namespace sumaudit {

Json RunManifest::to_json(bool with_timestamp) const {
  Json j = Json::object();
  j["command"] = command;
  Json in = Json::object();
  for (const auto& [role, path] : inputs) in[role] = path;
  j["inputs"] = std::move(in);
  j["config"] = config;
  j["seeds"] = seeds;
  j["version"] = version;
  if (with_timestamp) j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::md: return "md";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
  }
  return "md";
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "md" || name == "markdown") return ReportFormat::md;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

std::string format_percent(double fraction) { return fmt::format("{:.2f}%", 100.0 * fraction); }

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

std::string manifest_line(const RunManifest& manifest) {
  return manifest.to_json(false).dump(-1, ' ', false, Json::error_handler_t::replace);
}

struct AuditColumn {
  std::string_view header;
  std::string_view key;
  Outcome outcome;
};

std::vector<AuditColumn> audit_columns(const FilterConfig& config) {
  std::vector<AuditColumn> cols = {
      {"Min Length Ref", "minlen_ref", Outcome::minlen_ref},
      {"Min Length Summ", "minlen_summary", Outcome::minlen_summary},
      {"Id", "identity", Outcome::identity},
      {"Min CR", "min_cr", Outcome::min_cr},
  };
  if (config.max_cr) cols.push_back({"Max CR", "max_cr", Outcome::max_cr});
  cols.push_back({"Fully Extr", "fully_extractive", Outcome::fully_extractive});
  cols.push_back({"Dup Exact", "dup_exact", Outcome::dup_exact});
  cols.push_back({"Dup Ref", "dup_reference", Outcome::dup_reference});
  cols.push_back({"Dup Summ", "dup_summary", Outcome::dup_summary});
  return cols;
}

}  // namespace

std::string render_audit(const AuditReport& report, const FilterConfig& config,
                         const RunManifest& manifest, ReportFormat format) {
  const auto cols = audit_columns(config);
  std::ostringstream out;
  switch (format) {
    case ReportFormat::md: {
      out << "<!-- manifest: " << manifest_line(manifest) << " -->\n";
      out << "| Split | Samples |";
      for (const auto& c : cols) out << ' ' << c.header << " |";
      out << " Valid Samples |\n|---|---:|";
      for (std::size_t i = 0; i < cols.size(); ++i) out << "---:|";
      out << "---:|\n";
      out << "| " << (report.split_label.empty() ? "-" : report.split_label) << " | "
          << report.total << " |";
      for (const auto& c : cols) out << ' ' << report.count(c.outcome) << " |";
      out << ' ' << report.valid() << " (" << format_percent(report.valid_fraction()) << ") |\n";
      break;
    }
    case ReportFormat::csv: {
      out << "# manifest: " << manifest_line(manifest) << '\n';
      out << "split,samples";
      for (const auto& c : cols) out << ',' << c.key;
      out << ",valid,valid_percent\n";
      out << csv_field(report.split_label) << ',' << report.total;
      for (const auto& c : cols) out << ',' << report.count(c.outcome);
      out << ',' << report.valid() << ',' << fmt::format("{:.2f}", 100.0 * report.valid_fraction())
          << '\n';
      break;
    }
    case ReportFormat::json: {
      Json j = Json::object();
      j["manifest"] = manifest.to_json(false);
      j["split"] = report.split_label;
      j["total"] = report.total;
      Json counts = Json::object();
      for (const auto& c : cols) counts[std::string(c.key)] = report.count(c.outcome);
      j["counts"] = std::move(counts);
      j["valid"] = report.valid();
      j["valid_fraction"] = report.valid_fraction();
      out << j.dump(2, ' ', false, Json::error_handler_t::replace) << '\n';
      break;
    }
  }
  return out.str();
}

std::string render_stats(const DistributionStats& s, const RunManifest& manifest) {
  std::ostringstream out;
  out << "<!-- manifest: " << manifest_line(manifest) << " -->\n";
  out << "| Field | Unit | Count | Mean | Q1 | Median | Q3 | Min | Max |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
  out << fmt::format("| {} | {} | {} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {:.2f} |\n",
                     s.field, s.unit, s.count, s.mean, s.q1, s.median, s.q3, s.min, s.max);
  return out.str();
}

std::string render_scores(const std::vector<SystemAggregate>& systems,
                          const std::vector<RougeVariant>& variants, const RunManifest& manifest,
                          ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::md: {
      out << "<!-- manifest: " << manifest_line(manifest) << " -->\n";
      out << "| System |";
      for (auto v : variants) out << ' ' << short_name(v) << " |";
      out << " Coverage |\n|---|";
      for (std::size_t i = 0; i < variants.size(); ++i) out << "---:|";
      out << "---:|\n";
      for (const auto& sys : systems) {
        out << "| " << sys.label << " |";
        for (const auto& a : sys.scores) {
          out << fmt::format(" {:.2f} [{:.2f}, {:.2f}] |", 100 * a.mean_f1, 100 * a.ci_low,
                             100 * a.ci_high);
        }
        out << ' ' << format_percent(sys.coverage) << " |\n";
      }
      break;
    }
    case ReportFormat::csv: {
      out << "# manifest: " << manifest_line(manifest) << '\n';
      out << "system,variant,mean_f1,ci_low,ci_high,mean_precision,mean_recall,n_samples,"
             "n_resamples,seed,coverage\n";
      for (const auto& sys : systems) {
        for (const auto& a : sys.scores) {
          out << csv_field(sys.label) << ',' << to_string(a.variant)
              << fmt::format(",{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},", a.mean_f1, a.ci_low,
                             a.ci_high, a.mean_precision, a.mean_recall)
              << a.n_samples << ',' << a.n_resamples << ',' << a.seed << ','
              << fmt::format("{:.6f}", sys.coverage) << '\n';
        }
      }
      break;
    }
    case ReportFormat::json: {
      Json j = Json::object();
      j["manifest"] = manifest.to_json(false);
      Json systems_json = Json::object();
      for (const auto& sys : systems) {
        Json s = Json::object();
        for (const auto& a : sys.scores) s[std::string(to_string(a.variant))] = a.to_json();
        s["coverage"] = sys.coverage;
        systems_json[sys.label] = std::move(s);
      }
      j["systems"] = std::move(systems_json);
      out << j.dump(2, ' ', false, Json::error_handler_t::replace) << '\n';
      break;
    }
  }
  return out.str();
}

std::string render_per_sample_csv(const std::vector<std::pair<std::string, CorpusScores>>& runs,
                                  bool with_system_column) {
  std::ostringstream out;
  if (with_system_column) out << "system,";
  out << "id,variant,p,r,f1\n";
  for (const auto& [label, scores] : runs) {
    for (const auto& row : scores.samples) {
      for (const auto& s : row.scores) {
        if (with_system_column) out << csv_field(label) << ',';
        out << csv_field(row.id) << ',' << to_string(s.variant)
            << fmt::format(",{:.6f},{:.6f},{:.6f}\n", s.precision, s.recall, s.f1);
      }
    }
  }
  return out.str();
}

}  // namespace sumaudit
