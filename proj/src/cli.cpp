#include "sumaudit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sumaudit/baselines.hpp"
#include "sumaudit/corpus.hpp"
#include "sumaudit/filters.hpp"
#include "sumaudit/report.hpp"
#include "sumaudit/rouge.hpp"
#include "sumaudit/stats.hpp"
#include "sumaudit/textproc.hpp"
#include "sumaudit/unicode.hpp"

namespace fs = std::filesystem;

namespace sumaudit {

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& body) {
  auto out = open_for_write(path);
  out << body;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

void write_manifest(const fs::path& path, const RunManifest& manifest) {
  write_text(path, manifest.to_json(true).dump(2, ' ', false, Json::error_handler_t::replace) + "\n");
}

fs::path sidecar(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

RunManifest make_manifest(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.timestamp = utc_timestamp();
  return m;
}

AbbreviationSet abbreviations_from(const std::string& path) {
  AbbreviationSet set = AbbreviationSet::german();
  if (!path.empty()) set.add_from_file(path);
  return set;
}

// --- filter config flags (shared by audit and filter) -------------------------

struct FilterFlags {
  std::string config_path;
  std::string preset = "default";
  FilterConfig resolve(Json& snapshot) const {
    FilterConfig c = config_path.empty() ? FilterConfig::preset(preset) : FilterConfig::load(config_path);
    snapshot = c.to_json();
    return c;
  }
};

void add_filter_flags(CLI::App* cmd, FilterFlags& flags) {
  auto* config = cmd->add_option("--config", flags.config_path, "Filter thresholds as JSON")
                     ->check(CLI::ExistingFile);
  cmd->add_option("--preset", flags.preset, "Threshold preset")
      ->check(CLI::IsMember({"default", "wikilingua"}))
      ->excludes(config);
}

void check_attribution(const AuditResult& result) {
  const std::size_t sum =
      std::accumulate(result.report.counts.begin(), result.report.counts.end(), std::size_t{0});
  if (sum != result.report.total || result.verdicts.size() != result.report.total) {
    throw InvariantViolation("audit attribution incomplete: " + std::to_string(sum) + " of " +
                             std::to_string(result.report.total) + " samples attributed");
  }
}

std::string label_for(const std::string& path) { return fs::path(path).stem().string(); }

// --- audit -----------------------------------------------------------------

struct AuditArgs {
  std::string input;
  FilterFlags filter;
  std::string out_dir;
  std::vector<std::string> formats{"md"};
};

int cmd_audit(const AuditArgs& a, std::ostream& out) {
  RunManifest manifest = make_manifest("audit");
  manifest.inputs = {{"input", a.input}};
  const FilterConfig config = a.filter.resolve(manifest.config);

  Corpus corpus = load_jsonl(a.input);
  if (!corpus.split_label) corpus.split_label = label_for(a.input);
  const AuditResult result = audit(corpus, config);
  check_attribution(result);

  std::vector<ReportFormat> formats;
  for (const auto& f : a.formats) formats.push_back(*parse_report_format(f));

  if (a.out_dir.empty()) {
    for (auto f : formats) out << render_audit(result.report, config, manifest, f);
    return kExitOk;
  }
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  for (auto f : formats) {
    write_text(dir / ("audit." + std::string(to_string(f))), render_audit(result.report, config, manifest, f));
  }
  {
    auto verdicts = open_for_write(dir / "verdicts.jsonl");
    write_verdicts_jsonl(result.verdicts, verdicts);
  }
  write_manifest(dir / "audit.manifest.json", manifest);
  out << render_audit(result.report, config, manifest, ReportFormat::md);
  return kExitOk;
}

// --- filter ------------------------------------------------------------------

struct FilterArgs {
  std::string input;
  FilterFlags filter;
  std::string out;
};

int cmd_filter(const FilterArgs& a, std::ostream& out) {
  RunManifest manifest = make_manifest("filter");
  manifest.inputs = {{"input", a.input}};
  const FilterConfig config = a.filter.resolve(manifest.config);
  const Corpus corpus = load_jsonl(a.input);
  const Corpus kept = filter(corpus, config);
  write_jsonl(kept, fs::path(a.out));
  write_manifest(sidecar(a.out), manifest);
  out << "kept " << kept.size() << " of " << corpus.size() << " samples ("
      << format_percent(corpus.empty() ? 0.0 : static_cast<double>(kept.size()) / static_cast<double>(corpus.size()))
      << ")\n";
  return kExitOk;
}

// --- stats -------------------------------------------------------------------

struct StatsArgs {
  std::string input;
  std::string field;
  std::string unit;
  bool cr = false;
  std::string violin_out;
  std::string abbreviations;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  RunManifest manifest = make_manifest("stats");
  manifest.inputs = {{"input", a.input}};
  const Corpus corpus = load_jsonl(a.input);
  if (corpus.empty()) throw UsageError("cannot compute statistics over an empty corpus");

  DistributionStats stats;
  if (a.cr) {
    manifest.config = {{"metric", "cr"}};
    stats = cr_distribution(corpus);
  } else {
    if (a.field.empty() || a.unit.empty()) throw UsageError("--field and --unit are required unless --cr is given");
    manifest.config = {{"field", a.field}, {"unit", a.unit}};
    const Field field = a.field == "reference" ? Field::reference : Field::summary;
    const LengthUnit unit = a.unit == "chars"    ? LengthUnit::chars
                            : a.unit == "tokens" ? LengthUnit::tokens
                                                 : LengthUnit::sentences;
    stats = length_distribution(corpus, field, unit, abbreviations_from(a.abbreviations));
  }
  out << render_stats(stats, manifest);
  if (!a.violin_out.empty()) {
    write_text(a.violin_out, stats.to_json().dump(2) + "\n");
    write_manifest(sidecar(a.violin_out), manifest);
  }
  return kExitOk;
}

// --- inspect -----------------------------------------------------------------

struct InspectArgs {
  std::string input;
  std::string mode;
  std::string key;
  std::size_t n = 5;
  std::uint64_t seed = 0;
};

InspectKey parse_key(const std::string& key) {
  if (key == "position") return InspectKey::position;
  if (key == "ref_length") return InspectKey::ref_length;
  if (key == "summary_length") return InspectKey::summary_length;
  if (key == "cr") return InspectKey::cr;
  throw UsageError("unknown key '" + key + "'");
}

std::string truncate_chars(const std::string& text, std::size_t max_chars) {
  const std::u32string chars = unicode::decode(normalize(text));
  if (chars.size() <= max_chars) return unicode::encode(chars);
  return unicode::encode(std::u32string_view(chars).substr(0, max_chars)) + "…";
}

int cmd_inspect(const InspectArgs& a, std::ostream& out) {
  const Corpus corpus = load_jsonl(a.input);
  std::vector<Sample> picked;
  if (a.mode == "ordered") {
    picked = inspect_ordered(corpus, parse_key(a.key.empty() ? "position" : a.key), a.n);
  } else if (a.mode == "random") {
    picked = inspect_random(corpus, a.n, a.seed);
  } else {
    const InspectKey key = parse_key(a.key.empty() ? "cr" : a.key);
    if (key == InspectKey::position) throw UsageError("--mode " + a.mode + " needs a metric --key");
    picked = inspect_outliers(corpus, key, a.n,
                              a.mode == "outliers" ? OutlierMode::extreme : OutlierMode::representative);
  }
  for (const auto& s : picked) {
    const double cr = inspect_value(s, InspectKey::cr);
    out << "== " << s.id << '\n';
    out << fmt::format("   ref: {} chars, {} tokens | summary: {} chars, {} tokens | CR {:.2f}\n",
                       unicode::scalar_count(normalize(s.reference)),
                       tokenize(s.reference, TokenMode::whitespace).size(),
                       unicode::scalar_count(normalize(s.summary)),
                       tokenize(s.summary, TokenMode::whitespace).size(), cr);
    out << "   reference: " << truncate_chars(s.reference, 160) << '\n';
    out << "   summary:   " << truncate_chars(s.summary, 240) << '\n';
  }
  return kExitOk;
}

// --- baseline ------------------------------------------------------------------

struct BaselineArgs {
  std::string input;
  std::string method;
  std::size_t k = 0;
  double cr_avg = 0;
  std::string train;
  std::string embeddings;
  std::string out;
  std::string abbreviations;
};

int cmd_baseline(const BaselineArgs& a, std::ostream& out, std::ostream& err) {
  RunManifest manifest = make_manifest("baseline");
  manifest.inputs = {{"input", a.input}};
  const AbbreviationSet abbreviations = abbreviations_from(a.abbreviations);

  BaselineConfig config;
  config.method = *parse_baseline_method(a.method);
  const bool any_length = a.k > 0 || a.cr_avg > 0 || !a.train.empty();
  if (config.method == BaselineMethod::lead3 && any_length) {
    throw UsageError("lead3 always uses k=3; --k/--cr-avg/--train apply to leadk and lexrank-st");
  }
  if (config.method != BaselineMethod::lead3 && !any_length) {
    throw UsageError(a.method + " needs one of --k N, --cr-avg X or --train PATH");
  }
  if (a.k > 0) config.k_override = a.k;
  if (a.cr_avg > 0) config.cr_avg = a.cr_avg;
  if (!a.train.empty()) {
    manifest.inputs.emplace_back("train", a.train);
    config.cr_avg = avg_compression_ratio_sentences(load_jsonl(a.train), abbreviations);
  }

  manifest.config = {{"method", std::string(to_string(config.method))},
                     {"k", config.k_override ? Json(*config.k_override) : Json(nullptr)},
                     {"cr_avg", config.cr_avg ? Json(*config.cr_avg) : Json(nullptr)},
                     {"damping", config.damping},
                     {"tolerance", config.tolerance},
                     {"max_iterations", config.max_iterations},
                     {"backend", a.embeddings.empty() ? "tfidf" : "file"}};
  if (!a.embeddings.empty()) manifest.inputs.emplace_back("embeddings", a.embeddings);
  if (!a.abbreviations.empty()) manifest.inputs.emplace_back("abbreviations", a.abbreviations);

  const Corpus corpus = load_jsonl(a.input);
  BaselineRun run;
  if (a.embeddings.empty()) {
    run = run_baseline(corpus, config, TfidfBackend{}, abbreviations);
  } else if (fs::is_directory(a.embeddings)) {
    const fs::path dir(a.embeddings);
    run = run_baseline(
        corpus, config,
        BackendFactory([&](const Sample& s) -> std::shared_ptr<const SimilarityBackend> {
          return std::make_shared<FileEmbeddingBackend>(FileEmbeddingBackend::load(dir / (s.id + ".jsonl")));
        }),
        abbreviations);
  } else {
    const FileEmbeddingBackend backend = FileEmbeddingBackend::load(a.embeddings);
    run = run_baseline(corpus, config, backend, abbreviations);
  }

  write_system_jsonl(run.outputs, fs::path(a.out));
  write_manifest(sidecar(a.out), manifest);
  if (!run.unconverged.empty()) {
    err << "warning: LexRank did not converge within " << config.max_iterations
        << " iterations for " << run.unconverged.size() << " sample(s), first: "
        << run.unconverged.front() << '\n';
  }
  out << "wrote " << run.outputs.size() << " " << to_string(config.method) << " summaries to "
      << a.out << '\n';
  return kExitOk;
}

// --- score -------------------------------------------------------------------

struct ScoreArgs {
  std::vector<std::string> systems;
  std::vector<std::string> labels;
  std::string gold;
  std::vector<std::string> variants{"r1", "r2", "rl"};
  bool stem = true;
  std::size_t resamples = kDefaultResamples;
  std::uint64_t seed = 0;
  std::string format = "md";
  std::string out;
  std::string per_sample;
};

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  RunManifest manifest = make_manifest("score");
  if (!a.labels.empty() && a.labels.size() != a.systems.size()) {
    throw UsageError("--label must be given once per --system");
  }
  std::vector<RougeVariant> variants;
  for (const auto& v : a.variants) {
    const auto parsed = parse_rouge_variant(v);
    if (!parsed) throw UsageError("unknown ROUGE variant '" + v + "' (expected r1, r2, rl)");
    variants.push_back(*parsed);
  }
  manifest.inputs.emplace_back("gold", a.gold);
  Json variant_names = Json::array();
  for (auto v : variants) variant_names.push_back(std::string(to_string(v)));
  manifest.config = {{"variants", variant_names}, {"stem", a.stem}, {"resamples", a.resamples}};
  manifest.seeds = {{"bootstrap", a.seed}};

  const Corpus gold = load_jsonl(a.gold);
  std::vector<SystemAggregate> aggregates;
  std::vector<std::pair<std::string, CorpusScores>> runs;
  std::map<std::string, int> label_uses;
  for (std::size_t i = 0; i < a.systems.size(); ++i) {
    std::string label = a.labels.empty() ? label_for(a.systems[i]) : a.labels[i];
    if (label_uses[label]++ > 0) label += "#" + std::to_string(label_uses[label]);
    manifest.inputs.emplace_back("system:" + label, a.systems[i]);

    const auto system = load_system_jsonl(a.systems[i]);
    CorpusScores scores = score_corpus(system, gold, variants, a.stem);
    if (!scores.missing_ids.empty()) {
      err << "warning: " << label << ": " << scores.missing_ids.size() << " of " << scores.gold_size
          << " gold samples have no system output (coverage "
          << fmt::format("{:.2f}", scores.coverage()) << ")\n";
    }
    SystemAggregate agg{label, {}, scores.coverage()};
    for (auto v : variants) {
      const auto column = scores.column(v);
      agg.scores.push_back(bootstrap_aggregate(column, a.resamples, a.seed));
    }
    aggregates.push_back(std::move(agg));
    runs.emplace_back(label, std::move(scores));
  }

  const std::string body = render_scores(aggregates, variants, manifest, *parse_report_format(a.format));
  if (a.out.empty()) {
    out << body;
  } else {
    write_text(a.out, body);
    write_manifest(sidecar(a.out), manifest);
    out << render_scores(aggregates, variants, manifest, ReportFormat::md);
  }
  if (!a.per_sample.empty()) write_text(a.per_sample, render_per_sample_csv(runs, runs.size() > 1));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corpus quality audit and ROUGE evaluation for summarization datasets", "sumaudit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  const auto formats = CLI::IsMember({"md", "csv", "json"});

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Attribute every sample to one filter outcome");
  audit_cmd->add_option("--input", audit_args.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  add_filter_flags(audit_cmd, audit_args.filter);
  audit_cmd->add_option("--out", audit_args.out_dir, "Directory for reports and verdicts.jsonl");
  audit_cmd->add_option("--format", audit_args.formats, "Report format(s)")
      ->delimiter(',')
      ->check(formats);

  FilterArgs filter_args;
  auto* filter_cmd = app.add_subcommand("filter", "Write only the samples that pass every check");
  filter_cmd->add_option("--input", filter_args.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  add_filter_flags(filter_cmd, filter_args.filter);
  filter_cmd->add_option("--out", filter_args.out, "Filtered corpus JSONL")->required();

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Length or compression-ratio distribution");
  stats_cmd->add_option("--input", stats_args.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--field", stats_args.field)->check(CLI::IsMember({"reference", "summary"}));
  stats_cmd->add_option("--unit", stats_args.unit)->check(CLI::IsMember({"chars", "tokens", "sentences"}));
  stats_cmd->add_flag("--cr", stats_args.cr, "Compression ratio distribution instead of lengths");
  stats_cmd->add_option("--violin-out", stats_args.violin_out, "Write violin-plot JSON");
  stats_cmd->add_option("--abbreviations", stats_args.abbreviations, "Abbreviation list for sentence splitting")
      ->check(CLI::ExistingFile);

  InspectArgs inspect_args;
  auto* inspect_cmd = app.add_subcommand("inspect", "Select samples for manual review");
  inspect_cmd->add_option("--input", inspect_args.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  inspect_cmd->add_option("--mode", inspect_args.mode)
      ->required()
      ->check(CLI::IsMember({"ordered", "random", "outliers", "representative"}));
  inspect_cmd->add_option("--key", inspect_args.key)
      ->check(CLI::IsMember({"position", "ref_length", "summary_length", "cr"}));
  inspect_cmd->add_option("--n", inspect_args.n)->check(CLI::PositiveNumber);
  inspect_cmd->add_option("--seed", inspect_args.seed);

  BaselineArgs baseline_args;
  auto* baseline_cmd = app.add_subcommand("baseline", "Generate extractive baseline summaries");
  baseline_cmd->add_option("--input", baseline_args.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  baseline_cmd->add_option("--method", baseline_args.method)
      ->required()
      ->check(CLI::IsMember({"lead3", "leadk", "lexrank-st"}));
  auto* k_opt = baseline_cmd->add_option("--k", baseline_args.k, "Fixed summary length in sentences")
                    ->check(CLI::PositiveNumber);
  auto* cr_opt = baseline_cmd->add_option("--cr-avg", baseline_args.cr_avg, "Average sentence compression ratio")
                     ->check(CLI::PositiveNumber);
  auto* train_opt = baseline_cmd->add_option("--train", baseline_args.train, "Training JSONL to estimate --cr-avg")
                        ->check(CLI::ExistingFile);
  k_opt->excludes(cr_opt)->excludes(train_opt);
  cr_opt->excludes(train_opt);
  baseline_cmd->add_option("--embeddings", baseline_args.embeddings,
                           "Precomputed sentence vectors: one JSONL file, or a directory of <id>.jsonl")
      ->check(CLI::ExistingPath);
  baseline_cmd->add_option("--out", baseline_args.out, "System-output JSONL")->required();
  baseline_cmd->add_option("--abbreviations", baseline_args.abbreviations)->check(CLI::ExistingFile);

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "ROUGE F1 with bootstrap confidence intervals");
  score_cmd->add_option("--system", score_args.systems, "System-output JSONL (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  score_cmd->add_option("--label", score_args.labels, "Row label per --system");
  score_cmd->add_option("--gold", score_args.gold, "Gold corpus JSONL")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--variants", score_args.variants, "r1,r2,rl")->delimiter(',');
  score_cmd->add_flag("--stem,!--no-stem", score_args.stem, "Cistem stemming (default on)");
  score_cmd->add_option("--resamples", score_args.resamples)->check(CLI::PositiveNumber);
  score_cmd->add_option("--seed", score_args.seed);
  score_cmd->add_option("--format", score_args.format)->check(formats);
  score_cmd->add_option("--out", score_args.out, "Report file (stdout otherwise)");
  score_cmd->add_option("--per-sample", score_args.per_sample, "Per-sample CSV: id,variant,p,r,f1");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("sumaudit");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*audit_cmd) return cmd_audit(audit_args, out);
    if (*filter_cmd) return cmd_filter(filter_args, out);
    if (*stats_cmd) return cmd_stats(stats_args, out);
    if (*inspect_cmd) return cmd_inspect(inspect_args, out);
    if (*baseline_cmd) return cmd_baseline(baseline_args, out, err);
    if (*score_cmd) return cmd_score(score_args, out, err);
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::logic_error& e) {
    // invalid_argument / domain_error carry data or usage problems
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace sumaudit
