#include "sumaudit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "sumaudit/cistem.hpp"

namespace sumaudit {

std::string_view to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::lead3: return "lead3";
    case BaselineMethod::leadk: return "leadk";
    case BaselineMethod::lexrank_st: return "lexrank-st";
  }
  return "lead3";
}

std::optional<BaselineMethod> parse_baseline_method(std::string_view name) {
  if (name == "lead3") return BaselineMethod::lead3;
  if (name == "leadk") return BaselineMethod::leadk;
  if (name == "lexrank-st" || name == "lexrank_st") return BaselineMethod::lexrank_st;
  return std::nullopt;
}

void BaselineConfig::validate() const {
  if (k_override && *k_override == 0) throw std::invalid_argument("k must be >= 1");
  if (cr_avg && !(*cr_avg > 0.0 && std::isfinite(*cr_avg))) {
    throw std::invalid_argument("cr_avg must be > 0");
  }
  if (method != BaselineMethod::lead3 && !k_override && !cr_avg) {
    throw std::invalid_argument(std::string(to_string(method)) + " needs k or cr_avg");
  }
  if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in (0, 1)");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be >= 1");
}

// --- embeddings ----------------------------------------------------------------

std::vector<Vector> tfidf_embed(const SentenceList& sentences) {
  std::vector<std::vector<std::string>> stems(sentences.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& tok : tokenize(sentences[i], TokenMode::rouge)) {
      stems[i].push_back(cistem_stem(tok));
    }
    for (const auto& term : std::set<std::string>(stems[i].begin(), stems[i].end())) ++df[term];
  }

  std::map<std::string, std::size_t> column;
  for (const auto& [term, _] : df) column.emplace(term, column.size());

  const auto n = static_cast<double>(sentences.size());
  std::vector<Vector> vectors(sentences.size(), Vector(column.size(), 0.0));
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& term : stems[i]) vectors[i][column.at(term)] += 1.0;
    for (const auto& [term, col] : column) {
      if (vectors[i][col] != 0.0) vectors[i][col] *= std::log(n / static_cast<double>(df.at(term)));
    }
  }
  return vectors;
}

std::vector<Vector> TfidfBackend::embed(const SentenceList& sentences) const {
  return tfidf_embed(sentences);
}

FileEmbeddingBackend FileEmbeddingBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings " + path.string());
  std::vector<Vector> vectors;
  std::optional<std::size_t> dim;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path.string() + ":" + std::to_string(line_no);
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::exception& e) {
      throw EmbeddingError("malformed JSON at " + where + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("index") || !obj["index"].is_number_unsigned() ||
        !obj.contains("vector") || !obj["vector"].is_array()) {
      throw EmbeddingError("expected {\"index\":i,\"vector\":[...]} at " + where);
    }
    const auto index = obj["index"].get<std::size_t>();
    Vector v;
    for (const auto& x : obj["vector"]) {
      if (!x.is_number()) throw EmbeddingError("non-numeric vector entry at " + where);
      const double value = x.get<double>();
      if (!std::isfinite(value)) {
        throw EmbeddingError("non-finite value for index " + std::to_string(index) + " at " + where);
      }
      v.push_back(value);
    }
    if (v.empty()) throw EmbeddingError("empty vector for index " + std::to_string(index));
    if (dim && v.size() != *dim) {
      throw EmbeddingError("dimension mismatch for index " + std::to_string(index) + ": expected " +
                           std::to_string(*dim) + ", got " + std::to_string(v.size()));
    }
    dim = v.size();
    if (index >= vectors.size()) vectors.resize(index + 1);
    if (!vectors[index].empty()) {
      throw EmbeddingError("duplicate index " + std::to_string(index) + " at " + where);
    }
    vectors[index] = std::move(v);
  }
  return FileEmbeddingBackend(std::move(vectors));
}

std::vector<Vector> FileEmbeddingBackend::embed(const SentenceList& sentences) const {
  std::vector<Vector> out;
  out.reserve(sentences.size());
  std::optional<std::size_t> dim;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i >= vectors_.size() || vectors_[i].empty()) {
      throw EmbeddingError("missing embedding for sentence index " + std::to_string(i));
    }
    if (dim && vectors_[i].size() != *dim) {
      throw EmbeddingError("dimension mismatch at sentence index " + std::to_string(i));
    }
    dim = vectors_[i].size();
    out.push_back(vectors_[i]);
  }
  return out;
}

std::unique_ptr<SimilarityBackend> embed_from_file(const std::filesystem::path& path) {
  return std::make_unique<FileEmbeddingBackend>(FileEmbeddingBackend::load(path));
}

// --- length estimation -------------------------------------------------------

SentenceList reference_sentences(const Sample& sample, const AbbreviationSet& abbreviations) {
  auto it = sample.extra.find("reference_sentences");
  if (it != sample.extra.end() && it->is_array()) return it->get<SentenceList>();
  return split_sentences(sample.reference, abbreviations);
}

SentenceList summary_sentences(const Sample& sample, const AbbreviationSet& abbreviations) {
  auto it = sample.extra.find("summary_sentences");
  if (it != sample.extra.end() && it->is_array()) return it->get<SentenceList>();
  return split_sentences(sample.summary, abbreviations);
}

double avg_compression_ratio_sentences(const Corpus& training,
                                       const AbbreviationSet& abbreviations) {
  if (training.empty()) throw std::invalid_argument("average CR over an empty training corpus");
  double sum = 0.0;
  for (const auto& sample : training.samples) {
    const auto ref = reference_sentences(sample, abbreviations).size();
    const auto summ = summary_sentences(sample, abbreviations).size();
    if (summ == 0) {
      throw std::invalid_argument("sample '" + sample.id + "' has a summary with no sentences");
    }
    if (ref == 0) {
      throw std::invalid_argument("sample '" + sample.id + "' has a reference with no sentences");
    }
    sum += static_cast<double>(ref) / static_cast<double>(summ);
  }
  return sum / static_cast<double>(training.size());
}

double avg_compression_ratio_sentences(const Corpus& training) {
  return avg_compression_ratio_sentences(training, AbbreviationSet::german());
}

std::size_t estimate_k_hat(std::size_t sentence_count, double cr_avg) {
  if (!(cr_avg > 0.0)) throw std::invalid_argument("cr_avg must be > 0");
  const double raw = static_cast<double>(sentence_count) / cr_avg;
  // absorb representation error, e.g. 3 / 0.1 = 30.000000000000004
  const double k = std::ceil(raw - 1e-9 * std::max(1.0, raw));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, k)));
}

std::string lead_k(const SentenceList& reference, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  std::string out;
  const std::size_t take = std::min(k, reference.size());
  for (std::size_t i = 0; i < take; ++i) {
    if (i) out.push_back(' ');
    out += reference[i];
  }
  return out;
}

// --- LexRank ---------------------------------------------------------------------

Matrix cosine_similarity_matrix(const std::vector<Vector>& vectors) {
  const std::size_t n = vectors.size();
  std::vector<double> norms(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != vectors[0].size()) {
      throw EmbeddingError("embedding dimension mismatch at sentence " + std::to_string(i));
    }
    for (double x : vectors[i]) {
      if (!std::isfinite(x)) {
        throw EmbeddingError("non-finite embedding value for sentence " + std::to_string(i));
      }
      norms[i] += x * x;
    }
    norms[i] = std::sqrt(norms[i]);
  }

  Matrix sim(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] == 0.0) {
      std::fill(sim[i].begin(), sim[i].end(), 1.0);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      const double dot =
          std::inner_product(vectors[i].begin(), vectors[i].end(), vectors[j].begin(), 0.0);
      sim[i][j] = std::max(0.0, dot / (norms[i] * norms[j]));
    }
  }
  return sim;
}

LexRankResult lexrank_centrality(const Matrix& similarity, double damping, double tolerance,
                                 std::size_t max_iterations) {
  const std::size_t n = similarity.size();
  LexRankResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  Matrix m = similarity;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("similarity matrix must be square");
    const double row_sum = std::accumulate(m[i].begin(), m[i].end(), 0.0);
    if (!(row_sum > 0.0)) {
      throw std::invalid_argument("similarity row " + std::to_string(i) + " has no positive mass");
    }
    for (double& x : m[i]) x /= row_sum;
  }

  const double teleport = (1.0 - damping) / static_cast<double>(n);
  std::vector<double> c(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += m[i][j] * c[i];
      next[j] = teleport + damping * acc;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) delta = std::max(delta, std::fabs(next[j] - c[j]));
    c.swap(next);
    result.iterations = it;
    if (delta < tolerance) {
      result.converged = true;
      break;
    }
  }
  result.centrality = std::move(c);
  return result;
}

LexRankResult lexrank_st(const SentenceList& reference, const SimilarityBackend& backend,
                         std::size_t k, const BaselineConfig& config) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (reference.empty()) throw std::invalid_argument("LexRank-ST needs a non-empty reference");
  const std::vector<Vector> vectors = backend.embed(reference);
  if (vectors.size() != reference.size()) {
    throw EmbeddingError("backend returned " + std::to_string(vectors.size()) + " vectors for " +
                         std::to_string(reference.size()) + " sentences");
  }
  LexRankResult result = lexrank_centrality(cosine_similarity_matrix(vectors), config.damping,
                                            config.tolerance, config.max_iterations);

  // Greedy pick: the earliest sentence within kCentralityTie of the best
  // remaining score, so ties that differ only by rounding resolve by position.
  constexpr double kCentralityTie = 1e-12;
  std::vector<bool> taken(reference.size(), false);
  std::vector<std::size_t> order;
  while (order.size() < std::min(k, reference.size())) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (!taken[i]) best = std::max(best, result.centrality[i]);
    }
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (!taken[i] && result.centrality[i] >= best - kCentralityTie) {
        taken[i] = true;
        order.push_back(i);
        break;
      }
    }
  }
  std::sort(order.begin(), order.end());
  result.selected = order;

  for (std::size_t idx : result.selected) {
    if (!result.summary.empty()) result.summary.push_back(' ');
    result.summary += reference[idx];
  }
  return result;
}

// --- corpus runs -----------------------------------------------------------------

BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const BackendFactory& backends, const AbbreviationSet& abbreviations) {
  config.validate();
  BaselineRun run;
  run.outputs.reserve(corpus.size());
  for (const auto& sample : corpus.samples) {
    try {
      const SentenceList sentences = reference_sentences(sample, abbreviations);
      std::size_t k = 3;
      if (config.method != BaselineMethod::lead3) {
        k = config.k_override ? *config.k_override : estimate_k_hat(sentences, *config.cr_avg);
      }
      std::string summary;
      if (config.method == BaselineMethod::lexrank_st) {
        if (!sentences.empty()) {
          const auto backend = backends(sample);
          LexRankResult r = lexrank_st(sentences, *backend, k, config);
          if (!r.converged) run.unconverged.push_back(sample.id);
          summary = std::move(r.summary);
        }
      } else {
        summary = lead_k(sentences, k);
      }
      run.outputs.push_back({sample.id, std::move(summary)});
    } catch (const BaselineError&) {
      throw;
    } catch (const std::exception& e) {
      throw BaselineError(sample.id, e.what());
    }
  }
  return run;
}

BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const SimilarityBackend& backend, const AbbreviationSet& abbreviations) {
  // Non-owning alias; the factory never outlives this call.
  const std::shared_ptr<const SimilarityBackend> shared(&backend, [](const SimilarityBackend*) {});
  return run_baseline(corpus, config, BackendFactory([&](const Sample&) { return shared; }),
                      abbreviations);
}

BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const SimilarityBackend& backend) {
  return run_baseline(corpus, config, backend, AbbreviationSet::german());
}

}  // namespace sumaudit
