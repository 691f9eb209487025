#pragma once

// Extractive baselines: lead-3, lead-k with a per-document k estimated from
// the average training compression ratio, and LexRank-ST (continuous LexRank
// over sentence-embedding cosine similarity).

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumaudit/corpus.hpp"
#include "sumaudit/textproc.hpp"

namespace sumaudit {

using Vector = std::vector<double>;

/// Produces one vector per sentence, all of equal dimension. Implementations
/// must be deterministic and safe to call concurrently.
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual std::vector<Vector> embed(const SentenceList& sentences) const = 0;
};

/// TF-IDF over Cistem-stemmed ROUGE tokens of the document itself:
/// weight = tf * ln(N / df), N = sentence count, df = sentence frequency.
class TfidfBackend final : public SimilarityBackend {
 public:
  std::vector<Vector> embed(const SentenceList& sentences) const override;
};

std::vector<Vector> tfidf_embed(const SentenceList& sentences);

class EmbeddingError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precomputed vectors for a single document, JSONL {"index":i,"vector":[…]}.
class FileEmbeddingBackend final : public SimilarityBackend {
 public:
  explicit FileEmbeddingBackend(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {}

  /// Validates dimension consistency, finiteness and duplicate indices.
  static FileEmbeddingBackend load(const std::filesystem::path& path);

  /// Throws EmbeddingError naming the first index missing for this document.
  std::vector<Vector> embed(const SentenceList& sentences) const override;

  std::size_t size() const { return vectors_.size(); }

 private:
  // Indexed by sentence; empty entries mark indices absent from the file.
  std::vector<Vector> vectors_;
};

std::unique_ptr<SimilarityBackend> embed_from_file(const std::filesystem::path& path);

enum class BaselineMethod { lead3, leadk, lexrank_st };

std::string_view to_string(BaselineMethod method);
std::optional<BaselineMethod> parse_baseline_method(std::string_view name);

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::lead3;
  std::optional<std::size_t> k_override;
  std::optional<double> cr_avg;
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Mean over samples of reference sentences / summary sentences. Throws
/// std::invalid_argument for an empty corpus or a sample with no sentences.
double avg_compression_ratio_sentences(const Corpus& training,
                                       const AbbreviationSet& abbreviations);
double avg_compression_ratio_sentences(const Corpus& training);

/// max(1, ceil(sentence_count / cr_avg)).
std::size_t estimate_k_hat(std::size_t sentence_count, double cr_avg);
inline std::size_t estimate_k_hat(const SentenceList& reference, double cr_avg) {
  return estimate_k_hat(reference.size(), cr_avg);
}

/// First min(k, |reference|) sentences joined by single spaces.
std::string lead_k(const SentenceList& reference, std::size_t k);

struct LexRankResult {
  std::string summary;
  std::vector<std::size_t> selected;  // ascending sentence indices
  std::vector<double> centrality;
  std::size_t iterations = 0;
  bool converged = false;
};

using Matrix = std::vector<std::vector<double>>;

/// Pairwise cosine similarity with negatives clamped to 0. The row of a zero
/// vector is all ones (uniform after normalisation). Throws EmbeddingError on
/// non-finite values or mixed dimensions.
Matrix cosine_similarity_matrix(const std::vector<Vector>& vectors);

/// Continuous LexRank: row-normalises the non-negative similarity matrix to M
/// and iterates c <- (1-d)/N + d * M^T c from the uniform vector until the
/// max-norm change drops below tolerance. Every row needs a positive sum.
LexRankResult lexrank_centrality(const Matrix& similarity, double damping, double tolerance,
                                 std::size_t max_iterations);

/// k highest-centrality sentences (ties to the earlier sentence), emitted in
/// document order.
LexRankResult lexrank_st(const SentenceList& reference, const SimilarityBackend& backend,
                         std::size_t k, const BaselineConfig& config);

/// Sentences of a sample's reference: the "reference_sentences" string array
/// from the sample's extra fields when present, otherwise split_sentences.
SentenceList reference_sentences(const Sample& sample, const AbbreviationSet& abbreviations);
SentenceList summary_sentences(const Sample& sample, const AbbreviationSet& abbreviations);

class BaselineError : public std::runtime_error {
 public:
  BaselineError(std::string sample_id, const std::string& what)
      : std::runtime_error("sample '" + sample_id + "': " + what), sample_id_(std::move(sample_id)) {}
  const std::string& sample_id() const { return sample_id_; }

 private:
  std::string sample_id_;
};

struct BaselineRun {
  std::vector<SystemSummary> outputs;
  std::vector<std::string> unconverged;  // ids where LexRank hit max_iterations
};

using BackendFactory = std::function<std::shared_ptr<const SimilarityBackend>(const Sample&)>;

BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const SimilarityBackend& backend, const AbbreviationSet& abbreviations);
BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const BackendFactory& backends, const AbbreviationSet& abbreviations);
BaselineRun run_baseline(const Corpus& corpus, const BaselineConfig& config,
                         const SimilarityBackend& backend);

}  // namespace sumaudit
