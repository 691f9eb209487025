#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "sumaudit/baselines.hpp"
#include "sumaudit/filters.hpp"

using namespace sumaudit;
using fixtures::sample;
namespace fs = std::filesystem;

namespace {

// Solves (I - d M^T) c = (1-d)/N by Gaussian elimination with partial
// pivoting, M = row-normalised similarity. Independent of the power iteration.
std::vector<double> stationary_oracle(const Matrix& sim, double d) {
  const std::size_t n = sim.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  std::vector<double> row_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (double x : sim[i]) row_sum[i] += x;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[j][i] = (i == j ? 1.0 : 0.0) - d * sim[i][j] / row_sum[i];
    a[j][n] = (1.0 - d) / static_cast<double>(n);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i][n] / a[i][i];
  return c;
}

class FixedBackend final : public SimilarityBackend {
 public:
  explicit FixedBackend(std::vector<Vector> v) : v_(std::move(v)) {}
  std::vector<Vector> embed(const SentenceList&) const override { return v_; }

 private:
  std::vector<Vector> v_;
};

double cosine(const Vector& a, const Vector& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

SentenceList numbered(std::size_t n) {
  SentenceList s;
  for (std::size_t i = 0; i < n; ++i) s.push_back("Satz " + std::to_string(i) + ".");
  return s;
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("sumaudit_baselines_" + name);
  std::ofstream(p) << body;
  return p;
}

const BaselineConfig kLexRank{BaselineMethod::lexrank_st, std::nullopt, 10.0};

}  // namespace

TEST_CASE("estimate_k_hat") {
  CHECK(estimate_k_hat(30, 10.0) == 3);
  CHECK(estimate_k_hat(7, 2.0) == 4);
  CHECK(estimate_k_hat(1, 100.0) == 1);
  CHECK(estimate_k_hat(0, 2.0) == 1);
  CHECK(estimate_k_hat(3, 0.1) == 30);
  CHECK_THROWS_AS(estimate_k_hat(3, 0.0), std::invalid_argument);
}

TEST_CASE("lead_k") {
  const SentenceList five = {"A.", "B.", "C.", "D.", "E."};
  CHECK(lead_k(five, 3) == "A. B. C.");
  CHECK(lead_k({"A.", "B."}, 3) == "A. B.");
  CHECK(lead_k(five, 1) == "A.");
  CHECK(lead_k({}, 3) == "");
  CHECK_THROWS_AS(lead_k(five, 0), std::invalid_argument);
}

TEST_CASE("avg_compression_ratio_sentences") {
  Corpus c;
  c.samples = {sample("a", "S1. S2. S3. S4. S5. S6. S7. S8. S9. S10.", "Kurz."),
               sample("b", "S1. S2. S3. S4. S5. S6. S7. S8. S9. S10. S11. S12. S13. S14. S15. S16. S17. S18. S19. S20.",
                      "Kurz.")};
  CHECK(avg_compression_ratio_sentences(c) == 15.0);

  Corpus ones;
  ones.samples = {sample("a", "Eins.", "Zwei."), sample("b", "Drei.", "Vier.")};
  CHECK(avg_compression_ratio_sentences(ones) == 1.0);

  // fixture valid subset: s1 has 2 reference sentences, s10 has 3; summaries 1 each
  CHECK(avg_compression_ratio_sentences(filter(fixtures::planted10(), FilterConfig{})) == 2.5);

  CHECK_THROWS_AS(avg_compression_ratio_sentences(Corpus{}), std::invalid_argument);
  Corpus broken;
  broken.samples = {sample("bad-id", "Eins. Zwei.", "  ")};
  try {
    avg_compression_ratio_sentences(broken);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bad-id") != std::string::npos);
  }
}

TEST_CASE("pre-split sentences take precedence") {
  Sample s = sample("a", "Eins. Zwei. Drei.", "x");
  s.extra["reference_sentences"] = {"Eins. Zwei.", "Drei."};
  CHECK(reference_sentences(s, AbbreviationSet::german()).size() == 2);
}

TEST_CASE("LexRank on the A/B/C similarity matrix") {
  const Matrix sim = {{1, 1, 1}, {1, 1, 0}, {1, 0, 1}};
  const auto r = lexrank_centrality(sim, 0.85, 1e-12, 1000);
  CHECK(r.converged);
  // symmetric solution: c_B = c_C = x, c_A = 1 - 2x with 1.141667 x = 1/3
  const double x = (1.0 / 3.0) / (0.575 + 2 * 0.85 / 3.0);
  CHECK(r.centrality[1] == doctest::Approx(x).epsilon(1e-9));
  CHECK(r.centrality[0] == doctest::Approx(1 - 2 * x).epsilon(1e-9));
  CHECK(r.centrality[0] > r.centrality[1]);
  const auto oracle = stationary_oracle(sim, 0.85);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.centrality[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
}

TEST_CASE("LexRank matches the linear-system oracle on random matrices") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + rng() % 10;
    std::vector<Vector> v(n, Vector(6));
    for (auto& vec : v) for (auto& x : vec) x = gauss(rng);
    const Matrix sim = cosine_similarity_matrix(v);
    const auto r = lexrank_centrality(sim, 0.85, 1e-13, 10000);
    REQUIRE(r.converged);
    const auto oracle = stationary_oracle(sim, 0.85);
    for (std::size_t i = 0; i < n; ++i) CHECK(r.centrality[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
  }
}

TEST_CASE("cosine similarity matrix") {
  const Matrix sim = cosine_similarity_matrix({{1, 0}, {0, 1}, {-1, 0}, {0, 0}});
  CHECK(sim[0][0] == doctest::Approx(1.0));
  CHECK(sim[0][1] == 0.0);
  CHECK(sim[0][2] == 0.0);  // negative clamped
  CHECK(sim[3] == std::vector<double>{1, 1, 1, 1});
  CHECK(sim[0][3] == 0.0);
  CHECK_THROWS_AS(cosine_similarity_matrix({{1, 0}, {NAN, 1}}), EmbeddingError);
  CHECK_THROWS_AS(cosine_similarity_matrix({{1, 0}, {1}}), EmbeddingError);
}

TEST_CASE("lexrank_st selection") {
  const SentenceList three = {"Gleich.", "Gleich.", "Gleich."};
  const auto same = lexrank_st(three, TfidfBackend{}, 1, kLexRank);
  CHECK(same.summary == "Gleich.");
  CHECK(same.selected == std::vector<std::size_t>{0});

  const SentenceList doc = numbered(4);
  const auto all = lexrank_st(doc, FixedBackend({{1, 0}, {0, 1}, {1, 1}, {1, 2}}), 10, kLexRank);
  CHECK(all.summary == "Satz 0. Satz 1. Satz 2. Satz 3.");

  // output is in document order even if the later sentence ranks higher
  const auto two = lexrank_st(doc, FixedBackend({{1, 0}, {0, 1}, {1, 1}, {1, 1.1}}), 2, kLexRank);
  CHECK(two.selected == std::vector<std::size_t>{2, 3});
  CHECK(two.summary == "Satz 2. Satz 3.");

  // mutually orthogonal sentences tie exactly; rescaling only perturbs the
  // last bits, which must not change the pick
  const SentenceList trio = numbered(3);
  for (double f : {1.0, 0.37, 3.1, 71.0}) {
    const auto r = lexrank_st(trio, FixedBackend({{0.3 * f, 0, 0}, {0, 1.7, 0}, {0, 0, 0.9 * f}}), 1, kLexRank);
    CHECK(r.selected == std::vector<std::size_t>{0});
  }

  CHECK_THROWS_AS(lexrank_st({}, TfidfBackend{}, 1, kLexRank), std::invalid_argument);
  CHECK_THROWS_AS(lexrank_st(doc, TfidfBackend{}, 0, kLexRank), std::invalid_argument);
  CHECK_THROWS_AS(lexrank_st(numbered(2), FixedBackend({{1, 0}, {INFINITY, 0}}), 1, kLexRank), EmbeddingError);
}

TEST_CASE("non-convergence is flagged, not fatal") {
  BaselineConfig c = kLexRank;
  c.max_iterations = 1;
  c.tolerance = 1e-15;
  const auto r = lexrank_st(numbered(3), FixedBackend({{1, 0}, {0, 1}, {1, 1}}), 1, c);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.selected.size() == 1);
}

TEST_CASE("tfidf_embed") {
  const auto same = tfidf_embed({"Der Hund bellt.", "Die Katze schläft.", "Der Hund bellt."});
  CHECK(cosine(same[0], same[2]) == doctest::Approx(1.0));
  const auto disjoint = tfidf_embed({"Hund bellt laut.", "Katze schläft ruhig."});
  CHECK(cosine(disjoint[0], disjoint[1]) == 0.0);
  const auto single = tfidf_embed({"Nur ein Satz hier."});
  for (double x : single[0]) CHECK(x == 0.0);
  // every vector has the same dimension; terms are stemmed ("Hunde" ~ "Hund")
  const auto stemmed = tfidf_embed({"Hunde bellen.", "Hund bellt.", "Katzen."});
  CHECK(stemmed[0].size() == stemmed[2].size());
  CHECK(cosine(stemmed[0], stemmed[1]) > 0.99);
}

TEST_CASE("file embedding backend") {
  const auto ortho = temp_file("ortho.jsonl", "{\"index\":0,\"vector\":[1,0]}\n{\"index\":1,\"vector\":[0,1]}\n");
  const auto backend = FileEmbeddingBackend::load(ortho);
  const auto v = backend.embed(numbered(2));
  CHECK(cosine(v[0], v[1]) == 0.0);

  const auto missing = temp_file("missing.jsonl", "{\"index\":0,\"vector\":[1,0]}\n{\"index\":2,\"vector\":[0,1]}\n");
  try {
    FileEmbeddingBackend::load(missing).embed(numbered(2));
    FAIL("expected EmbeddingError");
  } catch (const EmbeddingError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }

  CHECK_THROWS_AS(FileEmbeddingBackend::load(
                      temp_file("dim.jsonl", "{\"index\":0,\"vector\":[1,0]}\n{\"index\":1,\"vector\":[0,1,2]}\n")),
                  EmbeddingError);
  CHECK_THROWS_AS(FileEmbeddingBackend::load(temp_file("nan.jsonl", "{\"index\":0,\"vector\":[1e999]}\n")),
                  EmbeddingError);

  const auto equal = temp_file("equal.jsonl", "{\"index\":0,\"vector\":[1,1]}\n{\"index\":1,\"vector\":[1,1]}\n"
                                               "{\"index\":2,\"vector\":[1,1]}\n");
  const auto eq = embed_from_file(equal);
  CHECK(lexrank_st(numbered(3), *eq, 2, kLexRank).selected == std::vector<std::size_t>{0, 1});
}

TEST_CASE("run_baseline") {
  Corpus c;
  c.samples = {sample("a", "Eins. Zwei. Drei. Vier. Fünf.", "x"), sample("b", "Nur. Zwei.", "y")};
  const auto lead3 = run_baseline(c, BaselineConfig{}, TfidfBackend{});
  REQUIRE(lead3.outputs.size() == 2);
  CHECK(lead3.outputs[0].summary == "Eins. Zwei. Drei.");
  CHECK(lead3.outputs[1].summary == "Nur. Zwei.");

  BaselineConfig k2{BaselineMethod::leadk, 2};
  CHECK(run_baseline(c, k2, TfidfBackend{}).outputs[0].summary == "Eins. Zwei.");

  BaselineConfig khat{BaselineMethod::leadk, std::nullopt, 2.0};
  CHECK(run_baseline(c, khat, TfidfBackend{}).outputs[0].summary == "Eins. Zwei. Drei.");  // ceil(5/2)

  BaselineConfig lex{BaselineMethod::lexrank_st, 2};
  for (const auto& o : run_baseline(c, lex, TfidfBackend{}).outputs) {
    CHECK(split_sentences(o.summary).size() <= 2);
  }

  CHECK_THROWS_AS(run_baseline(c, BaselineConfig{BaselineMethod::leadk}, TfidfBackend{}), std::invalid_argument);

  // component errors carry the sample id
  try {
    run_baseline(c, lex, FixedBackend({{1, 0}}));
    FAIL("expected BaselineError");
  } catch (const BaselineError& e) {
    CHECK(e.sample_id() == "a");
  }
}

TEST_CASE("method names") {
  CHECK(parse_baseline_method("lexrank-st") == BaselineMethod::lexrank_st);
  CHECK(parse_baseline_method("lead3") == BaselineMethod::lead3);
  CHECK_FALSE(parse_baseline_method("oracle"));
}
