#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/spectral.hpp"

namespace pipconcat {

struct SimilarityPair {
  std::string w1;
  std::string w2;
  double score = 0.0;
};

struct SimilarityDataset {
  std::vector<SimilarityPair> pairs;
  std::string name;
};

struct AnalogyQuestion {
  std::string a;
  std::string b;
  std::string c;
  std::string d;
};

struct AnalogyDataset {
  std::vector<AnalogyQuestion> questions;
  std::vector<std::string> sections;
  std::string name;
};

// TSV `word1<TAB>word2<TAB>score`; lines starting with '#' are comments.
// Duplicate unordered pairs and non-finite scores are rejected.
SimilarityDataset load_similarity(const std::string& path);

// Google analogy format: `a b c d` lines, section headers starting `: `.
// Each question must hold four distinct non-empty tokens.
AnalogyDataset load_analogy(const std::string& path);

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values);

// Spearman correlation: Pearson on average ranks. Returns 0 when either
// input has no rank variance (no monotone association measurable).
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

struct EvalResult {
  double value = 0.0;
  std::int32_t covered = 0;
  std::int32_t total = 0;
};

// Spearman correlation between cosine similarities and human scores over
// pairs whose words are both in the row index (exact match first, then
// ASCII-lowercased). Needs >= 2 covered pairs.
EvalResult spearman_eval(const Eigen::MatrixXd& e,
                         const std::vector<std::string>& tokens,
                         const SimilarityDataset& ds);
EvalResult spearman_eval(const EmbeddingMatrix& e, const Vocabulary& vocab,
                         const SimilarityDataset& ds);

// CosAdd accuracy: predict argmax_{w not in {a,b,c}} cos(b - a + c, w) over
// fully covered questions; a prediction counts when it is exactly d's row.
// Needs >= 1 covered question.
EvalResult cosadd_eval(const Eigen::MatrixXd& e,
                       const std::vector<std::string>& tokens,
                       const AnalogyDataset& ds);
EvalResult cosadd_eval(const EmbeddingMatrix& e, const Vocabulary& vocab,
                       const AnalogyDataset& ds);

// JSON {dataset, metric, value, covered, total}.
void save_eval_result(const std::string& dataset, const std::string& metric,
                      const EvalResult& result, const std::string& path);

}  // namespace pipconcat
