#include "core/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {

std::string ascii_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string basename_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

class RowIndex {
 public:
  explicit RowIndex(const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i)
      map_.emplace(tokens[i], static_cast<std::int64_t>(i));
  }

  // Exact match first, then the ASCII-lowercased form; -1 when absent.
  std::int64_t lookup(const std::string& word) const {
    auto it = map_.find(word);
    if (it != map_.end()) return it->second;
    it = map_.find(ascii_lower(word));
    return it == map_.end() ? -1 : it->second;
  }

 private:
  std::unordered_map<std::string, std::int64_t> map_;
};

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace

SimilarityDataset load_similarity(const std::string& path) {
  std::ifstream in = open_input(path);
  SimilarityDataset ds;
  ds.name = basename_of(path);
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line, '\t');
    require(fields.size() == 3 && !fields[0].empty() && !fields[1].empty(),
            ErrorCode::kParseError,
            path + ": expected `word1<TAB>word2<TAB>score`, got: " + line);
    double score = 0.0;
    try {
      score = std::stod(fields[2]);
    } catch (const std::exception&) {
      fail(ErrorCode::kParseError, path + ": bad score in: " + line);
    }
    require(std::isfinite(score), ErrorCode::kParseError,
            path + ": non-finite score in: " + line);
    auto key = std::minmax(fields[0], fields[1]);
    require(seen.emplace(key.first, key.second).second, ErrorCode::kParseError,
            path + ": duplicate pair " + fields[0] + "/" + fields[1]);
    ds.pairs.push_back({fields[0], fields[1], score});
  }
  return ds;
}

AnalogyDataset load_analogy(const std::string& path) {
  std::ifstream in = open_input(path);
  AnalogyDataset ds;
  ds.name = basename_of(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() >= 2 && line[0] == ':' && line[1] == ' ') {
      ds.sections.push_back(line.substr(2));
      continue;
    }
    const auto fields = split_fields(line, ' ');
    require(fields.size() == 4, ErrorCode::kParseError,
            path + ": expected `a b c d`, got: " + line);
    std::set<std::string> distinct(fields.begin(), fields.end());
    require(distinct.size() == 4 && !fields[0].empty() && !fields[1].empty() &&
                !fields[2].empty() && !fields[3].empty(),
            ErrorCode::kParseError,
            path + ": questions need four distinct non-empty tokens: " + line);
    ds.questions.push_back({fields[0], fields[1], fields[2], fields[3]});
  }
  return ds;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) /
                              2.0 + 1.0;  // mean of 1-based positions i+1..j+1
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& x,
                    const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorCode::kInvalidArgument,
          "rank inputs differ in length");
  require(x.size() >= 2, ErrorCode::kInsufficientCoverage,
          "need at least 2 observations for a rank correlation");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

EvalResult spearman_eval(const Eigen::MatrixXd& e,
                         const std::vector<std::string>& tokens,
                         const SimilarityDataset& ds) {
  require(static_cast<std::size_t>(e.rows()) == tokens.size(),
          ErrorCode::kVocabMismatch, "token list does not match rows");
  const RowIndex index(tokens);
  std::vector<double> predicted;
  std::vector<double> human;
  for (const auto& pair : ds.pairs) {
    const std::int64_t i = index.lookup(pair.w1);
    const std::int64_t j = index.lookup(pair.w2);
    if (i < 0 || j < 0) continue;
    predicted.push_back(cosine(e.row(i).transpose(), e.row(j).transpose()));
    human.push_back(pair.score);
  }
  EvalResult result;
  result.total = static_cast<std::int32_t>(ds.pairs.size());
  result.covered = static_cast<std::int32_t>(predicted.size());
  require(result.covered >= 2, ErrorCode::kInsufficientCoverage,
          "only " + std::to_string(result.covered) + " of " +
              std::to_string(result.total) +
              " pairs are covered by the vocabulary");
  result.value = spearman_rho(predicted, human);
  return result;
}

EvalResult spearman_eval(const EmbeddingMatrix& e, const Vocabulary& vocab,
                         const SimilarityDataset& ds) {
  return spearman_eval(e.data, vocab.tokens, ds);
}

EvalResult cosadd_eval(const Eigen::MatrixXd& e,
                       const std::vector<std::string>& tokens,
                       const AnalogyDataset& ds) {
  require(static_cast<std::size_t>(e.rows()) == tokens.size(),
          ErrorCode::kVocabMismatch, "token list does not match rows");
  const RowIndex index(tokens);
  EvalResult result;
  result.total = static_cast<std::int32_t>(ds.questions.size());
  std::int32_t correct = 0;
  for (const auto& q : ds.questions) {
    const std::int64_t ia = index.lookup(q.a);
    const std::int64_t ib = index.lookup(q.b);
    const std::int64_t ic = index.lookup(q.c);
    const std::int64_t id = index.lookup(q.d);
    if (ia < 0 || ib < 0 || ic < 0 || id < 0) continue;
    ++result.covered;
    const Eigen::VectorXd target =
        e.row(ib).transpose() - e.row(ia).transpose() + e.row(ic).transpose();
    std::int64_t best = -1;
    double best_cos = -2.0;
    for (std::int64_t w = 0; w < e.rows(); ++w) {
      if (w == ia || w == ib || w == ic) continue;
      if (e.row(w).norm() == 0.0) continue;
      const double cs = cosine(target, e.row(w).transpose());
      if (cs > best_cos) {
        best_cos = cs;
        best = w;
      }
    }
    if (best == id) ++correct;
  }
  require(result.covered >= 1, ErrorCode::kInsufficientCoverage,
          "no analogy question is fully covered by the vocabulary");
  result.value = static_cast<double>(correct) / result.covered;
  return result;
}

EvalResult cosadd_eval(const EmbeddingMatrix& e, const Vocabulary& vocab,
                       const AnalogyDataset& ds) {
  return cosadd_eval(e.data, vocab.tokens, ds);
}

void save_eval_result(const std::string& dataset, const std::string& metric,
                      const EvalResult& result, const std::string& path) {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["metric"] = metric;
  j["value"] = result.value;
  j["covered"] = result.covered;
  j["total"] = result.total;
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace pipconcat
