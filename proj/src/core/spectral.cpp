#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {

// Deterministic sign: make the largest-magnitude entry of each column
// positive (first such entry on exact magnitude ties).
void fix_column_signs(Eigen::MatrixXd* u) {
  for (Eigen::Index c = 0; c < u->cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < u->rows(); ++r) {
      const double mag = std::abs((*u)(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if ((*u)(arg, c) < 0.0) u->col(c) = -u->col(c);
  }
}

}  // namespace

Factorization factorize(const Eigen::MatrixXd& sym, std::int32_t k_max,
                        const std::string& origin) {
  const auto n = static_cast<std::int32_t>(sym.rows());
  require(sym.rows() == sym.cols() && n >= 1, ErrorCode::kInvalidArgument,
          "factorize needs a square matrix");
  require(1 <= k_max && k_max <= n, ErrorCode::kInvalidArgument,
          "k_max must be in [1, n]");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  require(solver.info() == Eigen::Success, ErrorCode::kSvdFailed,
          "eigendecomposition did not converge for " + origin + " (n=" +
              std::to_string(n) + ")");

  // Reorder by |eigenvalue| descending (ties keep the solver's ascending
  // eigenvalue order) — the SVD of a symmetric matrix.
  const Eigen::VectorXd& evals = solver.eigenvalues();
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int32_t a, std::int32_t b) {
                     return std::abs(evals(a)) > std::abs(evals(b));
                   });

  Factorization f;
  f.spectrum.origin = origin;
  f.spectrum.values.resize(static_cast<std::size_t>(k_max));
  f.u.resize(n, k_max);
  for (std::int32_t i = 0; i < k_max; ++i) {
    f.spectrum.values[static_cast<std::size_t>(i)] =
        std::abs(evals(order[static_cast<std::size_t>(i)]));
    f.u.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  fix_column_signs(&f.u);
  return f;
}

Factorization factorize(const SignalMatrix& m, std::int32_t k_max) {
  return factorize(m.data, k_max, m.source_label);
}

EmbeddingMatrix embed_from(const Factorization& f, double alpha,
                           std::int32_t k) {
  require(alpha >= 0.0, ErrorCode::kInvalidArgument, "alpha must be >= 0");
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be >= 1");
  require(static_cast<std::size_t>(k) <= f.spectrum.values.size(),
          ErrorCode::kKTooLarge,
          "k=" + std::to_string(k) + " exceeds available spectrum of " +
              std::to_string(f.spectrum.values.size()));

  EmbeddingMatrix e;
  e.alpha = alpha;
  e.k = k;
  e.label = f.spectrum.origin;
  e.spectrum_used.origin = f.spectrum.origin;
  e.spectrum_used.values.assign(f.spectrum.values.begin(),
                                f.spectrum.values.begin() + k);
  e.data = f.u.leftCols(k);
  for (std::int32_t i = 0; i < k; ++i)
    e.data.col(i) *=
        std::pow(e.spectrum_used.values[static_cast<std::size_t>(i)], alpha);
  return e;
}

EmbeddingMatrix embed(const SignalMatrix& m, double alpha, std::int32_t k) {
  require(k <= m.n, ErrorCode::kKTooLarge,
          "k=" + std::to_string(k) + " exceeds matrix dimension " +
              std::to_string(m.n));
  return embed_from(factorize(m, m.n), alpha, k);
}

PipMatrix pip_matrix(const EmbeddingMatrix& e) {
  PipMatrix p;
  p.data.noalias() = e.data * e.data.transpose();
  return p;
}

double pip_loss(const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2) {
  require(e1.rows() == e2.rows(), ErrorCode::kVocabMismatch,
          "embeddings cover different vocabularies (" +
              std::to_string(e1.rows()) + " vs " + std::to_string(e2.rows()) +
              " rows)");
  Eigen::MatrixXd diff = e1 * e1.transpose();
  diff.noalias() -= e2 * e2.transpose();
  return diff.norm();
}

double pip_loss(const EmbeddingMatrix& e1, const EmbeddingMatrix& e2) {
  return pip_loss(e1.data, e2.data);
}

Eigen::MatrixXd random_orthonormal(std::int32_t n, std::int32_t k,
                                   std::uint64_t seed) {
  require(1 <= k && k <= n, ErrorCode::kInvalidArgument,
          "need 1 <= k <= n for an orthonormal basis");
  Rng rng(seed);
  Eigen::MatrixXd g(n, k);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < k; ++j) g(i, j) = rng.gauss();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU);
  require(svd.info() == Eigen::Success, ErrorCode::kSvdFailed,
          "thin SVD failed for random basis");
  Eigen::MatrixXd q = svd.matrixU();
  fix_column_signs(&q);
  return q;
}

double lemma1_residual(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& y) {
  const Eigen::Index n = y.rows();
  const Eigen::Index k = x0.cols();
  require(y.cols() == n && x0.rows() == n && k >= 1 && k <= n,
          ErrorCode::kInvalidArgument,
          "need X0 as n x k and Y as n x n with k <= n");
  const Eigen::MatrixXd y0 = y.leftCols(k);
  const double lhs =
      (x0 * x0.transpose() - y0 * y0.transpose()).norm();
  const double rhs =
      k == n ? 0.0
             : std::sqrt(2.0) * (x0.transpose() * y.rightCols(n - k)).norm();
  return std::abs(lhs - rhs);
}

void save_embedding_text(const Eigen::MatrixXd& e,
                         const std::vector<std::string>& tokens,
                         const std::string& path) {
  require(static_cast<Eigen::Index>(tokens.size()) == e.rows(),
          ErrorCode::kVocabMismatch,
          "token list does not match embedding rows");
  std::ofstream out = open_output(path);
  out << e.rows() << ' ' << e.cols() << '\n';
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    out << tokens[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      out << ' ' << format_g17(e(i, j));
    out << '\n';
  }
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

void save_embedding_text(const EmbeddingMatrix& e,
                         const std::vector<std::string>& tokens,
                         const std::string& path) {
  save_embedding_text(e.data, tokens, path);
}

LoadedEmbedding load_embedding_text(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParseError,
          path + ": missing header");
  const auto header = split_fields(line, ' ');
  require(header.size() == 2, ErrorCode::kParseError,
          path + ": header must be `n k`");
  std::int64_t n = 0, k = 0;
  try {
    n = std::stoll(header[0]);
    k = std::stoll(header[1]);
  } catch (const std::exception&) {
    fail(ErrorCode::kParseError, path + ": bad header: " + line);
  }
  require(n >= 1 && k >= 1, ErrorCode::kParseError,
          path + ": dimensions must be positive");

  LoadedEmbedding loaded;
  loaded.tokens.reserve(static_cast<std::size_t>(n));
  loaded.data.resize(n, k);
  for (std::int64_t i = 0; i < n; ++i) {
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParseError,
            path + ": expected " + std::to_string(n) + " rows, got " +
                std::to_string(i));
    const auto fields = split_fields(line, ' ');
    require(static_cast<std::int64_t>(fields.size()) == k + 1,
            ErrorCode::kParseError,
            path + ": row " + std::to_string(i) + " has " +
                std::to_string(fields.size() - 1) + " values, expected " +
                std::to_string(k));
    loaded.tokens.push_back(fields[0]);
    for (std::int64_t j = 0; j < k; ++j) {
      try {
        loaded.data(i, j) = std::stod(fields[static_cast<std::size_t>(j + 1)]);
      } catch (const std::exception&) {
        fail(ErrorCode::kParseError,
             path + ": bad value in row " + std::to_string(i));
      }
      require(std::isfinite(loaded.data(i, j)), ErrorCode::kParseError,
              path + ": non-finite value in row " + std::to_string(i));
    }
  }
  return loaded;
}

}  // namespace pipconcat
