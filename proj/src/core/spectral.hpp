#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "core/signal.hpp"

namespace pipconcat {

struct Spectrum {
  std::vector<double> values;  // nonincreasing, >= 0
  std::string origin;
};

struct Factorization {
  Eigen::MatrixXd u;  // n x k_max, orthonormal columns
  Spectrum spectrum;  // k_max singular values
};

struct EmbeddingMatrix {
  Eigen::MatrixXd data;  // n x k, column i has norm spectrum_used[i]^alpha
  double alpha = 0.5;
  std::int32_t k = 0;
  Spectrum spectrum_used;  // length k
  std::string label;
};

struct PipMatrix {
  Eigen::MatrixXd data;  // symmetric PSD
};

// Top-k_max singular triplets of a symmetric matrix: singular values are
// absolute eigenvalues sorted descending, vectors sign-flipped so each
// column's largest-magnitude entry is positive.
Factorization factorize(const Eigen::MatrixXd& sym, std::int32_t k_max,
                        const std::string& origin);
Factorization factorize(const SignalMatrix& m, std::int32_t k_max);

// E = U[:, 1:k] * diag(sigma_{1:k})^alpha.
EmbeddingMatrix embed_from(const Factorization& f, double alpha,
                           std::int32_t k);
EmbeddingMatrix embed(const SignalMatrix& m, double alpha, std::int32_t k);

PipMatrix pip_matrix(const EmbeddingMatrix& e);

// || E1 E1^T - E2 E2^T ||_F; column counts may differ.
double pip_loss(const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2);
double pip_loss(const EmbeddingMatrix& e1, const EmbeddingMatrix& e2);

// Thin-SVD basis of a seeded Gaussian matrix: n x k with orthonormal columns.
Eigen::MatrixXd random_orthonormal(std::int32_t n, std::int32_t k,
                                   std::uint64_t seed);

// | ||X0 X0^T - Y0 Y0^T||_F - sqrt(2) ||X0^T Y1||_F | where Y = [Y0 | Y1]
// splits after X0's column count. Exact identity for orthonormal inputs, so
// the residual measures numerical error only.
double lemma1_residual(const Eigen::MatrixXd& x0, const Eigen::MatrixXd& y);

struct LoadedEmbedding {
  std::vector<std::string> tokens;
  Eigen::MatrixXd data;
};

// word2vec text format: header `n k`, then `token v1 ... vk` per row with
// 17-significant-digit values.
void save_embedding_text(const Eigen::MatrixXd& e,
                         const std::vector<std::string>& tokens,
                         const std::string& path);
void save_embedding_text(const EmbeddingMatrix& e,
                         const std::vector<std::string>& tokens,
                         const std::string& path);
LoadedEmbedding load_embedding_text(const std::string& path);

}  // namespace pipconcat
