#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "core/spectral.hpp"

namespace pipconcat {

enum class WeightMode {
  kUnweighted = 0,
  kSourceWeighted = 1,
  kDimensionWeighted = 2,
};

const char* weight_mode_name(WeightMode mode);
WeightMode weight_mode_from_name(const std::string& name);

struct ConcatWeights {
  WeightMode mode = WeightMode::kUnweighted;
  double alpha = 0.5;
  std::vector<std::vector<double>> per_source;  // c_{j,1}..c_{j,k_j}
  std::vector<std::string> labels;              // one per source

  std::int32_t source_count() const {
    return static_cast<std::int32_t>(per_source.size());
  }
  // theta_1 = 0, theta_{j+1} = theta_j + k_j; last entry is the total dim.
  std::vector<std::int32_t> offsets() const;
  std::int32_t total_dim() const;
};

ConcatWeights uniform_weights(const std::vector<std::int32_t>& dims,
                              double alpha = 0.5);

// c_{j,i} = (lambda_{theta_j + i} / mu^{(j)}_i)^alpha — zeroes each
// magnitude-variance term of the loss bound.
ConcatWeights dw_weights(const std::vector<double>& ideal_spectrum,
                         const std::vector<Spectrum>& source_spectra,
                         double alpha);

// One scalar per source: c_j = sqrt(sum_i lambda^{2a} mu^{2a} / sum_i
// mu^{4a}), the least-squares optimum under equal weights within a source.
ConcatWeights sw_weights(const std::vector<double>& ideal_spectrum,
                         const std::vector<Spectrum>& source_spectra,
                         double alpha);

// Rescales all weights by one global factor so the per-source mean weights
// sum to 1 (the simplex constraint stated alongside the closed forms, which
// the unnormalized optima do not satisfy).
void normalize_weights(ConcatWeights* weights);

// Row-wise concatenation of sources with columns scaled by their weights.
// The result's spectrum_used holds the concatenated source spectra (the
// per-column norm invariant of factory embeddings only survives unit
// weights).
EmbeddingMatrix concatenate(const std::vector<EmbeddingMatrix>& sources,
                            const ConcatWeights& weights);

// Zero-pad every source to the widest k and average elementwise.
EmbeddingMatrix avg_baseline(const std::vector<EmbeddingMatrix>& sources);

inline constexpr std::int32_t kDefaultSvdDim = 200;

// Rank-out_dim factor of the unweighted concatenation: U_{1:out} *
// diag(s_{1:out}) from its thin SVD, i.e. alpha = 0.5 on the concatenation's
// squared singular values (its PIP spectrum).
EmbeddingMatrix svd_baseline(const std::vector<EmbeddingMatrix>& sources,
                             std::int32_t out_dim = kDefaultSvdDim);

struct MetaSource {
  Eigen::MatrixXd u;             // n x k_j, orthonormal columns
  std::vector<double> spectrum;  // mu^{(j)}_1..mu^{(j)}_{k_j}
  std::string label;
};

struct BoundBreakdown {
  double bias = 0.0;
  std::vector<double> magnitude_variance;   // per source
  std::vector<double> directional_variance; // per source
  double total = 0.0;
  double actual_pip_loss = 0.0;
};

// Numerical evaluation of the bias / magnitude-variance / directional-
// variance upper bound on the PIP loss between the weighted concatenation
// and the rank-d ideal embedding, together with the directly computed loss.
//   bias        = sqrt(sum_{i=theta_{N+1}}^{d} lambda_i^{4a})
//   magnitude_j = sqrt(sum over block (lambda_i^{2a} - c^2 mu^{2a})^2)
//   dir_j       = sqrt(2) * sum over block (lambda_i^{2a} - lambda_{i+1}^{2a})
//                 * || U_j[:, 1:i-theta_j]^T U[:, i+1:n] ||_F
// with lambda_{d+1} = 0 and 1-based index i running over source j's block.
BoundBreakdown theorem1_bound(const std::vector<double>& ideal_spectrum,
                              const Eigen::MatrixXd& ideal_basis,
                              const std::vector<MetaSource>& sources,
                              const ConcatWeights& weights, double alpha);

// JSON {mode, alpha, sources: [{label, k, weights[]}]}.
void save_weights(const ConcatWeights& weights, const std::string& path);
ConcatWeights load_weights(const std::string& path);

// JSON mirror of BoundBreakdown.
void save_bound_report(const BoundBreakdown& report, const std::string& path);

}  // namespace pipconcat
