#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/signal.hpp"
#include "core/spectral.hpp"

namespace pipconcat {

struct IdealEstimate {
  double sigma = 0.0;                 // per-entry noise std
  std::int32_t n = 0;                 // vocab size
  std::int32_t rank = 0;              // survivors after thresholding
  std::vector<double> raw_spectrum;   // pre-threshold, nonincreasing
  std::vector<double> ideal_spectrum; // max(raw - 2*sigma*sqrt(n), 0), > 0 only
  std::string origin;
};

// (1/(2n)) * ||M1 - M2||_F from signal matrices built on the two corpus
// halves; inputs must share n and kind.
double estimate_noise(const SignalMatrix& m1, const SignalMatrix& m2);

IdealEstimate threshold_spectrum(const Spectrum& raw, double sigma,
                                 std::int32_t n);

// Q * diag(ideal_spectrum) * Q^T with Q = random_orthonormal(n, rank, seed):
// a synthetic matrix whose spectrum equals the estimate exactly.
SignalMatrix reconstruct_ideal(const IdealEstimate& estimate,
                               std::uint64_t seed);

// Symmetric Gaussian noise (G + G^T)/sqrt(2) with per-entry std sigma on
// off-diagonals.
Eigen::MatrixXd symmetric_noise(std::int32_t n, double sigma,
                                std::uint64_t seed);

struct CurvePoint {
  std::int32_t k = 0;
  double mean_loss = 0.0;
};

// Monte-Carlo estimate of || f(M) f(M)^T - f_k(M+Z) f_k(M+Z)^T ||_F averaged
// over `trials` synthetic (ideal, noise) draws, for every k in k_grid.
std::vector<CurvePoint> pip_loss_curve(const IdealEstimate& estimate,
                                       double alpha,
                                       const std::vector<std::int32_t>& k_grid,
                                       std::int32_t trials,
                                       std::uint64_t seed);

// Grid 1..rank capped at `cap` points with stride max(1, rank/cap).
std::vector<std::int32_t> default_k_grid(std::int32_t rank,
                                         std::int32_t cap = 2000);

// argmin over k in 1..rank of the Monte-Carlo curve; ties pick the smaller k.
std::int32_t select_dimension(const IdealEstimate& estimate, double alpha,
                              std::int32_t trials, std::uint64_t seed);

void save_estimate(const IdealEstimate& estimate, const std::string& path);
IdealEstimate load_estimate(const std::string& path);

// CSV `k,mean_pip_loss` with header.
void save_curve(const std::vector<CurvePoint>& curve, const std::string& path);

}  // namespace pipconcat
