#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "core/corpus.hpp"

namespace pipconcat {

enum class SignalKind : std::uint8_t {
  kLogCooc = 0,
  kSpmi = 1,
  kPpmi = 2,
  kSynthetic = 3,  // externally constructed matrix (tests, simulations)
};

const char* signal_kind_name(SignalKind kind);
SignalKind signal_kind_from_name(const std::string& name);

struct SignalMatrix {
  std::int32_t n = 0;
  Eigen::MatrixXd data;  // dense symmetric n x n
  SignalKind kind = SignalKind::kSynthetic;
  double beta = 0.0;  // meaningful only for kSpmi
  std::string source_label;
};

// log(X_ij * total / (row_i * row_j)) for observed pairs, 0 when X_ij = 0.
double pmi(const CooccurrenceCounts& counts, std::int32_t i, std::int32_t j);

inline constexpr std::int32_t kDefaultSignalCap = 8192;

// Builds a dense symmetric signal matrix. Unobserved cells are 0 in every
// kind. `beta` is consulted only for kSpmi (must be > 0). Matrices larger
// than `cap` are refused unless allow_large is set.
SignalMatrix build_signal(const CooccurrenceCounts& counts, SignalKind kind,
                          double beta = 3.0, bool allow_large = false,
                          std::int32_t cap = kDefaultSignalCap);

// Wraps an externally built symmetric matrix as a kSynthetic signal.
SignalMatrix synthetic_signal(const Eigen::MatrixXd& m,
                              const std::string& label);

// Binary dump: "PIPSIG1", n (u64 LE), kind tag byte, beta (f64 LE, SPMI
// only), then the n(n+1)/2 upper-triangular values row-major as f64 LE.
void save_signal(const SignalMatrix& signal, const std::string& path);
SignalMatrix load_signal(const std::string& path);

}  // namespace pipconcat
