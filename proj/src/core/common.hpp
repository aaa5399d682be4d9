// Shared error model, deterministic RNG, and seed derivation.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pipconcat {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyCorpus,
  kSplitTooSmall,
  kInvalidBeta,
  kSvdFailed,
  kKTooLarge,
  kVocabMismatch,
  kZeroSingularValue,
  kDegenerateSpectrum,
  kInsufficientCoverage,
  kMatrixTooLarge,
  kFileNotFound,
  kParseError,
  kIoError,
};

// Stable identifier used in diagnostics ("empty-corpus", "svd-failed", ...).
const char* code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

inline void require(bool ok, ErrorCode code, const std::string& detail) {
  if (!ok) fail(code, detail);
}

// Derives an independent stream seed from a master seed, a subsystem tag, and
// an index. Scheme: splitmix64(splitmix64(seed xor fnv1a64(domain)) + index).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view domain,
                          std::uint64_t index = 0);

// Deterministic random source. mt19937_64 has a standardized sequence and the
// transforms below are plain arithmetic, so draws are reproducible across
// standard libraries (std::*_distribution would not be).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Plain modulo: deterministic, and the bias for
  // n << 2^64 is far below anything these Monte-Carlo uses can resolve.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  // Standard normal via Box-Muller on open-interval uniforms.
  double gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pipconcat
