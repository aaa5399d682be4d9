#include "core/common.hpp"

#include <cmath>

namespace pipconcat {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kSplitTooSmall: return "split-too-small";
    case ErrorCode::kInvalidBeta: return "invalid-beta";
    case ErrorCode::kSvdFailed: return "svd-failed";
    case ErrorCode::kKTooLarge: return "k-too-large";
    case ErrorCode::kVocabMismatch: return "vocab-mismatch";
    case ErrorCode::kZeroSingularValue: return "zero-singular-value";
    case ErrorCode::kDegenerateSpectrum: return "degenerate-spectrum";
    case ErrorCode::kInsufficientCoverage: return "insufficient-coverage";
    case ErrorCode::kMatrixTooLarge: return "matrix-too-large";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown-error";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view domain,
                          std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a64(domain)) + index);
}

}  // namespace pipconcat
