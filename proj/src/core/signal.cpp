#include "core/signal.hpp"

#include <cmath>
#include <cstring>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {
constexpr char kMagic[7] = {'P', 'I', 'P', 'S', 'I', 'G', '1'};
}

const char* signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::kLogCooc:
      return "logcooc";
    case SignalKind::kSpmi:
      return "spmi";
    case SignalKind::kPpmi:
      return "ppmi";
    case SignalKind::kSynthetic:
      return "synthetic";
  }
  return "unknown";
}

SignalKind signal_kind_from_name(const std::string& name) {
  if (name == "logcooc") return SignalKind::kLogCooc;
  if (name == "spmi") return SignalKind::kSpmi;
  if (name == "ppmi") return SignalKind::kPpmi;
  if (name == "synthetic") return SignalKind::kSynthetic;
  fail(ErrorCode::kInvalidArgument,
       "unknown signal kind: " + name + " (use logcooc|spmi|ppmi)");
}

double pmi(const CooccurrenceCounts& counts, std::int32_t i, std::int32_t j) {
  require(0 <= i && i < counts.n && 0 <= j && j < counts.n,
          ErrorCode::kInvalidArgument, "pmi index out of range");
  const std::uint64_t x = counts.get(i, j);
  if (x == 0) return 0.0;
  const double num = static_cast<double>(x) * static_cast<double>(counts.total);
  const double den =
      static_cast<double>(counts.row_marginals[static_cast<std::size_t>(i)]) *
      static_cast<double>(counts.row_marginals[static_cast<std::size_t>(j)]);
  return std::log(num / den);
}

SignalMatrix build_signal(const CooccurrenceCounts& counts, SignalKind kind,
                          double beta, bool allow_large, std::int32_t cap) {
  require(counts.n >= 1, ErrorCode::kInvalidArgument, "counts are empty");
  require(kind != SignalKind::kSynthetic, ErrorCode::kInvalidArgument,
          "synthetic signals are not built from counts");
  if (kind == SignalKind::kSpmi)
    require(beta > 0.0, ErrorCode::kInvalidBeta, "beta must be > 0");
  require(allow_large || counts.n <= cap, ErrorCode::kMatrixTooLarge,
          "vocabulary of " + std::to_string(counts.n) +
              " exceeds dense cap " + std::to_string(cap));

  SignalMatrix signal;
  signal.n = counts.n;
  signal.kind = kind;
  signal.beta = kind == SignalKind::kSpmi ? beta : 0.0;
  signal.source_label = signal_kind_name(kind);
  signal.data = Eigen::MatrixXd::Zero(counts.n, counts.n);

  const double log_beta = kind == SignalKind::kSpmi ? std::log(beta) : 0.0;
  for (const auto& [key, c] : counts.entries) {
    if (c == 0) continue;
    const auto i = static_cast<std::int32_t>(key >> 32);
    const auto j = static_cast<std::int32_t>(key & 0xFFFFFFFFull);
    double value = 0.0;
    switch (kind) {
      case SignalKind::kLogCooc:
        value = std::log(static_cast<double>(c));
        break;
      case SignalKind::kSpmi:
        value = pmi(counts, i, j) - log_beta;
        break;
      case SignalKind::kPpmi:
        value = std::max(pmi(counts, i, j), 0.0);
        break;
      case SignalKind::kSynthetic:
        break;  // excluded above
    }
    signal.data(i, j) = value;
    signal.data(j, i) = value;
  }
  return signal;
}

SignalMatrix synthetic_signal(const Eigen::MatrixXd& m,
                              const std::string& label) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorCode::kInvalidArgument,
          "synthetic signal must be square and nonempty");
  SignalMatrix signal;
  signal.n = static_cast<std::int32_t>(m.rows());
  signal.kind = SignalKind::kSynthetic;
  signal.source_label = label;
  signal.data = (m + m.transpose()) / 2.0;  // enforce exact symmetry
  return signal;
}

void save_signal(const SignalMatrix& signal, const std::string& path) {
  require(signal.n >= 1 && signal.data.rows() == signal.n &&
              signal.data.cols() == signal.n,
          ErrorCode::kInvalidArgument, "malformed signal matrix");
  std::ofstream out = open_output_binary(path);
  out.write(kMagic, sizeof(kMagic));
  put_u64_le(out, static_cast<std::uint64_t>(signal.n));
  const char tag = static_cast<char>(signal.kind);
  out.write(&tag, 1);
  if (signal.kind == SignalKind::kSpmi) put_f64_le(out, signal.beta);
  for (std::int32_t i = 0; i < signal.n; ++i)
    for (std::int32_t j = i; j < signal.n; ++j)
      put_f64_le(out, signal.data(i, j));
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

SignalMatrix load_signal(const std::string& path) {
  std::ifstream in = open_input_binary(path);
  char magic[sizeof(kMagic)] = {};
  in.read(magic, sizeof(magic));
  require(in.gcount() == sizeof(magic) &&
              std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
          ErrorCode::kParseError, path + ": not a signal matrix dump");

  const std::uint64_t n64 = get_u64_le(in, path);
  require(n64 >= 1 && n64 <= (1ull << 20), ErrorCode::kParseError,
          path + ": implausible dimension");
  const auto n = static_cast<std::int32_t>(n64);

  char tag = 0;
  in.read(&tag, 1);
  require(in.gcount() == 1 && tag >= 0 && tag <= 3, ErrorCode::kParseError,
          path + ": bad kind tag");
  SignalMatrix signal;
  signal.n = n;
  signal.kind = static_cast<SignalKind>(tag);
  signal.source_label = signal_kind_name(signal.kind);
  if (signal.kind == SignalKind::kSpmi) {
    signal.beta = get_f64_le(in, path);
    require(signal.beta > 0.0, ErrorCode::kParseError, path + ": bad beta");
  }

  signal.data.resize(n, n);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = i; j < n; ++j) {
      const double v = get_f64_le(in, path);
      require(std::isfinite(v), ErrorCode::kParseError,
              path + ": non-finite entry");
      signal.data(i, j) = v;
      signal.data(j, i) = v;
    }
  return signal;
}

}  // namespace pipconcat
