#include "core/meta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {

void check_block_inputs(const std::vector<double>& ideal_spectrum,
                        const std::vector<Spectrum>& source_spectra,
                        double alpha) {
  require(alpha >= 0.0, ErrorCode::kInvalidArgument, "alpha must be >= 0");
  require(!source_spectra.empty(), ErrorCode::kInvalidArgument, "no sources");
  std::size_t total = 0;
  for (const auto& s : source_spectra) {
    require(!s.values.empty(), ErrorCode::kInvalidArgument,
            "empty source spectrum");
    for (const double mu : s.values)
      require(mu > 0.0, ErrorCode::kZeroSingularValue,
              "zero singular value in source `" + s.origin +
                  "` makes its weight undefined");
    total += s.values.size();
  }
  require(ideal_spectrum.size() >= total, ErrorCode::kInvalidArgument,
          "ideal spectrum has " + std::to_string(ideal_spectrum.size()) +
              " values but source blocks need " + std::to_string(total));
}

std::string joined_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += '+';
    out += labels[i].empty() ? "source" + std::to_string(i + 1) : labels[i];
  }
  return out;
}

void check_concat_inputs(const std::vector<EmbeddingMatrix>& sources,
                         const ConcatWeights& weights) {
  require(!sources.empty(), ErrorCode::kInvalidArgument, "no sources");
  require(static_cast<std::size_t>(weights.source_count()) == sources.size(),
          ErrorCode::kInvalidArgument,
          "weight blocks do not match source count");
  const Eigen::Index n = sources.front().data.rows();
  for (std::size_t j = 0; j < sources.size(); ++j) {
    require(sources[j].data.rows() == n, ErrorCode::kVocabMismatch,
            "sources cover different vocabularies");
    require(static_cast<Eigen::Index>(weights.per_source[j].size()) ==
                sources[j].data.cols(),
            ErrorCode::kInvalidArgument,
            "weight vector length does not match source " +
                std::to_string(j + 1) + " width");
  }
}

}  // namespace

const char* weight_mode_name(WeightMode mode) {
  switch (mode) {
    case WeightMode::kUnweighted:
      return "uw";
    case WeightMode::kSourceWeighted:
      return "sw";
    case WeightMode::kDimensionWeighted:
      return "dw";
  }
  return "unknown";
}

WeightMode weight_mode_from_name(const std::string& name) {
  if (name == "uw") return WeightMode::kUnweighted;
  if (name == "sw") return WeightMode::kSourceWeighted;
  if (name == "dw") return WeightMode::kDimensionWeighted;
  fail(ErrorCode::kInvalidArgument,
       "unknown weight mode: " + name + " (use uw|sw|dw)");
}

std::vector<std::int32_t> ConcatWeights::offsets() const {
  std::vector<std::int32_t> theta{0};
  for (const auto& block : per_source)
    theta.push_back(theta.back() + static_cast<std::int32_t>(block.size()));
  return theta;
}

std::int32_t ConcatWeights::total_dim() const { return offsets().back(); }

ConcatWeights uniform_weights(const std::vector<std::int32_t>& dims,
                              double alpha) {
  require(!dims.empty(), ErrorCode::kInvalidArgument, "no sources");
  ConcatWeights w;
  w.mode = WeightMode::kUnweighted;
  w.alpha = alpha;
  for (const std::int32_t k : dims) {
    require(k >= 1, ErrorCode::kInvalidArgument, "source width must be >= 1");
    w.per_source.emplace_back(static_cast<std::size_t>(k), 1.0);
    w.labels.emplace_back();
  }
  return w;
}

ConcatWeights dw_weights(const std::vector<double>& ideal_spectrum,
                         const std::vector<Spectrum>& source_spectra,
                         double alpha) {
  check_block_inputs(ideal_spectrum, source_spectra, alpha);
  ConcatWeights w;
  w.mode = WeightMode::kDimensionWeighted;
  w.alpha = alpha;
  std::size_t theta = 0;
  for (const auto& s : source_spectra) {
    std::vector<double> block(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
      block[i] = std::pow(ideal_spectrum[theta + i] / s.values[i], alpha);
    theta += s.values.size();
    w.per_source.push_back(std::move(block));
    w.labels.push_back(s.origin);
  }
  return w;
}

ConcatWeights sw_weights(const std::vector<double>& ideal_spectrum,
                         const std::vector<Spectrum>& source_spectra,
                         double alpha) {
  check_block_inputs(ideal_spectrum, source_spectra, alpha);
  ConcatWeights w;
  w.mode = WeightMode::kSourceWeighted;
  w.alpha = alpha;
  std::size_t theta = 0;
  for (const auto& s : source_spectra) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double lam2a = std::pow(ideal_spectrum[theta + i], 2.0 * alpha);
      const double mu2a = std::pow(s.values[i], 2.0 * alpha);
      num += lam2a * mu2a;
      den += mu2a * mu2a;
    }
    theta += s.values.size();
    const double c = std::sqrt(num / den);
    w.per_source.emplace_back(s.values.size(), c);
    w.labels.push_back(s.origin);
  }
  return w;
}

void normalize_weights(ConcatWeights* weights) {
  require(weights != nullptr && !weights->per_source.empty(),
          ErrorCode::kInvalidArgument, "no weights to normalize");
  double sum_of_means = 0.0;
  for (const auto& block : weights->per_source)
    sum_of_means +=
        std::accumulate(block.begin(), block.end(), 0.0) / block.size();
  require(sum_of_means > 0.0, ErrorCode::kDegenerateSpectrum,
          "all weights are zero; cannot normalize");
  for (auto& block : weights->per_source)
    for (double& c : block) c /= sum_of_means;
}

EmbeddingMatrix concatenate(const std::vector<EmbeddingMatrix>& sources,
                            const ConcatWeights& weights) {
  check_concat_inputs(sources, weights);
  const Eigen::Index n = sources.front().data.rows();

  EmbeddingMatrix out;
  out.alpha = sources.front().alpha;
  out.k = weights.total_dim();
  out.data.resize(n, out.k);
  out.spectrum_used.origin = std::string(weight_mode_name(weights.mode)) +
                             "(" + joined_labels(weights.labels) + ")";
  out.label = out.spectrum_used.origin;

  Eigen::Index col = 0;
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const auto& block = weights.per_source[j];
    for (std::size_t i = 0; i < block.size(); ++i, ++col)
      out.data.col(col) =
          block[i] * sources[j].data.col(static_cast<Eigen::Index>(i));
    out.spectrum_used.values.insert(out.spectrum_used.values.end(),
                                    sources[j].spectrum_used.values.begin(),
                                    sources[j].spectrum_used.values.end());
  }
  return out;
}

EmbeddingMatrix avg_baseline(const std::vector<EmbeddingMatrix>& sources) {
  require(!sources.empty(), ErrorCode::kInvalidArgument, "no sources");
  const Eigen::Index n = sources.front().data.rows();
  Eigen::Index k_max = 0;
  for (const auto& s : sources) {
    require(s.data.rows() == n, ErrorCode::kVocabMismatch,
            "sources cover different vocabularies");
    k_max = std::max(k_max, s.data.cols());
  }

  EmbeddingMatrix out;
  out.alpha = sources.front().alpha;
  out.k = static_cast<std::int32_t>(k_max);
  out.data = Eigen::MatrixXd::Zero(n, k_max);
  for (const auto& s : sources) out.data.leftCols(s.data.cols()) += s.data;
  out.data /= static_cast<double>(sources.size());
  std::vector<std::string> labels;
  for (const auto& s : sources) labels.push_back(s.label);
  out.label = "avg(" + joined_labels(labels) + ")";
  out.spectrum_used.origin = out.label;
  return out;
}

EmbeddingMatrix svd_baseline(const std::vector<EmbeddingMatrix>& sources,
                             std::int32_t out_dim) {
  require(!sources.empty(), ErrorCode::kInvalidArgument, "no sources");
  std::vector<std::int32_t> dims;
  for (const auto& s : sources)
    dims.push_back(static_cast<std::int32_t>(s.data.cols()));
  const EmbeddingMatrix uw = concatenate(sources, uniform_weights(dims));

  const auto limit = static_cast<std::int32_t>(
      std::min(uw.data.rows(), uw.data.cols()));
  require(1 <= out_dim && out_dim <= limit, ErrorCode::kKTooLarge,
          "out_dim=" + std::to_string(out_dim) +
              " exceeds the concatenation's rank bound " +
              std::to_string(limit));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(uw.data, Eigen::ComputeThinU);
  require(svd.info() == Eigen::Success, ErrorCode::kSvdFailed,
          "thin SVD of the concatenation failed");

  EmbeddingMatrix out;
  out.alpha = 0.5;
  out.k = out_dim;
  out.data = svd.matrixU().leftCols(out_dim);
  out.spectrum_used.values.resize(static_cast<std::size_t>(out_dim));
  for (std::int32_t i = 0; i < out_dim; ++i) {
    const double s = svd.singularValues()(i);
    out.data.col(i) *= s;
    // The spectrum this factor is built on: the concatenation's PIP
    // eigenvalues s^2, exposed at alpha = 0.5 so column norms stay s.
    out.spectrum_used.values[static_cast<std::size_t>(i)] = s * s;
  }
  out.label = "svd" + std::to_string(out_dim) + "(" + uw.label + ")";
  out.spectrum_used.origin = out.label;
  return out;
}

BoundBreakdown theorem1_bound(const std::vector<double>& ideal_spectrum,
                              const Eigen::MatrixXd& ideal_basis,
                              const std::vector<MetaSource>& sources,
                              const ConcatWeights& weights, double alpha) {
  require(alpha >= 0.0, ErrorCode::kInvalidArgument, "alpha must be >= 0");
  const Eigen::Index n = ideal_basis.rows();
  require(ideal_basis.cols() == n && n >= 1, ErrorCode::kInvalidArgument,
          "ideal basis must be square orthogonal");
  const auto d = static_cast<std::int32_t>(ideal_spectrum.size());
  require(d >= 1 && d <= n, ErrorCode::kInvalidArgument,
          "ideal spectrum length must be in [1, n]");
  require(!sources.empty() &&
              sources.size() == static_cast<std::size_t>(weights.source_count()),
          ErrorCode::kInvalidArgument,
          "sources do not match weight blocks");

  const std::vector<std::int32_t> theta = weights.offsets();
  require(theta.back() <= d, ErrorCode::kInvalidArgument,
          "combined source width exceeds the ideal rank");
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const auto k_j = static_cast<Eigen::Index>(weights.per_source[j].size());
    require(sources[j].u.rows() == n && sources[j].u.cols() == k_j &&
                static_cast<Eigen::Index>(sources[j].spectrum.size()) == k_j,
            ErrorCode::kInvalidArgument,
            "source " + std::to_string(j + 1) + " shapes are inconsistent");
  }

  std::vector<double> lam2a(static_cast<std::size_t>(d));
  for (std::int32_t i = 0; i < d; ++i)
    lam2a[static_cast<std::size_t>(i)] =
        std::pow(ideal_spectrum[static_cast<std::size_t>(i)], 2.0 * alpha);

  BoundBreakdown out;

  // Bias: the ideal mass past the concatenation, summed from theta_{N+1}
  // (inclusive, as the bound is written) through d.
  double bias_sq = 0.0;
  for (std::int32_t i = theta.back(); i <= d; ++i) {
    const double v = i >= 1 && i <= d ? lam2a[static_cast<std::size_t>(i - 1)]
                                      : 0.0;
    bias_sq += v * v;
  }
  out.bias = std::sqrt(bias_sq);
  out.total = out.bias;

  for (std::size_t j = 0; j < sources.size(); ++j) {
    const auto& block = weights.per_source[j];
    const auto& mu = sources[j].spectrum;
    const auto k_j = static_cast<std::int32_t>(block.size());
    const std::int32_t off = theta[j];

    double mag_sq = 0.0;
    for (std::int32_t t = 0; t < k_j; ++t) {
      const double c = block[static_cast<std::size_t>(t)];
      const double mu2a =
          std::pow(mu[static_cast<std::size_t>(t)], 2.0 * alpha);
      const double gap =
          lam2a[static_cast<std::size_t>(off + t)] - c * c * mu2a;
      mag_sq += gap * gap;
    }
    out.magnitude_variance.push_back(std::sqrt(mag_sq));

    // Directional term: walk the block once, keeping a running sum of
    // squared overlaps between the first t source directions and the ideal
    // directions past position i = theta_j + t.
    const Eigen::MatrixXd g = sources[j].u.transpose() * ideal_basis;  // k x n
    std::vector<double> run(static_cast<std::size_t>(n) + 1, 0.0);
    double dir = 0.0;
    for (std::int32_t t = 1; t <= k_j; ++t) {
      const std::int32_t row = t - 1;
      double suffix = 0.0;
      for (Eigen::Index c = n - 1; c >= 0; --c) {
        suffix += g(row, c) * g(row, c);
        run[static_cast<std::size_t>(c)] += suffix;
      }
      const std::int32_t i = off + t;  // 1-based ideal index
      const double next =
          i < d ? lam2a[static_cast<std::size_t>(i)] : 0.0;
      const double gap = lam2a[static_cast<std::size_t>(i - 1)] - next;
      const double overlap =
          i < n ? std::sqrt(std::max(run[static_cast<std::size_t>(i)], 0.0))
                : 0.0;
      dir += gap * overlap;
    }
    out.directional_variance.push_back(std::sqrt(2.0) * dir);
    out.total += out.magnitude_variance.back() +
                 out.directional_variance.back();
  }

  // Direct loss between the assembled concatenation and the rank-d ideal.
  Eigen::MatrixXd meta(n, theta.back());
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const auto& block = weights.per_source[j];
    for (std::size_t t = 0; t < block.size(); ++t)
      meta.col(theta[j] + static_cast<Eigen::Index>(t)) =
          block[t] * std::pow(sources[j].spectrum[t], alpha) *
          sources[j].u.col(static_cast<Eigen::Index>(t));
  }
  Eigen::MatrixXd ideal = ideal_basis.leftCols(d);
  for (std::int32_t i = 0; i < d; ++i)
    ideal.col(i) *= std::pow(ideal_spectrum[static_cast<std::size_t>(i)], alpha);
  out.actual_pip_loss = pip_loss(meta, ideal);
  return out;
}

void save_weights(const ConcatWeights& weights, const std::string& path) {
  nlohmann::json j;
  j["mode"] = weight_mode_name(weights.mode);
  j["alpha"] = weights.alpha;
  j["sources"] = nlohmann::json::array();
  for (std::size_t s = 0; s < weights.per_source.size(); ++s) {
    nlohmann::json entry;
    entry["label"] = s < weights.labels.size() ? weights.labels[s] : "";
    entry["k"] = weights.per_source[s].size();
    entry["weights"] = weights.per_source[s];
    j["sources"].push_back(std::move(entry));
  }
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

ConcatWeights load_weights(const std::string& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, path + ": " + e.what());
  }
  ConcatWeights w;
  try {
    w.mode = weight_mode_from_name(j.at("mode").get<std::string>());
    w.alpha = j.at("alpha").get<double>();
    for (const auto& entry : j.at("sources")) {
      w.labels.push_back(entry.value("label", std::string{}));
      w.per_source.push_back(entry.at("weights").get<std::vector<double>>());
      require(w.per_source.back().size() == entry.at("k").get<std::size_t>(),
              ErrorCode::kParseError, path + ": k does not match weights[]");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, path + ": " + e.what());
  }
  require(!w.per_source.empty(), ErrorCode::kParseError,
          path + ": no sources");
  return w;
}

void save_bound_report(const BoundBreakdown& report, const std::string& path) {
  nlohmann::json j;
  j["bias"] = report.bias;
  j["magnitude_variance"] = report.magnitude_variance;
  j["directional_variance"] = report.directional_variance;
  j["total"] = report.total;
  j["actual_pip_loss"] = report.actual_pip_loss;
  j["holds"] = report.actual_pip_loss <= report.total + 1e-9;
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace pipconcat
