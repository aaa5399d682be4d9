#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {

void check_estimate(const IdealEstimate& e) {
  require(e.rank >= 1, ErrorCode::kDegenerateSpectrum,
          "estimated rank is 0 — every singular value fell below the noise "
          "threshold");
  require(static_cast<std::size_t>(e.rank) == e.ideal_spectrum.size() &&
              e.n >= e.rank,
          ErrorCode::kInvalidArgument, "malformed ideal estimate");
}

}  // namespace

double estimate_noise(const SignalMatrix& m1, const SignalMatrix& m2) {
  require(m1.n == m2.n, ErrorCode::kVocabMismatch,
          "halves have different dimensions (" + std::to_string(m1.n) +
              " vs " + std::to_string(m2.n) + ")");
  require(m1.kind == m2.kind, ErrorCode::kInvalidArgument,
          "halves have different signal kinds");
  return (m1.data - m2.data).norm() / (2.0 * static_cast<double>(m1.n));
}

IdealEstimate threshold_spectrum(const Spectrum& raw, double sigma,
                                 std::int32_t n) {
  require(sigma >= 0.0, ErrorCode::kInvalidArgument, "sigma must be >= 0");
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be >= 1");
  IdealEstimate est;
  est.sigma = sigma;
  est.n = n;
  est.raw_spectrum = raw.values;
  est.origin = raw.origin;
  const double cut = 2.0 * sigma * std::sqrt(static_cast<double>(n));
  for (const double v : raw.values) {
    const double kept = std::max(v - cut, 0.0);
    if (kept <= 0.0) break;  // nonincreasing input: survivors are a prefix
    est.ideal_spectrum.push_back(kept);
  }
  est.rank = static_cast<std::int32_t>(est.ideal_spectrum.size());
  return est;
}

SignalMatrix reconstruct_ideal(const IdealEstimate& estimate,
                               std::uint64_t seed) {
  check_estimate(estimate);
  const Eigen::MatrixXd q =
      random_orthonormal(estimate.n, estimate.rank, seed);
  Eigen::MatrixXd m = q;
  for (std::int32_t i = 0; i < estimate.rank; ++i)
    m.col(i) *= estimate.ideal_spectrum[static_cast<std::size_t>(i)];
  Eigen::MatrixXd full;
  full.noalias() = m * q.transpose();
  return synthetic_signal(full, "ideal(" + estimate.origin + ")");
}

Eigen::MatrixXd symmetric_noise(std::int32_t n, double sigma,
                                std::uint64_t seed) {
  require(n >= 1 && sigma >= 0.0, ErrorCode::kInvalidArgument,
          "need n >= 1 and sigma >= 0");
  Rng rng(seed);
  Eigen::MatrixXd g(n, n);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < n; ++j) g(i, j) = sigma * rng.gauss();
  return (g + g.transpose()) / std::sqrt(2.0);
}

std::vector<CurvePoint> pip_loss_curve(const IdealEstimate& estimate,
                                       double alpha,
                                       const std::vector<std::int32_t>& k_grid,
                                       std::int32_t trials,
                                       std::uint64_t seed) {
  check_estimate(estimate);
  require(alpha >= 0.0, ErrorCode::kInvalidArgument, "alpha must be >= 0");
  require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  require(!k_grid.empty(), ErrorCode::kInvalidArgument, "empty k grid");
  for (const std::int32_t k : k_grid)
    require(1 <= k && k <= estimate.rank, ErrorCode::kKTooLarge,
            "grid point k=" + std::to_string(k) +
                " outside 1..=" + std::to_string(estimate.rank));

  const std::int32_t n = estimate.n;
  const std::int32_t d = estimate.rank;

  // || f(M) f(M)^T ||_F^2 = sum_i lambda_i^{4a}; constant across trials.
  double ideal_energy = 0.0;
  std::vector<double> lam2a(static_cast<std::size_t>(d));
  for (std::int32_t i = 0; i < d; ++i) {
    const double l2a =
        std::pow(estimate.ideal_spectrum[static_cast<std::size_t>(i)],
                 2.0 * alpha);
    lam2a[static_cast<std::size_t>(i)] = l2a;
    ideal_energy += l2a * l2a;
  }

  std::vector<CurvePoint> curve(k_grid.size());
  for (std::size_t g = 0; g < k_grid.size(); ++g) curve[g].k = k_grid[g];

  for (std::int32_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, "pip-curve-trial",
                                         static_cast<std::uint64_t>(t));
    const Eigen::MatrixXd q =
        random_orthonormal(n, d, derive_seed(ts, "ideal", 0));
    Eigen::MatrixXd noisy =
        symmetric_noise(n, estimate.sigma, derive_seed(ts, "noise", 0));
    {
      Eigen::MatrixXd scaled = q;
      for (std::int32_t i = 0; i < d; ++i)
        scaled.col(i) *= estimate.ideal_spectrum[static_cast<std::size_t>(i)];
      noisy.noalias() += scaled * q.transpose();
    }
    const Factorization f = factorize(noisy, n, "curve-trial");

    // For each noisy direction u_j: its PIP overlap with the ideal
    // embedding, a_j = || diag(lambda^a) Q^T u_j ||^2. The squared loss at
    // cutoff k is then
    //   sum_i lambda_i^{4a} + sum_{j<=k} (s_j^{4a} - 2 s_j^{2a} a_j),
    // which matches the direct Frobenius computation exactly.
    const Eigen::MatrixXd overlap = q.transpose() * f.u;  // d x n
    const std::int32_t k_top = *std::max_element(k_grid.begin(), k_grid.end());
    std::vector<double> prefix(static_cast<std::size_t>(k_top) + 1, 0.0);
    for (std::int32_t j = 0; j < k_top; ++j) {
      double a_j = 0.0;
      for (std::int32_t i = 0; i < d; ++i) {
        const double w = lam2a[static_cast<std::size_t>(i)] *
                         overlap(i, j) * overlap(i, j);
        a_j += w;
      }
      const double s2a =
          std::pow(f.spectrum.values[static_cast<std::size_t>(j)], 2.0 * alpha);
      prefix[static_cast<std::size_t>(j) + 1] =
          prefix[static_cast<std::size_t>(j)] + s2a * s2a - 2.0 * s2a * a_j;
    }
    for (std::size_t g = 0; g < k_grid.size(); ++g) {
      const double sq =
          ideal_energy + prefix[static_cast<std::size_t>(k_grid[g])];
      curve[g].mean_loss += std::sqrt(std::max(sq, 0.0));
    }
  }
  for (auto& point : curve) point.mean_loss /= trials;
  return curve;
}

std::vector<std::int32_t> default_k_grid(std::int32_t rank, std::int32_t cap) {
  require(rank >= 1 && cap >= 1, ErrorCode::kInvalidArgument,
          "need rank >= 1 and cap >= 1");
  const std::int32_t stride = std::max(1, rank / cap);
  std::vector<std::int32_t> grid;
  for (std::int32_t k = 1; k <= rank; k += stride) grid.push_back(k);
  if (grid.back() != rank) grid.push_back(rank);
  return grid;
}

std::int32_t select_dimension(const IdealEstimate& estimate, double alpha,
                              std::int32_t trials, std::uint64_t seed) {
  check_estimate(estimate);
  std::vector<std::int32_t> grid(static_cast<std::size_t>(estimate.rank));
  for (std::int32_t k = 1; k <= estimate.rank; ++k)
    grid[static_cast<std::size_t>(k) - 1] = k;
  const auto curve = pip_loss_curve(estimate, alpha, grid, trials, seed);
  std::int32_t best_k = curve.front().k;
  double best = curve.front().mean_loss;
  for (const auto& point : curve)
    if (point.mean_loss < best) {
      best = point.mean_loss;
      best_k = point.k;
    }
  return best_k;
}

void save_estimate(const IdealEstimate& estimate, const std::string& path) {
  nlohmann::json j;
  j["sigma"] = estimate.sigma;
  j["n"] = estimate.n;
  j["rank"] = estimate.rank;
  j["raw_spectrum"] = estimate.raw_spectrum;
  j["ideal_spectrum"] = estimate.ideal_spectrum;
  j["origin"] = estimate.origin;
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

IdealEstimate load_estimate(const std::string& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, path + ": " + e.what());
  }
  IdealEstimate est;
  try {
    est.sigma = j.at("sigma").get<double>();
    est.n = j.at("n").get<std::int32_t>();
    est.rank = j.at("rank").get<std::int32_t>();
    est.raw_spectrum = j.at("raw_spectrum").get<std::vector<double>>();
    est.ideal_spectrum = j.at("ideal_spectrum").get<std::vector<double>>();
    est.origin = j.value("origin", std::string{});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, path + ": " + e.what());
  }
  require(est.sigma >= 0.0 && est.n >= 1 &&
              est.rank ==
                  static_cast<std::int32_t>(est.ideal_spectrum.size()) &&
              est.rank <= est.n,
          ErrorCode::kParseError, path + ": inconsistent estimate fields");
  for (std::size_t i = 0; i < est.ideal_spectrum.size(); ++i) {
    require(est.ideal_spectrum[i] > 0.0, ErrorCode::kParseError,
            path + ": ideal spectrum must be strictly positive");
    if (i > 0)
      require(est.ideal_spectrum[i] <= est.ideal_spectrum[i - 1],
              ErrorCode::kParseError,
              path + ": ideal spectrum must be nonincreasing");
  }
  return est;
}

void save_curve(const std::vector<CurvePoint>& curve,
                const std::string& path) {
  std::ofstream out = open_output(path);
  out << "k,mean_pip_loss\n";
  for (const auto& point : curve)
    out << point.k << ',' << format_g17(point.mean_loss) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace pipconcat
