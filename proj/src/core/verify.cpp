#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/common.hpp"
#include "core/meta.hpp"
#include "core/spectral.hpp"

namespace pipconcat {

namespace {

constexpr double kAlphaCycle[3] = {0.25, 0.5, 1.0};

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Ideal-spectrum families the bound is exercised against.
std::vector<double> ideal_spectrum(std::int32_t d, std::int32_t family,
                                   Rng* rng) {
  std::vector<double> s(static_cast<std::size_t>(d));
  switch (family) {
    case 0:  // folded normal, scaled
      for (double& v : s) v = 2.0 * std::abs(rng->gauss());
      return sorted_desc(std::move(s));
    case 1:  // uniform
      for (double& v : s) v = rng->uniform(0.2, 3.0);
      return sorted_desc(std::move(s));
    case 2:  // power-law decay
      for (std::int32_t i = 0; i < d; ++i)
        s[static_cast<std::size_t>(i)] =
            3.0 / std::pow(static_cast<double>(i + 1), 0.7);
      return s;
    case 3:  // exponential decay
      for (std::int32_t i = 0; i < d; ++i)
        s[static_cast<std::size_t>(i)] = 3.0 * std::pow(0.85, i);
      return s;
    default:  // flat
      std::fill(s.begin(), s.end(), 1.5);
      return s;
  }
}

// One synthetic bound instance: seeded ideal spectrum/basis, per-source
// random orthonormal bases with U(0.2,3) spectra, U(0,2) weights.
BoundBreakdown bound_instance(std::uint64_t si,
                              const std::vector<std::int32_t>& ks,
                              std::int32_t family, double alpha) {
  const std::int32_t n = 60;
  const std::int32_t d = 20;
  Rng rng(si);

  const std::vector<double> lam = ideal_spectrum(d, family, &rng);
  const Eigen::MatrixXd u =
      random_orthonormal(n, n, derive_seed(si, "ideal-basis", 0));

  std::vector<MetaSource> sources;
  ConcatWeights weights;
  weights.mode = WeightMode::kDimensionWeighted;
  weights.alpha = alpha;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const std::int32_t k = ks[j];
    std::vector<double> mu(static_cast<std::size_t>(k));
    for (double& v : mu) v = rng.uniform(0.2, 3.0);
    MetaSource src;
    src.spectrum = sorted_desc(std::move(mu));
    src.u = random_orthonormal(
        n, k, derive_seed(si, "source-basis", static_cast<std::uint64_t>(j)));
    src.label = "s" + std::to_string(j + 1);
    sources.push_back(std::move(src));
    weights.labels.push_back(sources.back().label);
  }
  for (const std::int32_t k : ks) {
    std::vector<double> c(static_cast<std::size_t>(k));
    for (double& v : c) v = rng.uniform(0.0, 2.0);
    weights.per_source.push_back(std::move(c));
  }
  return theorem1_bound(lam, u, sources, weights, alpha);
}

}  // namespace

SuiteReport lemma1_suite(std::int32_t instances, std::uint64_t seed) {
  require(instances >= 1, ErrorCode::kInvalidArgument,
          "instances must be >= 1");
  SuiteReport report;
  report.name = "projection-identity";
  report.instances = instances;
  report.tolerance = 1e-8;
  for (std::int32_t i = 0; i < instances; ++i) {
    const std::uint64_t si =
        derive_seed(seed, "lemma1", static_cast<std::uint64_t>(i));
    Rng rng(si);
    const auto n = static_cast<std::int32_t>(2 + rng.below(99));   // 2..100
    const auto k = static_cast<std::int32_t>(1 + rng.below(
        static_cast<std::uint64_t>(n)));                           // 1..n
    const Eigen::MatrixXd x0 =
        random_orthonormal(n, k, derive_seed(si, "x0", 0));
    const Eigen::MatrixXd y =
        random_orthonormal(n, n, derive_seed(si, "y", 0));
    const double residual = lemma1_residual(x0, y);
    report.worst = std::max(report.worst, residual);
    if (residual > report.tolerance) ++report.violations;
  }
  return report;
}

SuiteReport theorem1_suite(std::int32_t instances,
                           const std::vector<std::int32_t>& ks,
                           std::uint64_t seed, bool flat_spectrum) {
  require(instances >= 1, ErrorCode::kInvalidArgument,
          "instances must be >= 1");
  require(!ks.empty(), ErrorCode::kInvalidArgument, "need source widths");
  const std::int32_t d = 20;
  std::int32_t total_k = 0;
  for (const std::int32_t k : ks) {
    require(k >= 1, ErrorCode::kInvalidArgument, "source width must be >= 1");
    total_k += k;
  }
  require(total_k <= d, ErrorCode::kInvalidArgument,
          "combined source width exceeds the ideal rank d=20");

  SuiteReport report;
  report.name = flat_spectrum
                    ? "loss-bound-" + std::to_string(ks.size()) + "src-flat"
                    : "loss-bound-" + std::to_string(ks.size()) + "src";
  report.instances = instances;
  report.tolerance = 1e-9;
  report.worst = -std::numeric_limits<double>::infinity();

  for (std::int32_t i = 0; i < instances; ++i) {
    const std::uint64_t si =
        derive_seed(seed, "theorem1", static_cast<std::uint64_t>(i));
    const double alpha = kAlphaCycle[i % 3];
    const std::int32_t family = flat_spectrum ? 4 : i % 4;
    const BoundBreakdown b = bound_instance(si, ks, family, alpha);
    const double excess = b.actual_pip_loss - b.total;
    report.worst = std::max(report.worst, excess);
    if (excess > report.tolerance) ++report.violations;
  }
  return report;
}

BoundBreakdown bound_sample(std::uint64_t seed) {
  return bound_instance(derive_seed(seed, "bound-sample", 0), {8, 6}, 0, 0.5);
}

SuiteReport weight_grid_suite(std::int32_t instances, std::uint64_t seed) {
  require(instances >= 1, ErrorCode::kInvalidArgument,
          "instances must be >= 1");
  SuiteReport report;
  report.name = "weight-optimality";
  report.instances = instances;
  report.tolerance = 1e-6;
  report.worst = -std::numeric_limits<double>::infinity();

  constexpr double kGridStep = 1e-3;
  constexpr double kGridMax = 3.0;
  constexpr std::int32_t kGridPoints =
      static_cast<std::int32_t>(kGridMax / kGridStep) + 1;

  for (std::int32_t i = 0; i < instances; ++i) {
    const std::uint64_t si =
        derive_seed(seed, "weight-grid", static_cast<std::uint64_t>(i));
    Rng rng(si);
    const double alpha = kAlphaCycle[i % 3];
    const auto k = static_cast<std::int32_t>(1 + rng.below(6));  // 1..6

    std::vector<double> lam(static_cast<std::size_t>(k));
    std::vector<double> mu(static_cast<std::size_t>(k));
    for (double& v : lam) v = rng.uniform(0.2, 3.0);
    for (double& v : mu) v = rng.uniform(0.2, 3.0);
    lam = sorted_desc(std::move(lam));
    Spectrum source;
    source.values = sorted_desc(std::move(mu));
    source.origin = "grid";

    const ConcatWeights dw = dw_weights(lam, {source}, alpha);
    const ConcatWeights sw = sw_weights(lam, {source}, alpha);

    bool violated = false;

    // Per-dimension objective: the dimension-wise weight must beat every
    // grid point and zero its own term.
    double dw_mag_sq = 0.0;
    for (std::int32_t t = 0; t < k; ++t) {
      const double lam2a =
          std::pow(lam[static_cast<std::size_t>(t)], 2.0 * alpha);
      const double mu2a =
          std::pow(source.values[static_cast<std::size_t>(t)], 2.0 * alpha);
      const auto objective = [&](double c) {
        const double gap = lam2a - c * c * mu2a;
        return gap * gap;
      };
      double grid_best = std::numeric_limits<double>::infinity();
      for (std::int32_t g = 0; g < kGridPoints; ++g)
        grid_best = std::min(grid_best, objective(g * kGridStep));
      const double at_dw =
          objective(dw.per_source[0][static_cast<std::size_t>(t)]);
      report.worst = std::max(report.worst, at_dw - grid_best);
      if (at_dw > grid_best + report.tolerance) violated = true;
      dw_mag_sq += at_dw;
    }
    if (std::sqrt(dw_mag_sq) > 1e-10) violated = true;

    // Scalar objective: the source-wise weight must beat every grid point.
    const auto scalar_objective = [&](double c) {
      double s = 0.0;
      for (std::int32_t t = 0; t < k; ++t) {
        const double lam2a =
            std::pow(lam[static_cast<std::size_t>(t)], 2.0 * alpha);
        const double mu2a =
            std::pow(source.values[static_cast<std::size_t>(t)], 2.0 * alpha);
        const double gap = lam2a - c * c * mu2a;
        s += gap * gap;
      }
      return s;
    };
    double grid_best = std::numeric_limits<double>::infinity();
    for (std::int32_t g = 0; g < kGridPoints; ++g)
      grid_best = std::min(grid_best, scalar_objective(g * kGridStep));
    const double at_sw = scalar_objective(sw.per_source[0][0]);
    report.worst = std::max(report.worst, at_sw - grid_best);
    if (at_sw > grid_best + report.tolerance) violated = true;

    if (violated) ++report.violations;
  }
  return report;
}

}  // namespace pipconcat
