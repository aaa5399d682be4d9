#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/meta.hpp"

namespace pipconcat {

struct SuiteReport {
  std::string name;
  std::int32_t instances = 0;
  std::int32_t violations = 0;
  double worst = 0.0;      // largest residual / excess observed
  double tolerance = 0.0;  // violation threshold the suite applied
};

// Projection-difference identity: |  ||X0 X0^T - Y0 Y0^T||_F
// - sqrt(2)||X0^T Y1||_F | over random orthonormal X0 and orthogonal
// [Y0|Y1], n <= 100. Exact identity; residual must stay <= 1e-8.
SuiteReport lemma1_suite(std::int32_t instances, std::uint64_t seed);

// Bias + magnitude + directional bound vs directly computed PIP loss on
// random synthetic instances: n = 60, d = 20, source widths `ks`, source
// spectra U(0.2,3) sorted, weights U(0,2), alpha cycling {0.25, 0.5, 1},
// ideal spectrum cycling four families (|N|, uniform, power-law, exponential
// decay). `flat_spectrum` replaces the families with a constant spectrum
// (the adversarial case for the bound's telescoping step).
SuiteReport theorem1_suite(std::int32_t instances,
                           const std::vector<std::int32_t>& ks,
                           std::uint64_t seed, bool flat_spectrum = false);

// Closed-form weights vs 1e-3 grid search over [0,3] on the magnitude
// objective (lambda^{2a} - c^2 mu^{2a})^2, per dimension and per source
// block; also requires the dimension-wise weights to zero their terms.
SuiteReport weight_grid_suite(std::int32_t instances, std::uint64_t seed);

// One seeded two-source instance (n = 60, k = 8+6, d = 20, alpha = 0.5)
// evaluated through the bound, for report dumps.
BoundBreakdown bound_sample(std::uint64_t seed);

}  // namespace pipconcat
