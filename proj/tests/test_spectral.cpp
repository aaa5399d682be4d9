#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "core/common.hpp"
#include "core/signal.hpp"
#include "core/spectral.hpp"
#include "test_util.hpp"

using namespace pipconcat;

namespace {

Eigen::MatrixXd random_symmetric(std::int32_t n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(n, n);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < n; ++j) m(i, j) = rng.gauss();
  return (m + m.transpose()) / 2.0;
}

Eigen::MatrixXd random_dense(std::int32_t n, std::int32_t k,
                             std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m(n, k);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < k; ++j) m(i, j) = rng.gauss();
  return m;
}

// Independent long-double oracle for || E1 E1^T - E2 E2^T ||_F.
double pip_loss_oracle(const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2) {
  const Eigen::Index n = e1.rows();
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      long double p1 = 0.0L;
      for (Eigen::Index t = 0; t < e1.cols(); ++t)
        p1 += static_cast<long double>(e1(i, t)) *
              static_cast<long double>(e1(j, t));
      long double p2 = 0.0L;
      for (Eigen::Index t = 0; t < e2.cols(); ++t)
        p2 += static_cast<long double>(e2(i, t)) *
              static_cast<long double>(e2(j, t));
      const long double d = p1 - p2;
      total += d * d;
    }
  return static_cast<double>(std::sqrt(total));
}

}  // namespace

TEST_CASE("factorize: hand-checked 2x2 with a negative eigenvalue") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 0.0, 0.0, -3.0;
  const Factorization f = factorize(m, 2, "hand");
  REQUIRE(f.spectrum.values.size() == 2);
  CHECK(f.spectrum.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.spectrum.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  // singular vector of |−3| is e2, of 2 is e1, signs fixed positive
  CHECK(f.u(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.u(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.u(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.u(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("factorize: singular triplet properties on random matrices") {
  for (const std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const std::int32_t n = 9;
    const Eigen::MatrixXd m = random_symmetric(n, seed);
    const Factorization f = factorize(m, n, "random");

    // descending absolute eigenvalues
    for (std::size_t i = 1; i < f.spectrum.values.size(); ++i)
      CHECK(f.spectrum.values[i] <= f.spectrum.values[i - 1]);
    // orthonormal columns
    CHECK((f.u.transpose() * f.u - Eigen::MatrixXd::Identity(n, n)).norm() <=
          1e-12);
    for (std::int32_t i = 0; i < n; ++i) {
      // each column is an eigenvector with |eigenvalue| = singular value
      const Eigen::VectorXd mu = m * f.u.col(i);
      const double rayleigh = f.u.col(i).dot(mu);
      CHECK(std::abs(std::abs(rayleigh) - f.spectrum.values[i]) <= 1e-10);
      CHECK((mu - rayleigh * f.u.col(i)).norm() <= 1e-9);
      // sign convention: the dominant entry of each column is positive
      Eigen::Index arg = 0;
      f.u.col(i).cwiseAbs().maxCoeff(&arg);
      CHECK(f.u(arg, i) > 0.0);
    }
  }
  SUBCASE("k_max truncates") {
    const Eigen::MatrixXd m = random_symmetric(6, 5);
    const Factorization f = factorize(m, 2, "truncated");
    CHECK(f.u.cols() == 2);
    CHECK(f.spectrum.values.size() == 2);
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(factorize(Eigen::MatrixXd::Zero(2, 3), 1, "bad"), Error);
    CHECK_THROWS_AS(factorize(Eigen::MatrixXd::Zero(2, 2), 3, "bad"), Error);
  }
}

TEST_CASE("embed: column norms follow sigma^alpha") {
  const Eigen::MatrixXd m = random_symmetric(8, 99);
  const SignalMatrix s = synthetic_signal(m, "unit");
  for (const double alpha : {0.0, 0.25, 0.5, 1.0}) {
    const EmbeddingMatrix e = embed(s, alpha, 5);
    CHECK(e.k == 5);
    CHECK(e.alpha == alpha);
    REQUIRE(e.spectrum_used.values.size() == 5);
    for (std::int32_t i = 0; i < 5; ++i)
      CHECK(e.data.col(i).norm() ==
            doctest::Approx(std::pow(e.spectrum_used.values[i], alpha))
                .epsilon(1e-12));
  }
  SUBCASE("k too large") {
    CHECK_THROWS_AS(embed(s, 0.5, 9), Error);
  }
  SUBCASE("alpha = 0 keeps unit columns regardless of the spectrum") {
    const EmbeddingMatrix e = embed(s, 0.0, 3);
    for (std::int32_t i = 0; i < 3; ++i)
      CHECK(e.data.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pip_matrix and pip_loss: triple-loop oracle agreement") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(derive_seed(1234, "pip-oracle", seed));
    const auto n = static_cast<std::int32_t>(2 + rng.below(10));
    const auto k1 = static_cast<std::int32_t>(1 + rng.below(5));
    const auto k2 = static_cast<std::int32_t>(1 + rng.below(5));
    const Eigen::MatrixXd e1 = random_dense(n, k1, rng.next());
    const Eigen::MatrixXd e2 = random_dense(n, k2, rng.next());
    CHECK(pip_loss(e1, e2) ==
          doctest::Approx(pip_loss_oracle(e1, e2)).epsilon(1e-12));
  }
  SUBCASE("pip_matrix is the embedding Gram matrix") {
    EmbeddingMatrix e;
    e.data = random_dense(5, 3, 77);
    e.k = 3;
    const PipMatrix p = pip_matrix(e);
    CHECK((p.data - e.data * e.data.transpose()).norm() == 0.0);
    CHECK((p.data - p.data.transpose()).norm() == 0.0);
  }
  SUBCASE("identical embeddings have zero loss") {
    const Eigen::MatrixXd e = random_dense(6, 3, 5);
    CHECK(pip_loss(e, e) == 0.0);
  }
  SUBCASE("row mismatch is refused") {
    CHECK_THROWS_AS(
        pip_loss(Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(4, 2)),
        Error);
  }
}

TEST_CASE("pip_loss is invariant under orthogonal column rotations") {
  for (const std::uint64_t seed : {3ull, 4ull, 5ull}) {
    const Eigen::MatrixXd e = random_dense(10, 4, seed);
    const Eigen::MatrixXd r = random_orthonormal(4, 4, seed + 100);
    CHECK(pip_loss(e, e * r) <= 1e-10);
  }
}

TEST_CASE("random_orthonormal: orthonormal, deterministic, seed-sensitive") {
  const Eigen::MatrixXd q = random_orthonormal(12, 5, 42);
  CHECK(q.rows() == 12);
  CHECK(q.cols() == 5);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-12);
  CHECK((q - random_orthonormal(12, 5, 42)).norm() == 0.0);
  CHECK((q - random_orthonormal(12, 5, 43)).norm() > 1e-3);
  CHECK_THROWS_AS(random_orthonormal(3, 4, 1), Error);
  CHECK_THROWS_AS(random_orthonormal(3, 0, 1), Error);
}

TEST_CASE("lemma1_residual: identity holds for orthonormal inputs") {
  for (const std::uint64_t seed : {21ull, 22ull, 23ull}) {
    Rng rng(seed);
    const auto n = static_cast<std::int32_t>(3 + rng.below(20));
    const auto k = static_cast<std::int32_t>(1 + rng.below(n));
    const Eigen::MatrixXd x0 = random_orthonormal(n, k, rng.next());
    const Eigen::MatrixXd y = random_orthonormal(n, n, rng.next());
    CHECK(lemma1_residual(x0, y) <= 1e-10);
  }
  SUBCASE("k = n degenerates to zero on both sides") {
    const Eigen::MatrixXd x0 = random_orthonormal(6, 6, 1);
    const Eigen::MatrixXd y = random_orthonormal(6, 6, 2);
    CHECK(lemma1_residual(x0, y) <= 1e-12);
  }
  SUBCASE("shape validation") {
    CHECK_THROWS_AS(lemma1_residual(Eigen::MatrixXd::Zero(5, 2),
                                    Eigen::MatrixXd::Zero(5, 4)),
                    Error);
  }
}

TEST_CASE("embedding text format: exact round trip") {
  testutil::TempDir tmp;
  const Eigen::MatrixXd e = random_dense(4, 3, 31);
  const std::vector<std::string> tokens = {"alpha", "beta", "gamma", "delta"};
  const std::string path = tmp.file("emb.txt");
  save_embedding_text(e, tokens, path);

  const LoadedEmbedding r = load_embedding_text(path);
  CHECK(r.tokens == tokens);
  CHECK((r.data - e).norm() == 0.0);  // 17 significant digits round-trip

  SUBCASE("header shape") {
    const std::string raw = testutil::read_file(path);
    CHECK(raw.substr(0, raw.find('\n')) == "4 3");
  }
  SUBCASE("token count mismatch on save") {
    CHECK_THROWS_AS(save_embedding_text(e, {"too", "few"}, path), Error);
  }
  SUBCASE("malformed rows on load") {
    const std::string bad = tmp.file("bad.txt");
    testutil::write_file(bad, "2 2\na 0.5 1.0\nb 0.25\n");
    CHECK_THROWS_AS(load_embedding_text(bad), Error);
    testutil::write_file(bad, "2 2\na 0.5 1.0\n");
    CHECK_THROWS_AS(load_embedding_text(bad), Error);
    testutil::write_file(bad, "2 2\na 0.5 1.0\nb 0.25 nan\n");
    CHECK_THROWS_AS(load_embedding_text(bad), Error);
  }
}
