// Exercises the shared-library interface end to end: handles, status codes,
// the thread-local error message, and value plumbing against hand-computed
// expectations. Links only the public library, never the core objects.
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "pipconcat.h"
#include "test_util.hpp"

namespace {

struct CorpusGuard {
  pc_corpus* h = nullptr;
  ~CorpusGuard() { pc_corpus_free(h); }
};
struct VocabGuard {
  pc_vocab* h = nullptr;
  ~VocabGuard() { pc_vocab_free(h); }
};
struct CountsGuard {
  pc_counts* h = nullptr;
  ~CountsGuard() { pc_counts_free(h); }
};
struct SignalGuard {
  pc_signal* h = nullptr;
  ~SignalGuard() { pc_signal_free(h); }
};
struct EmbeddingGuard {
  pc_embedding* h = nullptr;
  ~EmbeddingGuard() { pc_embedding_free(h); }
};
struct EstimateGuard {
  pc_estimate* h = nullptr;
  ~EstimateGuard() { pc_estimate_free(h); }
};
struct WeightsGuard {
  pc_weights* h = nullptr;
  ~WeightsGuard() { pc_weights_free(h); }
};

constexpr const char* kTinyText = "a b a c\n";

}  // namespace

TEST_CASE("version, status names, and error message plumbing") {
  CHECK(std::string(pc_version()) == "1.0.0");
  CHECK(std::string(pc_status_name(PC_OK)) == "ok");
  CHECK(std::string(pc_status_name(PC_ERR_INVALID_ARGUMENT)) ==
        "invalid-argument");
  CHECK(std::string(pc_status_name(PC_ERR_FILE_NOT_FOUND)) ==
        "file-not-found");
  CHECK(std::string(pc_status_name(PC_ERR_DEGENERATE_SPECTRUM)) ==
        "degenerate-spectrum");

  pc_corpus* c = nullptr;
  const pc_status st = pc_corpus_load("/nonexistent/corpus.txt", 0, &c);
  CHECK(st == PC_ERR_FILE_NOT_FOUND);
  CHECK(c == nullptr);
  CHECK(std::strlen(pc_error_message()) > 0);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  pc_corpus* c = nullptr;
  CHECK(pc_corpus_load(nullptr, 0, &c) == PC_ERR_INVALID_ARGUMENT);
  CHECK(pc_corpus_from_text("a b\n", 0, nullptr) == PC_ERR_INVALID_ARGUMENT);
  uint64_t u = 0;
  CHECK(pc_corpus_sentence_count(nullptr, &u) == PC_ERR_INVALID_ARGUMENT);
  pc_vocab* v = nullptr;
  CHECK(pc_vocab_build(nullptr, 0, &v) == PC_ERR_INVALID_ARGUMENT);
  double d = 0.0;
  CHECK(pc_noise_estimate(nullptr, nullptr, &d) == PC_ERR_INVALID_ARGUMENT);
  CHECK(pc_pip_loss(nullptr, nullptr, &d) == PC_ERR_INVALID_ARGUMENT);
  pc_estimate* est = nullptr;
  CHECK(pc_estimate_from_signal(nullptr, 0.0, &est) ==
        PC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("freeing null handles is a no-op") {
  pc_corpus_free(nullptr);
  pc_vocab_free(nullptr);
  pc_counts_free(nullptr);
  pc_signal_free(nullptr);
  pc_embedding_free(nullptr);
  pc_estimate_free(nullptr);
  pc_weights_free(nullptr);
  pc_similarity_free(nullptr);
  pc_analogy_free(nullptr);
}

TEST_CASE("seed derivation is deterministic and stream-separating") {
  const uint64_t a = pc_derive_seed(42, "split", 0);
  CHECK(pc_derive_seed(42, "split", 0) == a);
  CHECK(pc_derive_seed(42, "split", 1) != a);
  CHECK(pc_derive_seed(42, "select", 0) != a);
  CHECK(pc_derive_seed(43, "split", 0) != a);
}

TEST_CASE("corpus -> vocab -> counts against hand-counted values") {
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text(kTinyText, 0, &corpus.h) == PC_OK);
  uint64_t sentences = 0, tokens = 0;
  REQUIRE(pc_corpus_sentence_count(corpus.h, &sentences) == PC_OK);
  REQUIRE(pc_corpus_token_count(corpus.h, &tokens) == PC_OK);
  CHECK(sentences == 1);
  CHECK(tokens == 4);

  VocabGuard vocab;
  REQUIRE(pc_vocab_build(corpus.h, 0, &vocab.h) == PC_OK);
  int32_t size = 0;
  REQUIRE(pc_vocab_size(vocab.h, &size) == PC_OK);
  REQUIRE(size == 3);
  const char* tok = nullptr;
  REQUIRE(pc_vocab_token(vocab.h, 0, &tok) == PC_OK);
  CHECK(std::string(tok) == "a");
  uint64_t count = 0;
  REQUIRE(pc_vocab_count(vocab.h, 0, &count) == PC_OK);
  CHECK(count == 2);
  int32_t id = -2;
  REQUIRE(pc_vocab_lookup(vocab.h, "c", &id) == PC_OK);
  CHECK(id == 2);
  REQUIRE(pc_vocab_lookup(vocab.h, "zebra", &id) == PC_OK);
  CHECK(id == -1);

  CountsGuard counts;
  REQUIRE(pc_counts_build(corpus.h, vocab.h, 2, &counts.h) == PC_OK);
  int32_t n = 0, window = 0;
  uint64_t total = 0;
  REQUIRE(pc_counts_n(counts.h, &n) == PC_OK);
  REQUIRE(pc_counts_window(counts.h, &window) == PC_OK);
  REQUIRE(pc_counts_total(counts.h, &total) == PC_OK);
  CHECK(n == 3);
  CHECK(window == 2);
  CHECK(total == 9);
  uint64_t x = 0;
  REQUIRE(pc_counts_get(counts.h, 0, 1, &x) == PC_OK);
  CHECK(x == 2);
  REQUIRE(pc_counts_get(counts.h, 1, 0, &x) == PC_OK);
  CHECK(x == 2);
  REQUIRE(pc_counts_get(counts.h, 0, 0, &x) == PC_OK);
  CHECK(x == 1);
  REQUIRE(pc_counts_get(counts.h, 1, 2, &x) == PC_OK);
  CHECK(x == 1);
}

TEST_CASE("corpus split is seeded and reproducible") {
  std::string text;
  for (int i = 0; i < 9; ++i) {
    // sentence i holds i+1 tokens so token totals identify the selection
    for (int t = 0; t <= i; ++t) text += "s" + std::to_string(i) + " ";
    text += "\n";
  }
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text(text.c_str(), 0, &corpus.h) == PC_OK);

  CorpusGuard a1, b1, a2, b2;
  REQUIRE(pc_corpus_split(corpus.h, 99, &a1.h, &b1.h) == PC_OK);
  REQUIRE(pc_corpus_split(corpus.h, 99, &a2.h, &b2.h) == PC_OK);
  uint64_t na1 = 0, nb1 = 0, na2 = 0, nb2 = 0;
  REQUIRE(pc_corpus_sentence_count(a1.h, &na1) == PC_OK);
  REQUIRE(pc_corpus_sentence_count(b1.h, &nb1) == PC_OK);
  REQUIRE(pc_corpus_sentence_count(a2.h, &na2) == PC_OK);
  REQUIRE(pc_corpus_sentence_count(b2.h, &nb2) == PC_OK);
  CHECK(na1 == 5);
  CHECK(nb1 == 4);
  CHECK(na1 == na2);
  CHECK(nb1 == nb2);
  // same seed must pick the same sentences, not just the same sizes
  uint64_t ta1 = 0, ta2 = 0;
  REQUIRE(pc_corpus_token_count(a1.h, &ta1) == PC_OK);
  REQUIRE(pc_corpus_token_count(a2.h, &ta2) == PC_OK);
  CHECK(ta1 == ta2);
}

TEST_CASE("signal build, access, and noise estimate") {
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text(kTinyText, 0, &corpus.h) == PC_OK);
  VocabGuard vocab;
  REQUIRE(pc_vocab_build(corpus.h, 0, &vocab.h) == PC_OK);
  CountsGuard counts;
  REQUIRE(pc_counts_build(corpus.h, vocab.h, 2, &counts.h) == PC_OK);

  SignalGuard ppmi;
  REQUIRE(pc_signal_build(counts.h, PC_SIGNAL_PPMI, 0.0, 0, &ppmi.h) == PC_OK);
  int32_t n = 0, kind = -1;
  REQUIRE(pc_signal_n(ppmi.h, &n) == PC_OK);
  REQUIRE(pc_signal_kind(ppmi.h, &kind) == PC_OK);
  CHECK(n == 3);
  CHECK(kind == PC_SIGNAL_PPMI);
  // pmi(a,b) = log(2 * 9 / (4 * 3)) = log(1.5), positive so ppmi keeps it
  double v = 0.0;
  REQUIRE(pc_signal_get(ppmi.h, 0, 1, &v) == PC_OK);
  CHECK(v == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  // pmi(b,c) = log(1 * 9 / (3 * 2)) = log(1.5); pmi(a,c) = log(9/8)
  REQUIRE(pc_signal_get(ppmi.h, 2, 0, &v) == PC_OK);
  CHECK(v == doctest::Approx(std::log(9.0 / 8.0)).epsilon(1e-15));

  SignalGuard spmi;
  CHECK(pc_signal_build(counts.h, PC_SIGNAL_SPMI, -1.0, 0, &spmi.h) ==
        PC_ERR_INVALID_BETA);
  REQUIRE(pc_signal_build(counts.h, PC_SIGNAL_SPMI, 3.0, 0, &spmi.h) == PC_OK);

  // identical halves -> zero noise; different counts -> positive noise
  double sigma = -1.0;
  REQUIRE(pc_noise_estimate(ppmi.h, ppmi.h, &sigma) == PC_OK);
  CHECK(sigma == 0.0);
  CorpusGuard other;
  REQUIRE(pc_corpus_from_text("c b c a\n", 0, &other.h) == PC_OK);
  CountsGuard counts2;
  REQUIRE(pc_counts_build(other.h, vocab.h, 2, &counts2.h) == PC_OK);
  SignalGuard ppmi2;
  REQUIRE(pc_signal_build(counts2.h, PC_SIGNAL_PPMI, 0.0, 0, &ppmi2.h) ==
          PC_OK);
  REQUIRE(pc_noise_estimate(ppmi.h, ppmi2.h, &sigma) == PC_OK);
  CHECK(sigma > 0.0);
  CHECK(pc_noise_estimate(ppmi.h, spmi.h, &sigma) ==
        PC_ERR_INVALID_ARGUMENT);  // kind mismatch

  SUBCASE("binary signal round trip") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("sig.bin");
    REQUIRE(pc_signal_save(ppmi.h, path.c_str()) == PC_OK);
    SignalGuard back;
    REQUIRE(pc_signal_load(path.c_str(), &back.h) == PC_OK);
    int32_t bn = 0, bkind = -1;
    REQUIRE(pc_signal_n(back.h, &bn) == PC_OK);
    REQUIRE(pc_signal_kind(back.h, &bkind) == PC_OK);
    CHECK(bn == 3);
    CHECK(bkind == PC_SIGNAL_PPMI);
    double orig = 0.0, loaded = 0.0;
    REQUIRE(pc_signal_get(ppmi.h, 0, 1, &orig) == PC_OK);
    REQUIRE(pc_signal_get(back.h, 0, 1, &loaded) == PC_OK);
    CHECK(orig == loaded);
  }
}

TEST_CASE("embedding factory, spectrum access, pip loss, text round trip") {
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text(kTinyText, 0, &corpus.h) == PC_OK);
  VocabGuard vocab;
  REQUIRE(pc_vocab_build(corpus.h, 0, &vocab.h) == PC_OK);
  CountsGuard counts;
  REQUIRE(pc_counts_build(corpus.h, vocab.h, 2, &counts.h) == PC_OK);
  SignalGuard signal;
  REQUIRE(pc_signal_build(counts.h, PC_SIGNAL_PPMI, 0.0, 0, &signal.h) ==
          PC_OK);

  EmbeddingGuard e;
  REQUIRE(pc_embed(signal.h, 0.5, 2, &e.h) == PC_OK);
  int32_t rows = 0, cols = 0;
  REQUIRE(pc_embedding_rows(e.h, &rows) == PC_OK);
  REQUIRE(pc_embedding_cols(e.h, &cols) == PC_OK);
  CHECK(rows == 3);
  CHECK(cols == 2);

  double s0 = 0.0, s1 = 0.0, norm0 = 0.0;
  REQUIRE(pc_embedding_spectrum(e.h, 0, &s0) == PC_OK);
  REQUIRE(pc_embedding_spectrum(e.h, 1, &s1) == PC_OK);
  CHECK(s0 >= s1);
  CHECK(s1 > 0.0);
  REQUIRE(pc_embedding_column_norm(e.h, 0, &norm0) == PC_OK);
  CHECK(norm0 == doctest::Approx(std::pow(s0, 0.5)).epsilon(1e-12));

  double self = -1.0;
  REQUIRE(pc_pip_loss(e.h, e.h, &self) == PC_OK);
  CHECK(self == 0.0);

  EmbeddingGuard e1;
  REQUIRE(pc_embed(signal.h, 0.5, 1, &e1.h) == PC_OK);
  double gap = 0.0;
  REQUIRE(pc_pip_loss(e.h, e1.h, &gap) == PC_OK);
  CHECK(gap > 0.0);

  EmbeddingGuard too_wide;
  CHECK(pc_embed(signal.h, 0.5, 7, &too_wide.h) == PC_ERR_K_TOO_LARGE);

  SUBCASE("text dump requires tokens, then round trips") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("emb.txt");
    CHECK(pc_embedding_save_text(e.h, path.c_str()) ==
          PC_ERR_INVALID_ARGUMENT);
    REQUIRE(pc_embedding_set_tokens(e.h, vocab.h) == PC_OK);
    const char* tok = nullptr;
    REQUIRE(pc_embedding_token(e.h, 0, &tok) == PC_OK);
    CHECK(std::string(tok) == "a");
    REQUIRE(pc_embedding_save_text(e.h, path.c_str()) == PC_OK);

    EmbeddingGuard back;
    REQUIRE(pc_embedding_load_text(path.c_str(), &back.h) == PC_OK);
    int32_t brows = 0, bcols = 0;
    REQUIRE(pc_embedding_rows(back.h, &brows) == PC_OK);
    REQUIRE(pc_embedding_cols(back.h, &bcols) == PC_OK);
    CHECK(brows == 3);
    CHECK(bcols == 2);
    double orig = 0.0, loaded = 0.0;
    REQUIRE(pc_embedding_value(e.h, 1, 1, &orig) == PC_OK);
    REQUIRE(pc_embedding_value(back.h, 1, 1, &loaded) == PC_OK);
    CHECK(orig == loaded);  // 17 significant digits round-trip doubles
    double spec = 0.0;
    CHECK(pc_embedding_spectrum(back.h, 0, &spec) ==
          PC_ERR_INVALID_ARGUMENT);  // text files carry no spectrum
  }
}

TEST_CASE("estimate: thresholding, curve, selection, save/load") {
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text("a b a c\nb c a b\nc a b a\n", 0, &corpus.h) ==
          PC_OK);
  VocabGuard vocab;
  REQUIRE(pc_vocab_build(corpus.h, 0, &vocab.h) == PC_OK);
  CountsGuard counts;
  REQUIRE(pc_counts_build(corpus.h, vocab.h, 2, &counts.h) == PC_OK);
  SignalGuard signal;
  REQUIRE(pc_signal_build(counts.h, PC_SIGNAL_LOGCOOC, 0.0, 0, &signal.h) ==
          PC_OK);

  EstimateGuard est;
  REQUIRE(pc_estimate_from_signal(signal.h, 0.0, &est.h) == PC_OK);
  double sigma = -1.0;
  int32_t n = 0, rank = 0;
  REQUIRE(pc_estimate_sigma(est.h, &sigma) == PC_OK);
  REQUIRE(pc_estimate_n(est.h, &n) == PC_OK);
  REQUIRE(pc_estimate_rank(est.h, &rank) == PC_OK);
  CHECK(sigma == 0.0);
  CHECK(n == 3);
  REQUIRE(rank >= 1);
  // zero noise: surviving values equal the raw ones
  double raw0 = 0.0, ideal0 = 0.0;
  REQUIRE(pc_estimate_raw_value(est.h, 0, &raw0) == PC_OK);
  REQUIRE(pc_estimate_ideal_value(est.h, 0, &ideal0) == PC_OK);
  CHECK(raw0 == ideal0);
  CHECK(raw0 > 0.0);

  std::vector<int32_t> grid = {1, rank};
  std::vector<double> losses(grid.size(), -1.0);
  REQUIRE(pc_pip_loss_curve(est.h, 0.5, grid.data(),
                            static_cast<int32_t>(grid.size()), 2, 7,
                            losses.data()) == PC_OK);
  for (const double loss : losses) {
    CHECK(loss >= 0.0);
    CHECK(std::isfinite(loss));
  }

  int32_t k_star = 0;
  REQUIRE(pc_select_dimension(est.h, 0.5, 2, 7, &k_star) == PC_OK);
  CHECK(k_star >= 1);
  CHECK(k_star <= rank);
  int32_t k_again = 0;
  REQUIRE(pc_select_dimension(est.h, 0.5, 2, 7, &k_again) == PC_OK);
  CHECK(k_again == k_star);

  testutil::TempDir tmp;
  const std::string jpath = tmp.file("est.json");
  REQUIRE(pc_estimate_save(est.h, jpath.c_str()) == PC_OK);
  EstimateGuard back;
  REQUIRE(pc_estimate_load(jpath.c_str(), &back.h) == PC_OK);
  double bsigma = -1.0;
  int32_t brank = -1;
  REQUIRE(pc_estimate_sigma(back.h, &bsigma) == PC_OK);
  REQUIRE(pc_estimate_rank(back.h, &brank) == PC_OK);
  CHECK(bsigma == sigma);
  CHECK(brank == rank);

  const std::string cpath = tmp.file("curve.csv");
  REQUIRE(pc_pip_loss_curve_csv(est.h, 0.5, 2, 7, cpath.c_str()) == PC_OK);
  const std::string csv = testutil::read_file(cpath);
  CHECK(csv.rfind("k,mean_pip_loss\n", 0) == 0);
}

TEST_CASE("weights: closed forms, normalization, persistence") {
  WeightsGuard uniform;
  const int32_t dims[2] = {2, 1};
  REQUIRE(pc_weights_uniform(dims, 2, 0.5, &uniform.h) == PC_OK);
  int32_t mode = -1, n_sources = 0, dim0 = 0;
  REQUIRE(pc_weights_mode(uniform.h, &mode) == PC_OK);
  REQUIRE(pc_weights_source_count(uniform.h, &n_sources) == PC_OK);
  REQUIRE(pc_weights_dim(uniform.h, 0, &dim0) == PC_OK);
  CHECK(mode == PC_WEIGHTS_UW);
  CHECK(n_sources == 2);
  CHECK(dim0 == 2);
  double w = 0.0;
  REQUIRE(pc_weights_value(uniform.h, 0, 1, &w) == PC_OK);
  CHECK(w == 1.0);

  // ideal (9,4,1); source 1 owns positions 1-2 with mu (3,2); source 2 owns
  // position 3 with mu 5. dw weight = (lambda/mu)^alpha.
  const double ideal[3] = {9.0, 4.0, 1.0};
  const double mu1[2] = {3.0, 2.0};
  const double mu2[1] = {5.0};
  const double* spectra[2] = {mu1, mu2};
  const int32_t ks[2] = {2, 1};
  WeightsGuard dw;
  REQUIRE(pc_weights_compute(PC_WEIGHTS_DW, ideal, 3, spectra, ks, 2, 0.5,
                             &dw.h) == PC_OK);
  REQUIRE(pc_weights_value(dw.h, 0, 0, &w) == PC_OK);
  CHECK(w == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  REQUIRE(pc_weights_value(dw.h, 0, 1, &w) == PC_OK);
  CHECK(w == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  REQUIRE(pc_weights_value(dw.h, 1, 0, &w) == PC_OK);
  CHECK(w == doctest::Approx(std::sqrt(0.2)).epsilon(1e-15));

  REQUIRE(pc_weights_normalize(dw.h) == PC_OK);
  double w00 = 0.0, w01 = 0.0, w10 = 0.0;
  REQUIRE(pc_weights_value(dw.h, 0, 0, &w00) == PC_OK);
  REQUIRE(pc_weights_value(dw.h, 0, 1, &w01) == PC_OK);
  REQUIRE(pc_weights_value(dw.h, 1, 0, &w10) == PC_OK);
  CHECK((w00 + w01) / 2.0 + w10 == doctest::Approx(1.0).epsilon(1e-12));

  // zero source singular value must be refused
  const double mu_bad[1] = {0.0};
  const double* spectra_bad[1] = {mu_bad};
  const int32_t ks1[1] = {1};
  WeightsGuard bad;
  CHECK(pc_weights_compute(PC_WEIGHTS_DW, ideal, 3, spectra_bad, ks1, 1, 0.5,
                           &bad.h) == PC_ERR_ZERO_SINGULAR_VALUE);

  testutil::TempDir tmp;
  const std::string path = tmp.file("weights.json");
  REQUIRE(pc_weights_save(dw.h, path.c_str()) == PC_OK);
  WeightsGuard loaded;
  REQUIRE(pc_weights_load(path.c_str(), &loaded.h) == PC_OK);
  double lw = 0.0;
  REQUIRE(pc_weights_value(loaded.h, 0, 0, &lw) == PC_OK);
  CHECK(lw == w00);
}

TEST_CASE("meta assembly: concat, avg, svd shapes and values") {
  CorpusGuard corpus;
  REQUIRE(pc_corpus_from_text(kTinyText, 0, &corpus.h) == PC_OK);
  VocabGuard vocab;
  REQUIRE(pc_vocab_build(corpus.h, 0, &vocab.h) == PC_OK);
  CountsGuard counts;
  REQUIRE(pc_counts_build(corpus.h, vocab.h, 2, &counts.h) == PC_OK);
  SignalGuard signal;
  REQUIRE(pc_signal_build(counts.h, PC_SIGNAL_PPMI, 0.0, 0, &signal.h) ==
          PC_OK);

  EmbeddingGuard e2, e1;
  REQUIRE(pc_embed(signal.h, 0.5, 2, &e2.h) == PC_OK);
  REQUIRE(pc_embed(signal.h, 0.5, 1, &e1.h) == PC_OK);
  const pc_embedding* sources[2] = {e2.h, e1.h};

  WeightsGuard uniform;
  const int32_t dims[2] = {2, 1};
  REQUIRE(pc_weights_uniform(dims, 2, 0.5, &uniform.h) == PC_OK);

  EmbeddingGuard cat;
  REQUIRE(pc_concat(sources, 2, uniform.h, &cat.h) == PC_OK);
  int32_t rows = 0, cols = 0;
  REQUIRE(pc_embedding_rows(cat.h, &rows) == PC_OK);
  REQUIRE(pc_embedding_cols(cat.h, &cols) == PC_OK);
  CHECK(rows == 3);
  CHECK(cols == 3);
  double v_cat = 0.0, v_src = 0.0;
  REQUIRE(pc_embedding_value(cat.h, 1, 0, &v_cat) == PC_OK);
  REQUIRE(pc_embedding_value(e2.h, 1, 0, &v_src) == PC_OK);
  CHECK(v_cat == v_src);  // unit weight copies the source column
  REQUIRE(pc_embedding_value(cat.h, 1, 2, &v_cat) == PC_OK);
  REQUIRE(pc_embedding_value(e1.h, 1, 0, &v_src) == PC_OK);
  CHECK(v_cat == v_src);

  EmbeddingGuard avg;
  REQUIRE(pc_avg_baseline(sources, 2, &avg.h) == PC_OK);
  REQUIRE(pc_embedding_rows(avg.h, &rows) == PC_OK);
  REQUIRE(pc_embedding_cols(avg.h, &cols) == PC_OK);
  CHECK(rows == 3);
  CHECK(cols == 2);  // widest source
  double a_val = 0.0, e2_val = 0.0, e1_val = 0.0;
  REQUIRE(pc_embedding_value(avg.h, 0, 0, &a_val) == PC_OK);
  REQUIRE(pc_embedding_value(e2.h, 0, 0, &e2_val) == PC_OK);
  REQUIRE(pc_embedding_value(e1.h, 0, 0, &e1_val) == PC_OK);
  CHECK(a_val == doctest::Approx((e2_val + e1_val) / 2.0).epsilon(1e-15));
  REQUIRE(pc_embedding_value(avg.h, 0, 1, &a_val) == PC_OK);
  REQUIRE(pc_embedding_value(e2.h, 0, 1, &e2_val) == PC_OK);
  CHECK(a_val == doctest::Approx(e2_val / 2.0).epsilon(1e-15));  // zero-padded

  EmbeddingGuard svd;
  REQUIRE(pc_svd_baseline(sources, 2, 2, &svd.h) == PC_OK);
  REQUIRE(pc_embedding_rows(svd.h, &rows) == PC_OK);
  REQUIRE(pc_embedding_cols(svd.h, &cols) == PC_OK);
  CHECK(rows == 3);
  CHECK(cols == 2);
  EmbeddingGuard svd_bad;
  CHECK(pc_svd_baseline(sources, 2, 10, &svd_bad.h) == PC_ERR_K_TOO_LARGE);
}

TEST_CASE("evaluation through the library with fixture files") {
  testutil::TempDir tmp;
  const std::string epath = tmp.file("emb.txt");
  testutil::write_file(epath,
                       "4 2\n"
                       "w0 1 0\n"
                       "w1 5 1\n"
                       "w2 2 1\n"
                       "w3 1 2\n");
  EmbeddingGuard e;
  REQUIRE(pc_embedding_load_text(epath.c_str(), &e.h) == PC_OK);

  const std::string spath = tmp.file("sim.tsv");
  // cosine order to w0: w1 > w2 > w3, matching the scores exactly
  testutil::write_file(spath, "w0\tw1\t9.0\nw0\tw2\t5.0\nw0\tw3\t1.0\n");
  pc_similarity* sim = nullptr;
  REQUIRE(pc_similarity_load(spath.c_str(), &sim) == PC_OK);
  int32_t size = 0;
  REQUIRE(pc_similarity_size(sim, &size) == PC_OK);
  CHECK(size == 3);
  double rho = 0.0;
  int32_t covered = 0, total = 0;
  REQUIRE(pc_eval_spearman(e.h, sim, &rho, &covered, &total) == PC_OK);
  CHECK(rho == 1.0);
  CHECK(covered == 3);
  CHECK(total == 3);
  pc_similarity_free(sim);

  const std::string apath = tmp.file("analogy.txt");
  const std::string e2path = tmp.file("emb2.txt");
  testutil::write_file(e2path,
                       "5 2\n"
                       "a 1 0\n"
                       "b 1 1\n"
                       "c 3 0\n"
                       "d 3 1\n"
                       "x 0 1\n");
  testutil::write_file(apath, ": section\na b c d\n");
  EmbeddingGuard e2;
  REQUIRE(pc_embedding_load_text(e2path.c_str(), &e2.h) == PC_OK);
  pc_analogy* ana = nullptr;
  REQUIRE(pc_analogy_load(apath.c_str(), &ana) == PC_OK);
  int32_t asize = 0;
  REQUIRE(pc_analogy_size(ana, &asize) == PC_OK);
  CHECK(asize == 1);
  double acc = 0.0;
  REQUIRE(pc_eval_cosadd(e2.h, ana, &acc, &covered, &total) == PC_OK);
  CHECK(acc == 1.0);
  CHECK(covered == 1);
  CHECK(total == 1);
  pc_analogy_free(ana);

  const std::string rpath = tmp.file("result.json");
  REQUIRE(pc_eval_result_save("dev", "spearman", rho, 3, 3, rpath.c_str()) ==
          PC_OK);
  const std::string raw = testutil::read_file(rpath);
  CHECK(raw.find("\"metric\": \"spearman\"") != std::string::npos);
}

TEST_CASE("verification suites run clean through the library") {
  int32_t violations = -1;
  double worst = -1.0, tolerance = -1.0;
  REQUIRE(pc_verify_projection_identity(25, 7, &violations, &worst,
                                        &tolerance) == PC_OK);
  CHECK(violations == 0);
  CHECK(worst <= tolerance);

  const int32_t ks[2] = {8, 6};
  REQUIRE(pc_verify_loss_bound(5, ks, 2, 11, 0, &violations, &worst,
                               &tolerance) == PC_OK);
  CHECK(violations == 0);
  REQUIRE(pc_verify_loss_bound(3, ks, 2, 12, 1, &violations, &worst,
                               &tolerance) == PC_OK);
  CHECK(violations == 0);

  REQUIRE(pc_verify_weight_grid(5, 13, &violations, &worst, &tolerance) ==
          PC_OK);
  CHECK(violations == 0);
  CHECK(worst <= tolerance);

  testutil::TempDir tmp;
  const std::string path = tmp.file("bound.json");
  REQUIRE(pc_verify_bound_report(2024, path.c_str()) == PC_OK);
  const std::string raw = testutil::read_file(path);
  CHECK(raw.find("\"holds\": true") != std::string::npos);
}
