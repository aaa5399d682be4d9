#include "pipconcat.h"

#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"
#include "core/corpus.hpp"
#include "core/eval.hpp"
#include "core/meta.hpp"
#include "core/oracle.hpp"
#include "core/signal.hpp"
#include "core/spectral.hpp"
#include "core/verify.hpp"

struct pc_corpus {
  pipconcat::Corpus value;
};
struct pc_vocab {
  pipconcat::Vocabulary value;
};
struct pc_counts {
  pipconcat::CooccurrenceCounts value;
};
struct pc_signal {
  pipconcat::SignalMatrix value;
};
struct pc_embedding {
  Eigen::MatrixXd data;
  double alpha = 0.5;
  std::vector<double> spectrum;  // may be empty (text-loaded handles)
  std::string label;
  std::vector<std::string> tokens;  // may be empty
};
struct pc_estimate {
  pipconcat::IdealEstimate value;
};
struct pc_weights {
  pipconcat::ConcatWeights value;
};
struct pc_similarity {
  pipconcat::SimilarityDataset value;
};
struct pc_analogy {
  pipconcat::AnalogyDataset value;
};

namespace {

using pipconcat::Error;
using pipconcat::ErrorCode;

thread_local std::string tls_error;

pc_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return PC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kEmptyCorpus:
      return PC_ERR_EMPTY_CORPUS;
    case ErrorCode::kSplitTooSmall:
      return PC_ERR_SPLIT_TOO_SMALL;
    case ErrorCode::kInvalidBeta:
      return PC_ERR_INVALID_BETA;
    case ErrorCode::kSvdFailed:
      return PC_ERR_SVD_FAILED;
    case ErrorCode::kKTooLarge:
      return PC_ERR_K_TOO_LARGE;
    case ErrorCode::kVocabMismatch:
      return PC_ERR_VOCAB_MISMATCH;
    case ErrorCode::kZeroSingularValue:
      return PC_ERR_ZERO_SINGULAR_VALUE;
    case ErrorCode::kDegenerateSpectrum:
      return PC_ERR_DEGENERATE_SPECTRUM;
    case ErrorCode::kInsufficientCoverage:
      return PC_ERR_INSUFFICIENT_COVERAGE;
    case ErrorCode::kMatrixTooLarge:
      return PC_ERR_MATRIX_TOO_LARGE;
    case ErrorCode::kFileNotFound:
      return PC_ERR_FILE_NOT_FOUND;
    case ErrorCode::kParseError:
      return PC_ERR_PARSE;
    case ErrorCode::kIoError:
      return PC_ERR_IO;
  }
  return PC_ERR_INTERNAL;
}

template <typename Fn>
pc_status guarded(Fn&& fn) {
  try {
    fn();
    return PC_OK;
  } catch (const Error& e) {
    tls_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    tls_error = e.what();
    return PC_ERR_INTERNAL;
  } catch (...) {
    tls_error = "unknown failure";
    return PC_ERR_INTERNAL;
  }
}

pc_status arg_error(const std::string& message) {
  tls_error = message;
  return PC_ERR_INVALID_ARGUMENT;
}

template <typename T>
bool missing(const T* p) {
  return p == nullptr;
}

// Bridges a C-API embedding handle into the core embedding type.
pipconcat::EmbeddingMatrix to_core(const pc_embedding& e) {
  pipconcat::EmbeddingMatrix out;
  out.data = e.data;
  out.alpha = e.alpha;
  out.k = static_cast<std::int32_t>(e.data.cols());
  out.spectrum_used.values = e.spectrum;
  out.spectrum_used.origin = e.label;
  out.label = e.label;
  return out;
}

pc_embedding* from_core(pipconcat::EmbeddingMatrix&& e) {
  auto* handle = new pc_embedding;
  handle->data = std::move(e.data);
  handle->alpha = e.alpha;
  handle->spectrum = std::move(e.spectrum_used.values);
  handle->label = std::move(e.label);
  return handle;
}

pc_status gather_sources(const pc_embedding* const* sources, int32_t n_sources,
                         std::vector<pipconcat::EmbeddingMatrix>* out) {
  if (missing(sources) || n_sources < 1)
    return arg_error("need at least one source embedding");
  for (int32_t j = 0; j < n_sources; ++j) {
    if (missing(sources[j]))
      return arg_error("source " + std::to_string(j + 1) + " is NULL");
    out->push_back(to_core(*sources[j]));
  }
  return PC_OK;
}

void inherit_tokens(const pc_embedding* const* sources, int32_t n_sources,
                    pc_embedding* out) {
  for (int32_t j = 0; j < n_sources; ++j)
    if (!sources[j]->tokens.empty() &&
        static_cast<Eigen::Index>(sources[j]->tokens.size()) ==
            out->data.rows()) {
      out->tokens = sources[j]->tokens;
      return;
    }
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "1.0.0"; }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK:
      return "ok";
    case PC_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case PC_ERR_EMPTY_CORPUS:
      return "empty-corpus";
    case PC_ERR_SPLIT_TOO_SMALL:
      return "split-too-small";
    case PC_ERR_INVALID_BETA:
      return "invalid-beta";
    case PC_ERR_SVD_FAILED:
      return "svd-failed";
    case PC_ERR_K_TOO_LARGE:
      return "k-too-large";
    case PC_ERR_VOCAB_MISMATCH:
      return "vocab-mismatch";
    case PC_ERR_ZERO_SINGULAR_VALUE:
      return "zero-singular-value";
    case PC_ERR_DEGENERATE_SPECTRUM:
      return "degenerate-spectrum";
    case PC_ERR_INSUFFICIENT_COVERAGE:
      return "insufficient-coverage";
    case PC_ERR_MATRIX_TOO_LARGE:
      return "matrix-too-large";
    case PC_ERR_FILE_NOT_FOUND:
      return "file-not-found";
    case PC_ERR_PARSE:
      return "parse-error";
    case PC_ERR_IO:
      return "io-error";
    default:
      return "internal-error";
  }
}

const char* pc_error_message(void) { return tls_error.c_str(); }

uint64_t pc_derive_seed(uint64_t seed, const char* domain, uint64_t index) {
  return pipconcat::derive_seed(seed, domain == nullptr ? "" : domain, index);
}

/* ---- corpus ---------------------------------------------------------- */

pc_status pc_corpus_load(const char* path, int32_t block_tokens,
                         pc_corpus** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded([&] {
    auto corpus = pipconcat::load_corpus(
        path, block_tokens > 0 ? block_tokens : pipconcat::kDefaultBlockTokens);
    *out = new pc_corpus{std::move(corpus)};
  });
}

pc_status pc_corpus_from_text(const char* text, int32_t block_tokens,
                              pc_corpus** out) {
  if (missing(text) || missing(out)) return arg_error("NULL text or out");
  return guarded([&] {
    auto corpus = pipconcat::corpus_from_text(
        text, block_tokens > 0 ? block_tokens : pipconcat::kDefaultBlockTokens);
    *out = new pc_corpus{std::move(corpus)};
  });
}

pc_status pc_corpus_sentence_count(const pc_corpus* corpus, uint64_t* out) {
  if (missing(corpus) || missing(out)) return arg_error("NULL corpus or out");
  *out = corpus->value.sentence_count();
  return PC_OK;
}

pc_status pc_corpus_token_count(const pc_corpus* corpus, uint64_t* out) {
  if (missing(corpus) || missing(out)) return arg_error("NULL corpus or out");
  *out = corpus->value.token_count();
  return PC_OK;
}

pc_status pc_corpus_split(const pc_corpus* corpus, uint64_t seed,
                          pc_corpus** out_a, pc_corpus** out_b) {
  if (missing(corpus) || missing(out_a) || missing(out_b))
    return arg_error("NULL corpus or out");
  return guarded([&] {
    auto halves = pipconcat::split_corpus(corpus->value, seed);
    *out_a = new pc_corpus{std::move(halves.first)};
    *out_b = new pc_corpus{std::move(halves.second)};
  });
}

void pc_corpus_free(pc_corpus* corpus) { delete corpus; }

/* ---- vocabulary ------------------------------------------------------ */

pc_status pc_vocab_build(const pc_corpus* corpus, int32_t max_vocab,
                         pc_vocab** out) {
  if (missing(corpus) || missing(out)) return arg_error("NULL corpus or out");
  return guarded([&] {
    *out = new pc_vocab{pipconcat::build_vocabulary(corpus->value, max_vocab)};
  });
}

pc_status pc_vocab_size(const pc_vocab* vocab, int32_t* out) {
  if (missing(vocab) || missing(out)) return arg_error("NULL vocab or out");
  *out = vocab->value.size();
  return PC_OK;
}

pc_status pc_vocab_token(const pc_vocab* vocab, int32_t index,
                         const char** out) {
  if (missing(vocab) || missing(out)) return arg_error("NULL vocab or out");
  if (index < 0 || index >= vocab->value.size())
    return arg_error("token index out of range");
  *out = vocab->value.tokens[static_cast<std::size_t>(index)].c_str();
  return PC_OK;
}

pc_status pc_vocab_count(const pc_vocab* vocab, int32_t index, uint64_t* out) {
  if (missing(vocab) || missing(out)) return arg_error("NULL vocab or out");
  if (index < 0 || index >= vocab->value.size())
    return arg_error("token index out of range");
  *out = vocab->value.counts[static_cast<std::size_t>(index)];
  return PC_OK;
}

pc_status pc_vocab_lookup(const pc_vocab* vocab, const char* token,
                          int32_t* out) {
  if (missing(vocab) || missing(token) || missing(out))
    return arg_error("NULL vocab, token, or out");
  *out = vocab->value.lookup(token);
  return PC_OK;
}

pc_status pc_vocab_save(const pc_vocab* vocab, const char* path) {
  if (missing(vocab) || missing(path)) return arg_error("NULL vocab or path");
  return guarded([&] { pipconcat::save_vocabulary(vocab->value, path); });
}

pc_status pc_vocab_load(const char* path, pc_vocab** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded(
      [&] { *out = new pc_vocab{pipconcat::load_vocabulary(path)}; });
}

void pc_vocab_free(pc_vocab* vocab) { delete vocab; }

/* ---- co-occurrence counts ------------------------------------------- */

pc_status pc_counts_build(const pc_corpus* corpus, const pc_vocab* vocab,
                          int32_t window, pc_counts** out) {
  if (missing(corpus) || missing(vocab) || missing(out))
    return arg_error("NULL corpus, vocab, or out");
  return guarded([&] {
    *out = new pc_counts{
        pipconcat::count_cooccurrences(corpus->value, vocab->value, window)};
  });
}

pc_status pc_counts_n(const pc_counts* counts, int32_t* out) {
  if (missing(counts) || missing(out)) return arg_error("NULL counts or out");
  *out = counts->value.n;
  return PC_OK;
}

pc_status pc_counts_window(const pc_counts* counts, int32_t* out) {
  if (missing(counts) || missing(out)) return arg_error("NULL counts or out");
  *out = counts->value.window;
  return PC_OK;
}

pc_status pc_counts_total(const pc_counts* counts, uint64_t* out) {
  if (missing(counts) || missing(out)) return arg_error("NULL counts or out");
  *out = counts->value.total;
  return PC_OK;
}

pc_status pc_counts_get(const pc_counts* counts, int32_t i, int32_t j,
                        uint64_t* out) {
  if (missing(counts) || missing(out)) return arg_error("NULL counts or out");
  if (i < 0 || i >= counts->value.n || j < 0 || j >= counts->value.n)
    return arg_error("count index out of range");
  *out = counts->value.get(i, j);
  return PC_OK;
}

pc_status pc_counts_save(const pc_counts* counts, const char* path) {
  if (missing(counts) || missing(path))
    return arg_error("NULL counts or path");
  return guarded([&] { pipconcat::save_counts(counts->value, path); });
}

pc_status pc_counts_load(const char* path, pc_counts** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded([&] { *out = new pc_counts{pipconcat::load_counts(path)}; });
}

void pc_counts_free(pc_counts* counts) { delete counts; }

/* ---- signal matrices ------------------------------------------------- */

pc_status pc_signal_build(const pc_counts* counts, int32_t kind, double beta,
                          int32_t allow_large, pc_signal** out) {
  if (missing(counts) || missing(out)) return arg_error("NULL counts or out");
  if (kind < PC_SIGNAL_LOGCOOC || kind > PC_SIGNAL_PPMI)
    return arg_error("kind must be logcooc(0), spmi(1), or ppmi(2)");
  return guarded([&] {
    *out = new pc_signal{pipconcat::build_signal(
        counts->value, static_cast<pipconcat::SignalKind>(kind), beta,
        allow_large != 0)};
  });
}

pc_status pc_signal_n(const pc_signal* signal, int32_t* out) {
  if (missing(signal) || missing(out)) return arg_error("NULL signal or out");
  *out = signal->value.n;
  return PC_OK;
}

pc_status pc_signal_kind(const pc_signal* signal, int32_t* out) {
  if (missing(signal) || missing(out)) return arg_error("NULL signal or out");
  *out = static_cast<int32_t>(signal->value.kind);
  return PC_OK;
}

pc_status pc_signal_get(const pc_signal* signal, int32_t i, int32_t j,
                        double* out) {
  if (missing(signal) || missing(out)) return arg_error("NULL signal or out");
  if (i < 0 || i >= signal->value.n || j < 0 || j >= signal->value.n)
    return arg_error("signal index out of range");
  *out = signal->value.data(i, j);
  return PC_OK;
}

pc_status pc_signal_save(const pc_signal* signal, const char* path) {
  if (missing(signal) || missing(path))
    return arg_error("NULL signal or path");
  return guarded([&] { pipconcat::save_signal(signal->value, path); });
}

pc_status pc_signal_load(const char* path, pc_signal** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded([&] { *out = new pc_signal{pipconcat::load_signal(path)}; });
}

void pc_signal_free(pc_signal* signal) { delete signal; }

pc_status pc_noise_estimate(const pc_signal* half_a, const pc_signal* half_b,
                            double* out) {
  if (missing(half_a) || missing(half_b) || missing(out))
    return arg_error("NULL signal or out");
  return guarded(
      [&] { *out = pipconcat::estimate_noise(half_a->value, half_b->value); });
}

/* ---- embeddings ------------------------------------------------------ */

pc_status pc_embed(const pc_signal* signal, double alpha, int32_t k,
                   pc_embedding** out) {
  if (missing(signal) || missing(out)) return arg_error("NULL signal or out");
  return guarded([&] {
    *out = from_core(pipconcat::embed(signal->value, alpha, k));
  });
}

pc_status pc_embedding_rows(const pc_embedding* e, int32_t* out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  *out = static_cast<int32_t>(e->data.rows());
  return PC_OK;
}

pc_status pc_embedding_cols(const pc_embedding* e, int32_t* out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  *out = static_cast<int32_t>(e->data.cols());
  return PC_OK;
}

pc_status pc_embedding_value(const pc_embedding* e, int32_t i, int32_t j,
                             double* out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  if (i < 0 || i >= e->data.rows() || j < 0 || j >= e->data.cols())
    return arg_error("embedding index out of range");
  *out = e->data(i, j);
  return PC_OK;
}

pc_status pc_embedding_spectrum(const pc_embedding* e, int32_t index,
                                double* out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  if (index < 0 || index >= static_cast<int32_t>(e->spectrum.size()))
    return arg_error("no spectrum stored at this index");
  *out = e->spectrum[static_cast<std::size_t>(index)];
  return PC_OK;
}

pc_status pc_embedding_column_norm(const pc_embedding* e, int32_t index,
                                   double* out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  if (index < 0 || index >= e->data.cols())
    return arg_error("column index out of range");
  *out = e->data.col(index).norm();
  return PC_OK;
}

pc_status pc_embedding_set_tokens(pc_embedding* e, const pc_vocab* vocab) {
  if (missing(e) || missing(vocab)) return arg_error("NULL embedding or vocab");
  if (static_cast<Eigen::Index>(vocab->value.tokens.size()) != e->data.rows()) {
    tls_error = "vocabulary size does not match embedding rows";
    return PC_ERR_VOCAB_MISMATCH;
  }
  e->tokens = vocab->value.tokens;
  return PC_OK;
}

pc_status pc_embedding_token(const pc_embedding* e, int32_t index,
                             const char** out) {
  if (missing(e) || missing(out)) return arg_error("NULL embedding or out");
  if (e->tokens.empty()) return arg_error("embedding carries no tokens");
  if (index < 0 || index >= static_cast<int32_t>(e->tokens.size()))
    return arg_error("token index out of range");
  *out = e->tokens[static_cast<std::size_t>(index)].c_str();
  return PC_OK;
}

pc_status pc_embedding_save_text(const pc_embedding* e, const char* path) {
  if (missing(e) || missing(path)) return arg_error("NULL embedding or path");
  if (e->tokens.empty())
    return arg_error("embedding carries no tokens; attach a vocabulary first");
  return guarded(
      [&] { pipconcat::save_embedding_text(e->data, e->tokens, path); });
}

pc_status pc_embedding_load_text(const char* path, pc_embedding** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded([&] {
    auto loaded = pipconcat::load_embedding_text(path);
    auto* handle = new pc_embedding;
    handle->data = std::move(loaded.data);
    handle->tokens = std::move(loaded.tokens);
    handle->label = path;
    *out = handle;
  });
}

void pc_embedding_free(pc_embedding* e) { delete e; }

pc_status pc_pip_loss(const pc_embedding* e1, const pc_embedding* e2,
                      double* out) {
  if (missing(e1) || missing(e2) || missing(out))
    return arg_error("NULL embedding or out");
  return guarded([&] { *out = pipconcat::pip_loss(e1->data, e2->data); });
}

/* ---- spectrum estimation & dimensionality --------------------------- */

pc_status pc_estimate_from_signal(const pc_signal* signal, double sigma,
                                  pc_estimate** out) {
  if (missing(signal) || missing(out)) return arg_error("NULL signal or out");
  return guarded([&] {
    const auto f = pipconcat::factorize(signal->value, signal->value.n);
    *out = new pc_estimate{
        pipconcat::threshold_spectrum(f.spectrum, sigma, signal->value.n)};
  });
}

pc_status pc_estimate_sigma(const pc_estimate* est, double* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  *out = est->value.sigma;
  return PC_OK;
}

pc_status pc_estimate_n(const pc_estimate* est, int32_t* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  *out = est->value.n;
  return PC_OK;
}

pc_status pc_estimate_rank(const pc_estimate* est, int32_t* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  *out = est->value.rank;
  return PC_OK;
}

pc_status pc_estimate_raw_value(const pc_estimate* est, int32_t index,
                                double* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  if (index < 0 || index >= static_cast<int32_t>(est->value.raw_spectrum.size()))
    return arg_error("raw spectrum index out of range");
  *out = est->value.raw_spectrum[static_cast<std::size_t>(index)];
  return PC_OK;
}

pc_status pc_estimate_ideal_value(const pc_estimate* est, int32_t index,
                                  double* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  if (index < 0 ||
      index >= static_cast<int32_t>(est->value.ideal_spectrum.size()))
    return arg_error("ideal spectrum index out of range");
  *out = est->value.ideal_spectrum[static_cast<std::size_t>(index)];
  return PC_OK;
}

pc_status pc_estimate_save(const pc_estimate* est, const char* path) {
  if (missing(est) || missing(path)) return arg_error("NULL estimate or path");
  return guarded([&] { pipconcat::save_estimate(est->value, path); });
}

pc_status pc_estimate_load(const char* path, pc_estimate** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded(
      [&] { *out = new pc_estimate{pipconcat::load_estimate(path)}; });
}

void pc_estimate_free(pc_estimate* est) { delete est; }

pc_status pc_pip_loss_curve(const pc_estimate* est, double alpha,
                            const int32_t* grid, int32_t grid_len,
                            int32_t trials, uint64_t seed,
                            double* out_losses) {
  if (missing(est) || missing(grid) || missing(out_losses))
    return arg_error("NULL estimate, grid, or out");
  if (grid_len < 1) return arg_error("grid_len must be >= 1");
  return guarded([&] {
    const std::vector<std::int32_t> k_grid(grid, grid + grid_len);
    const auto curve =
        pipconcat::pip_loss_curve(est->value, alpha, k_grid, trials, seed);
    for (std::size_t i = 0; i < curve.size(); ++i)
      out_losses[i] = curve[i].mean_loss;
  });
}

pc_status pc_pip_loss_curve_csv(const pc_estimate* est, double alpha,
                                int32_t trials, uint64_t seed,
                                const char* path) {
  if (missing(est) || missing(path)) return arg_error("NULL estimate or path");
  return guarded([&] {
    const auto grid = pipconcat::default_k_grid(est->value.rank);
    pipconcat::save_curve(
        pipconcat::pip_loss_curve(est->value, alpha, grid, trials, seed),
        path);
  });
}

pc_status pc_select_dimension(const pc_estimate* est, double alpha,
                              int32_t trials, uint64_t seed, int32_t* out) {
  if (missing(est) || missing(out)) return arg_error("NULL estimate or out");
  return guarded([&] {
    *out = pipconcat::select_dimension(est->value, alpha, trials, seed);
  });
}

/* ---- meta-embedding -------------------------------------------------- */

pc_status pc_weights_uniform(const int32_t* dims, int32_t n_sources,
                             double alpha, pc_weights** out) {
  if (missing(dims) || missing(out)) return arg_error("NULL dims or out");
  if (n_sources < 1) return arg_error("need at least one source");
  return guarded([&] {
    const std::vector<std::int32_t> ks(dims, dims + n_sources);
    *out = new pc_weights{pipconcat::uniform_weights(ks, alpha)};
  });
}

pc_status pc_weights_compute(int32_t mode, const double* ideal_spectrum,
                             int32_t ideal_len,
                             const double* const* source_spectra,
                             const int32_t* ks, int32_t n_sources,
                             double alpha, pc_weights** out) {
  if (missing(ideal_spectrum) || missing(source_spectra) || missing(ks) ||
      missing(out))
    return arg_error("NULL spectra, ks, or out");
  if (n_sources < 1) return arg_error("need at least one source");
  if (ideal_len < 1) return arg_error("ideal spectrum is empty");
  if (mode != PC_WEIGHTS_SW && mode != PC_WEIGHTS_DW)
    return arg_error("mode must be sw(1) or dw(2)");
  return guarded([&] {
    const std::vector<double> lam(ideal_spectrum, ideal_spectrum + ideal_len);
    std::vector<pipconcat::Spectrum> spectra;
    for (int32_t j = 0; j < n_sources; ++j) {
      pipconcat::Spectrum s;
      pipconcat::require(source_spectra[j] != nullptr && ks[j] >= 1,
                         ErrorCode::kInvalidArgument,
                         "bad source spectrum " + std::to_string(j + 1));
      s.values.assign(source_spectra[j], source_spectra[j] + ks[j]);
      s.origin = "source" + std::to_string(j + 1);
      spectra.push_back(std::move(s));
    }
    *out = new pc_weights{mode == PC_WEIGHTS_DW
                              ? pipconcat::dw_weights(lam, spectra, alpha)
                              : pipconcat::sw_weights(lam, spectra, alpha)};
  });
}

pc_status pc_weights_normalize(pc_weights* weights) {
  if (missing(weights)) return arg_error("NULL weights");
  return guarded([&] { pipconcat::normalize_weights(&weights->value); });
}

pc_status pc_weights_mode(const pc_weights* weights, int32_t* out) {
  if (missing(weights) || missing(out))
    return arg_error("NULL weights or out");
  *out = static_cast<int32_t>(weights->value.mode);
  return PC_OK;
}

pc_status pc_weights_source_count(const pc_weights* weights, int32_t* out) {
  if (missing(weights) || missing(out))
    return arg_error("NULL weights or out");
  *out = weights->value.source_count();
  return PC_OK;
}

pc_status pc_weights_dim(const pc_weights* weights, int32_t source,
                         int32_t* out) {
  if (missing(weights) || missing(out))
    return arg_error("NULL weights or out");
  if (source < 0 || source >= weights->value.source_count())
    return arg_error("source index out of range");
  *out = static_cast<int32_t>(
      weights->value.per_source[static_cast<std::size_t>(source)].size());
  return PC_OK;
}

pc_status pc_weights_value(const pc_weights* weights, int32_t source,
                           int32_t index, double* out) {
  if (missing(weights) || missing(out))
    return arg_error("NULL weights or out");
  if (source < 0 || source >= weights->value.source_count())
    return arg_error("source index out of range");
  const auto& block =
      weights->value.per_source[static_cast<std::size_t>(source)];
  if (index < 0 || index >= static_cast<int32_t>(block.size()))
    return arg_error("weight index out of range");
  *out = block[static_cast<std::size_t>(index)];
  return PC_OK;
}

pc_status pc_weights_save(const pc_weights* weights, const char* path) {
  if (missing(weights) || missing(path))
    return arg_error("NULL weights or path");
  return guarded([&] { pipconcat::save_weights(weights->value, path); });
}

pc_status pc_weights_load(const char* path, pc_weights** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded(
      [&] { *out = new pc_weights{pipconcat::load_weights(path)}; });
}

void pc_weights_free(pc_weights* weights) { delete weights; }

pc_status pc_concat(const pc_embedding* const* sources, int32_t n_sources,
                    const pc_weights* weights, pc_embedding** out) {
  if (missing(weights) || missing(out)) return arg_error("NULL weights or out");
  std::vector<pipconcat::EmbeddingMatrix> cores;
  if (const pc_status s = gather_sources(sources, n_sources, &cores);
      s != PC_OK)
    return s;
  return guarded([&] {
    auto* handle = from_core(pipconcat::concatenate(cores, weights->value));
    inherit_tokens(sources, n_sources, handle);
    *out = handle;
  });
}

pc_status pc_avg_baseline(const pc_embedding* const* sources,
                          int32_t n_sources, pc_embedding** out) {
  if (missing(out)) return arg_error("NULL out");
  std::vector<pipconcat::EmbeddingMatrix> cores;
  if (const pc_status s = gather_sources(sources, n_sources, &cores);
      s != PC_OK)
    return s;
  return guarded([&] {
    auto* handle = from_core(pipconcat::avg_baseline(cores));
    inherit_tokens(sources, n_sources, handle);
    *out = handle;
  });
}

pc_status pc_svd_baseline(const pc_embedding* const* sources,
                          int32_t n_sources, int32_t out_dim,
                          pc_embedding** out) {
  if (missing(out)) return arg_error("NULL out");
  std::vector<pipconcat::EmbeddingMatrix> cores;
  if (const pc_status s = gather_sources(sources, n_sources, &cores);
      s != PC_OK)
    return s;
  return guarded([&] {
    auto* handle = from_core(pipconcat::svd_baseline(cores, out_dim));
    inherit_tokens(sources, n_sources, handle);
    *out = handle;
  });
}

/* ---- evaluation ------------------------------------------------------ */

pc_status pc_similarity_load(const char* path, pc_similarity** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded(
      [&] { *out = new pc_similarity{pipconcat::load_similarity(path)}; });
}

pc_status pc_similarity_size(const pc_similarity* ds, int32_t* out) {
  if (missing(ds) || missing(out)) return arg_error("NULL dataset or out");
  *out = static_cast<int32_t>(ds->value.pairs.size());
  return PC_OK;
}

void pc_similarity_free(pc_similarity* ds) { delete ds; }

pc_status pc_analogy_load(const char* path, pc_analogy** out) {
  if (missing(path) || missing(out)) return arg_error("NULL path or out");
  return guarded(
      [&] { *out = new pc_analogy{pipconcat::load_analogy(path)}; });
}

pc_status pc_analogy_size(const pc_analogy* ds, int32_t* out) {
  if (missing(ds) || missing(out)) return arg_error("NULL dataset or out");
  *out = static_cast<int32_t>(ds->value.questions.size());
  return PC_OK;
}

void pc_analogy_free(pc_analogy* ds) { delete ds; }

pc_status pc_eval_spearman(const pc_embedding* e, const pc_similarity* ds,
                           double* out_rho, int32_t* out_covered,
                           int32_t* out_total) {
  if (missing(e) || missing(ds) || missing(out_rho) || missing(out_covered) ||
      missing(out_total))
    return arg_error("NULL embedding, dataset, or out");
  if (e->tokens.empty()) return arg_error("embedding carries no tokens");
  return guarded([&] {
    const auto r = pipconcat::spearman_eval(e->data, e->tokens, ds->value);
    *out_rho = r.value;
    *out_covered = r.covered;
    *out_total = r.total;
  });
}

pc_status pc_eval_cosadd(const pc_embedding* e, const pc_analogy* ds,
                         double* out_accuracy, int32_t* out_covered,
                         int32_t* out_total) {
  if (missing(e) || missing(ds) || missing(out_accuracy) ||
      missing(out_covered) || missing(out_total))
    return arg_error("NULL embedding, dataset, or out");
  if (e->tokens.empty()) return arg_error("embedding carries no tokens");
  return guarded([&] {
    const auto r = pipconcat::cosadd_eval(e->data, e->tokens, ds->value);
    *out_accuracy = r.value;
    *out_covered = r.covered;
    *out_total = r.total;
  });
}

pc_status pc_eval_result_save(const char* dataset, const char* metric,
                              double value, int32_t covered, int32_t total,
                              const char* path) {
  if (missing(dataset) || missing(metric) || missing(path))
    return arg_error("NULL dataset, metric, or path");
  return guarded([&] {
    pipconcat::EvalResult r;
    r.value = value;
    r.covered = covered;
    r.total = total;
    pipconcat::save_eval_result(dataset, metric, r, path);
  });
}

/* ---- numerical verification suites ---------------------------------- */

pc_status pc_verify_projection_identity(int32_t instances, uint64_t seed,
                                        int32_t* out_violations,
                                        double* out_worst,
                                        double* out_tolerance) {
  if (missing(out_violations) || missing(out_worst) || missing(out_tolerance))
    return arg_error("NULL out");
  return guarded([&] {
    const auto r = pipconcat::lemma1_suite(instances, seed);
    *out_violations = r.violations;
    *out_worst = r.worst;
    *out_tolerance = r.tolerance;
  });
}

pc_status pc_verify_loss_bound(int32_t instances, const int32_t* ks,
                               int32_t n_sources, uint64_t seed,
                               int32_t flat_spectrum, int32_t* out_violations,
                               double* out_worst, double* out_tolerance) {
  if (missing(ks) || missing(out_violations) || missing(out_worst) ||
      missing(out_tolerance))
    return arg_error("NULL ks or out");
  if (n_sources < 1) return arg_error("need at least one source width");
  return guarded([&] {
    const std::vector<std::int32_t> widths(ks, ks + n_sources);
    const auto r = pipconcat::theorem1_suite(instances, widths, seed,
                                             flat_spectrum != 0);
    *out_violations = r.violations;
    *out_worst = r.worst;
    *out_tolerance = r.tolerance;
  });
}

pc_status pc_verify_weight_grid(int32_t instances, uint64_t seed,
                                int32_t* out_violations, double* out_worst,
                                double* out_tolerance) {
  if (missing(out_violations) || missing(out_worst) || missing(out_tolerance))
    return arg_error("NULL out");
  return guarded([&] {
    const auto r = pipconcat::weight_grid_suite(instances, seed);
    *out_violations = r.violations;
    *out_worst = r.worst;
    *out_tolerance = r.tolerance;
  });
}

pc_status pc_verify_bound_report(uint64_t seed, const char* path) {
  if (missing(path)) return arg_error("NULL path");
  return guarded(
      [&] { pipconcat::save_bound_report(pipconcat::bound_sample(seed), path); });
}

} /* extern "C" */
