/* pipconcat — spectral word embeddings, PIP-loss dimensionality selection,
 * and weighted meta-embedding concatenation.
 *
 * C interface: opaque handles + integer status codes. Every function that
 * can fail returns pc_status; on failure the thread-local message from
 * pc_error_message() describes what went wrong. Out-parameters are written
 * only on PC_OK. Handles are freed with their pc_*_free function; freeing
 * NULL is a no-op. Strings returned through const char* stay valid while
 * the handle that owns them lives.
 */
#ifndef PIPCONCAT_H_
#define PIPCONCAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PC_API __declspec(dllexport)
#else
#define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t pc_status;

enum {
  PC_OK = 0,
  PC_ERR_INVALID_ARGUMENT = 1,
  PC_ERR_EMPTY_CORPUS = 2,
  PC_ERR_SPLIT_TOO_SMALL = 3,
  PC_ERR_INVALID_BETA = 4,
  PC_ERR_SVD_FAILED = 5,
  PC_ERR_K_TOO_LARGE = 6,
  PC_ERR_VOCAB_MISMATCH = 7,
  PC_ERR_ZERO_SINGULAR_VALUE = 8,
  PC_ERR_DEGENERATE_SPECTRUM = 9,
  PC_ERR_INSUFFICIENT_COVERAGE = 10,
  PC_ERR_MATRIX_TOO_LARGE = 11,
  PC_ERR_FILE_NOT_FOUND = 12,
  PC_ERR_PARSE = 13,
  PC_ERR_IO = 14,
  PC_ERR_INTERNAL = 100
};

/* Signal kinds. */
enum {
  PC_SIGNAL_LOGCOOC = 0,
  PC_SIGNAL_SPMI = 1,
  PC_SIGNAL_PPMI = 2,
  PC_SIGNAL_SYNTHETIC = 3
};

/* Concatenation weight modes. */
enum { PC_WEIGHTS_UW = 0, PC_WEIGHTS_SW = 1, PC_WEIGHTS_DW = 2 };

PC_API const char* pc_version(void);
PC_API const char* pc_status_name(pc_status status);
/* Thread-local detail for the most recent failure on this thread. */
PC_API const char* pc_error_message(void);

/* Deterministic seed splitting: mixes a master seed with a domain label and
 * an index so independent pipeline stages never share a random stream. */
PC_API uint64_t pc_derive_seed(uint64_t seed, const char* domain,
                               uint64_t index);

typedef struct pc_corpus pc_corpus;
typedef struct pc_vocab pc_vocab;
typedef struct pc_counts pc_counts;
typedef struct pc_signal pc_signal;
typedef struct pc_embedding pc_embedding;
typedef struct pc_estimate pc_estimate;
typedef struct pc_weights pc_weights;
typedef struct pc_similarity pc_similarity;
typedef struct pc_analogy pc_analogy;

/* ---- corpus ---------------------------------------------------------- */

/* Whitespace-tokenized, lowercased, edge-punctuation-stripped sentences;
 * lines longer than block_tokens are chunked. block_tokens <= 0 uses the
 * default of 1000. */
PC_API pc_status pc_corpus_load(const char* path, int32_t block_tokens,
                                pc_corpus** out);
PC_API pc_status pc_corpus_from_text(const char* text, int32_t block_tokens,
                                     pc_corpus** out);
PC_API pc_status pc_corpus_sentence_count(const pc_corpus* corpus,
                                          uint64_t* out);
PC_API pc_status pc_corpus_token_count(const pc_corpus* corpus, uint64_t* out);
/* Random half-split by sentence (seeded shuffle; first half gets the extra
 * sentence when the count is odd). */
PC_API pc_status pc_corpus_split(const pc_corpus* corpus, uint64_t seed,
                                 pc_corpus** out_a, pc_corpus** out_b);
PC_API void pc_corpus_free(pc_corpus* corpus);

/* ---- vocabulary ------------------------------------------------------ */

PC_API pc_status pc_vocab_build(const pc_corpus* corpus, int32_t max_vocab,
                                pc_vocab** out);
PC_API pc_status pc_vocab_size(const pc_vocab* vocab, int32_t* out);
PC_API pc_status pc_vocab_token(const pc_vocab* vocab, int32_t index,
                                const char** out);
PC_API pc_status pc_vocab_count(const pc_vocab* vocab, int32_t index,
                                uint64_t* out);
/* Writes -1 for out-of-vocabulary tokens. */
PC_API pc_status pc_vocab_lookup(const pc_vocab* vocab, const char* token,
                                 int32_t* out);
PC_API pc_status pc_vocab_save(const pc_vocab* vocab, const char* path);
PC_API pc_status pc_vocab_load(const char* path, pc_vocab** out);
PC_API void pc_vocab_free(pc_vocab* vocab);

/* ---- co-occurrence counts ------------------------------------------- */

PC_API pc_status pc_counts_build(const pc_corpus* corpus,
                                 const pc_vocab* vocab, int32_t window,
                                 pc_counts** out);
PC_API pc_status pc_counts_n(const pc_counts* counts, int32_t* out);
PC_API pc_status pc_counts_window(const pc_counts* counts, int32_t* out);
PC_API pc_status pc_counts_total(const pc_counts* counts, uint64_t* out);
PC_API pc_status pc_counts_get(const pc_counts* counts, int32_t i, int32_t j,
                               uint64_t* out);
PC_API pc_status pc_counts_save(const pc_counts* counts, const char* path);
PC_API pc_status pc_counts_load(const char* path, pc_counts** out);
PC_API void pc_counts_free(pc_counts* counts);

/* ---- signal matrices ------------------------------------------------- */

/* kind is one of PC_SIGNAL_{LOGCOOC,SPMI,PPMI}; beta only matters for SPMI.
 * Vocabularies above 8192 are refused unless allow_large is nonzero. */
PC_API pc_status pc_signal_build(const pc_counts* counts, int32_t kind,
                                 double beta, int32_t allow_large,
                                 pc_signal** out);
PC_API pc_status pc_signal_n(const pc_signal* signal, int32_t* out);
PC_API pc_status pc_signal_kind(const pc_signal* signal, int32_t* out);
PC_API pc_status pc_signal_get(const pc_signal* signal, int32_t i, int32_t j,
                               double* out);
PC_API pc_status pc_signal_save(const pc_signal* signal, const char* path);
PC_API pc_status pc_signal_load(const char* path, pc_signal** out);
PC_API void pc_signal_free(pc_signal* signal);

/* (1/(2n)) * Frobenius norm of the difference of two same-kind signals
 * built on the two corpus halves. */
PC_API pc_status pc_noise_estimate(const pc_signal* half_a,
                                   const pc_signal* half_b, double* out);

/* ---- embeddings ------------------------------------------------------ */

/* E = U[:, 1:k] * diag(sigma)^alpha from the signal's symmetric
 * factorization (singular values = |eigenvalues|, descending). */
PC_API pc_status pc_embed(const pc_signal* signal, double alpha, int32_t k,
                          pc_embedding** out);
PC_API pc_status pc_embedding_rows(const pc_embedding* e, int32_t* out);
PC_API pc_status pc_embedding_cols(const pc_embedding* e, int32_t* out);
PC_API pc_status pc_embedding_value(const pc_embedding* e, int32_t i,
                                    int32_t j, double* out);
/* Singular value the column was built from (PC_ERR_INVALID_ARGUMENT when
 * the handle carries no spectrum, e.g. loaded from a text file). */
PC_API pc_status pc_embedding_spectrum(const pc_embedding* e, int32_t index,
                                       double* out);
/* Euclidean norm of one column (norm^(1/alpha) recovers the singular value
 * of a factory-built column). */
PC_API pc_status pc_embedding_column_norm(const pc_embedding* e, int32_t index,
                                          double* out);
/* Attach row tokens (needed for text dumps and evaluation). */
PC_API pc_status pc_embedding_set_tokens(pc_embedding* e,
                                         const pc_vocab* vocab);
PC_API pc_status pc_embedding_token(const pc_embedding* e, int32_t index,
                                    const char** out);
/* word2vec text format; requires tokens. */
PC_API pc_status pc_embedding_save_text(const pc_embedding* e,
                                        const char* path);
PC_API pc_status pc_embedding_load_text(const char* path, pc_embedding** out);
PC_API void pc_embedding_free(pc_embedding* e);

/* Frobenius norm of the difference of the two PIP matrices E E^T. */
PC_API pc_status pc_pip_loss(const pc_embedding* e1, const pc_embedding* e2,
                             double* out);

/* ---- spectrum estimation & dimensionality --------------------------- */

/* Full factorization of the signal, then the noise threshold
 * lambda_i = max(raw_i - 2 sigma sqrt(n), 0); survivors define the rank. */
PC_API pc_status pc_estimate_from_signal(const pc_signal* signal, double sigma,
                                         pc_estimate** out);
PC_API pc_status pc_estimate_sigma(const pc_estimate* est, double* out);
PC_API pc_status pc_estimate_n(const pc_estimate* est, int32_t* out);
PC_API pc_status pc_estimate_rank(const pc_estimate* est, int32_t* out);
PC_API pc_status pc_estimate_raw_value(const pc_estimate* est, int32_t index,
                                       double* out);
PC_API pc_status pc_estimate_ideal_value(const pc_estimate* est, int32_t index,
                                         double* out);
PC_API pc_status pc_estimate_save(const pc_estimate* est, const char* path);
PC_API pc_status pc_estimate_load(const char* path, pc_estimate** out);
PC_API void pc_estimate_free(pc_estimate* est);

/* Monte-Carlo mean PIP loss against the rank-d ideal for each k in grid
 * (values written to out_losses, grid_len entries). */
PC_API pc_status pc_pip_loss_curve(const pc_estimate* est, double alpha,
                                   const int32_t* grid, int32_t grid_len,
                                   int32_t trials, uint64_t seed,
                                   double* out_losses);
/* Same curve over 1..rank written as CSV `k,mean_pip_loss`. */
PC_API pc_status pc_pip_loss_curve_csv(const pc_estimate* est, double alpha,
                                       int32_t trials, uint64_t seed,
                                       const char* path);
/* argmin of the Monte-Carlo curve over k = 1..rank (ties: smaller k). */
PC_API pc_status pc_select_dimension(const pc_estimate* est, double alpha,
                                     int32_t trials, uint64_t seed,
                                     int32_t* out);

/* ---- meta-embedding -------------------------------------------------- */

/* Uniform weights: dims[i] columns per source, all weights 1. */
PC_API pc_status pc_weights_uniform(const int32_t* dims, int32_t n_sources,
                                    double alpha, pc_weights** out);
/* Closed-form weights. mode is PC_WEIGHTS_SW or PC_WEIGHTS_DW;
 * ideal_spectrum holds at least sum(ks) values; source_spectra[j] points at
 * ks[j] singular values of source j (all strictly positive). */
PC_API pc_status pc_weights_compute(int32_t mode, const double* ideal_spectrum,
                                    int32_t ideal_len,
                                    const double* const* source_spectra,
                                    const int32_t* ks, int32_t n_sources,
                                    double alpha, pc_weights** out);
/* Rescale so the per-source mean weights sum to 1. */
PC_API pc_status pc_weights_normalize(pc_weights* weights);
PC_API pc_status pc_weights_mode(const pc_weights* weights, int32_t* out);
PC_API pc_status pc_weights_source_count(const pc_weights* weights,
                                         int32_t* out);
PC_API pc_status pc_weights_dim(const pc_weights* weights, int32_t source,
                                int32_t* out);
PC_API pc_status pc_weights_value(const pc_weights* weights, int32_t source,
                                  int32_t index, double* out);
PC_API pc_status pc_weights_save(const pc_weights* weights, const char* path);
PC_API pc_status pc_weights_load(const char* path, pc_weights** out);
PC_API void pc_weights_free(pc_weights* weights);

/* Column-scaled row-wise concatenation; tokens are inherited from the first
 * source that has them. */
PC_API pc_status pc_concat(const pc_embedding* const* sources,
                           int32_t n_sources, const pc_weights* weights,
                           pc_embedding** out);
/* Zero-pad to the widest source and average. */
PC_API pc_status pc_avg_baseline(const pc_embedding* const* sources,
                                 int32_t n_sources, pc_embedding** out);
/* Rank-out_dim thin-SVD factor of the unweighted concatenation. */
PC_API pc_status pc_svd_baseline(const pc_embedding* const* sources,
                                 int32_t n_sources, int32_t out_dim,
                                 pc_embedding** out);

/* ---- evaluation ------------------------------------------------------ */

PC_API pc_status pc_similarity_load(const char* path, pc_similarity** out);
PC_API pc_status pc_similarity_size(const pc_similarity* ds, int32_t* out);
PC_API void pc_similarity_free(pc_similarity* ds);
PC_API pc_status pc_analogy_load(const char* path, pc_analogy** out);
PC_API pc_status pc_analogy_size(const pc_analogy* ds, int32_t* out);
PC_API void pc_analogy_free(pc_analogy* ds);

/* Spearman rank correlation between cosine similarities and human scores;
 * embedding must carry tokens. */
PC_API pc_status pc_eval_spearman(const pc_embedding* e,
                                  const pc_similarity* ds, double* out_rho,
                                  int32_t* out_covered, int32_t* out_total);
/* CosAdd analogy accuracy (query words excluded from candidates). */
PC_API pc_status pc_eval_cosadd(const pc_embedding* e, const pc_analogy* ds,
                                double* out_accuracy, int32_t* out_covered,
                                int32_t* out_total);
/* JSON {dataset, metric, value, covered, total}. */
PC_API pc_status pc_eval_result_save(const char* dataset, const char* metric,
                                     double value, int32_t covered,
                                     int32_t total, const char* path);

/* ---- numerical verification suites ---------------------------------- */

/* Each suite writes: instance count run, violation count, the worst
 * residual/excess seen, and the tolerance applied. */
PC_API pc_status pc_verify_projection_identity(int32_t instances,
                                               uint64_t seed,
                                               int32_t* out_violations,
                                               double* out_worst,
                                               double* out_tolerance);
/* Bound-vs-loss suite on synthetic instances with the given source widths
 * (n = 60, d = 20). flat_spectrum exercises the constant-spectrum case. */
PC_API pc_status pc_verify_loss_bound(int32_t instances, const int32_t* ks,
                                      int32_t n_sources, uint64_t seed,
                                      int32_t flat_spectrum,
                                      int32_t* out_violations,
                                      double* out_worst,
                                      double* out_tolerance);
PC_API pc_status pc_verify_weight_grid(int32_t instances, uint64_t seed,
                                       int32_t* out_violations,
                                       double* out_worst,
                                       double* out_tolerance);
/* Evaluate the bias/variance bound on one seeded synthetic two-source
 * instance and write the breakdown JSON (bias, per-source magnitude and
 * directional variances, total, actual loss). */
PC_API pc_status pc_verify_bound_report(uint64_t seed, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PIPCONCAT_H_ */
