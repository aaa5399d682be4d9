// Command-line driver for the pipconcat pipeline. Talks to the library
// exclusively through the public C API: machine output (JSON/CSV) goes to
// stdout or files, diagnostics to stderr, exit code 0 only on success.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipconcat.h"

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

struct CliFailure {
  pc_status status;
};

void check(pc_status status) {
  if (status != PC_OK) throw CliFailure{status};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::fprintf(stderr, "error: invalid-argument: %s\n", message.c_str());
  std::exit(2);
}

// RAII wrapper so every handle is released on scope exit / exceptions.
template <typename T, void (*FreeFn)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { FreeFn(ptr_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr_(other.ptr_) { other.ptr_ = nullptr; }
  Handle& operator=(Handle&& other) noexcept {
    if (this != &other) {
      FreeFn(ptr_);
      ptr_ = other.ptr_;
      other.ptr_ = nullptr;
    }
    return *this;
  }
  T** out() {
    FreeFn(ptr_);
    ptr_ = nullptr;
    return &ptr_;
  }
  T* get() const { return ptr_; }
  operator T*() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using CorpusH = Handle<pc_corpus, pc_corpus_free>;
using VocabH = Handle<pc_vocab, pc_vocab_free>;
using CountsH = Handle<pc_counts, pc_counts_free>;
using SignalH = Handle<pc_signal, pc_signal_free>;
using EmbeddingH = Handle<pc_embedding, pc_embedding_free>;
using EstimateH = Handle<pc_estimate, pc_estimate_free>;
using WeightsH = Handle<pc_weights, pc_weights_free>;
using SimilarityH = Handle<pc_similarity, pc_similarity_free>;
using AnalogyH = Handle<pc_analogy, pc_analogy_free>;

// ---- run configuration --------------------------------------------------

struct RunConfig {
  std::string corpus;
  std::int32_t max_vocab = 20000;
  std::int32_t window = 5;
  double alpha = 0.5;
  double beta = 3.0;
  std::string signal = "ppmi";
  std::uint64_t seed = 42;
  std::int32_t trials = 3;
  std::string out_dir = ".";
  bool allow_large = false;
};

// CLI-provided values; unset fields fall back to config file, then defaults.
struct Overrides {
  std::string config_path;
  std::optional<std::string> corpus, signal, out_dir;
  std::optional<std::int32_t> max_vocab, window, trials;
  std::optional<double> alpha, beta;
  std::optional<std::uint64_t> seed;
  bool allow_large = false;
};

void add_common_options(CLI::App* cmd, Overrides* ov, bool needs_corpus) {
  cmd->add_option("--config", ov->config_path,
                  "JSON run configuration (flags override file values)");
  auto* corpus =
      cmd->add_option("--corpus", ov->corpus, "input corpus, one text per line");
  if (needs_corpus) corpus->required(false);
  cmd->add_option("--max-vocab", ov->max_vocab,
                  "keep the most frequent tokens (default 20000)");
  cmd->add_option("--window", ov->window,
                  "co-occurrence window in tokens (default 5)");
  cmd->add_option("--alpha", ov->alpha,
                  "singular-value exponent for embeddings (default 0.5)");
  cmd->add_option("--beta", ov->beta, "SPMI shift (default 3.0)");
  cmd->add_option("--signal", ov->signal,
                  "signal kind: logcooc|spmi|ppmi (default ppmi)");
  cmd->add_option("--seed", ov->seed, "master random seed (default 42)");
  cmd->add_option("--trials", ov->trials,
                  "Monte-Carlo trials for dimension selection (default 3)");
  cmd->add_option("--out", ov->out_dir, "output directory (default .)");
  cmd->add_flag("--allow-large", ov->allow_large,
                "permit dense signal matrices above the 8192 cap");
}

RunConfig resolve_config(const Overrides& ov) {
  RunConfig cfg;
  if (!ov.config_path.empty()) {
    std::ifstream in(ov.config_path);
    if (!in.is_open()) {
      std::fprintf(stderr, "error: file-not-found: cannot open config %s\n",
                   ov.config_path.c_str());
      std::exit(2);
    }
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      std::fprintf(stderr, "error: parse-error: %s: %s\n",
                   ov.config_path.c_str(), e.what());
      std::exit(2);
    }
    static const std::set<std::string> known = {
        "corpus", "max_vocab", "window", "alpha",   "beta",
        "signal", "seed",      "trials", "out_dir", "allow_large"};
    try {
      for (const auto& [key, value] : j.items()) {
        if (!known.count(key))
          usage_error(ov.config_path + ": unknown config key `" + key + "`");
        if (key == "corpus") cfg.corpus = value.get<std::string>();
        if (key == "max_vocab") cfg.max_vocab = value.get<std::int32_t>();
        if (key == "window") cfg.window = value.get<std::int32_t>();
        if (key == "alpha") cfg.alpha = value.get<double>();
        if (key == "beta") cfg.beta = value.get<double>();
        if (key == "signal") cfg.signal = value.get<std::string>();
        if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        if (key == "trials") cfg.trials = value.get<std::int32_t>();
        if (key == "out_dir") cfg.out_dir = value.get<std::string>();
        if (key == "allow_large") cfg.allow_large = value.get<bool>();
      }
    } catch (const json::exception& e) {
      std::fprintf(stderr, "error: parse-error: %s: %s\n",
                   ov.config_path.c_str(), e.what());
      std::exit(2);
    }
  }
  if (ov.corpus) cfg.corpus = *ov.corpus;
  if (ov.max_vocab) cfg.max_vocab = *ov.max_vocab;
  if (ov.window) cfg.window = *ov.window;
  if (ov.alpha) cfg.alpha = *ov.alpha;
  if (ov.beta) cfg.beta = *ov.beta;
  if (ov.signal) cfg.signal = *ov.signal;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  if (ov.allow_large) cfg.allow_large = true;
  return cfg;
}

std::int32_t signal_kind_id(const std::string& name) {
  if (name == "logcooc") return PC_SIGNAL_LOGCOOC;
  if (name == "spmi") return PC_SIGNAL_SPMI;
  if (name == "ppmi") return PC_SIGNAL_PPMI;
  usage_error("unknown signal kind `" + name + "` (use logcooc|spmi|ppmi)");
}

std::vector<std::string> selected_kinds(const std::string& name) {
  if (name == "all") return {"logcooc", "spmi", "ppmi"};
  signal_kind_id(name);  // validates
  return {name};
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void require_corpus(const RunConfig& cfg) {
  if (cfg.corpus.empty())
    usage_error("no corpus given (use --corpus or the config file)");
}

void emit(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

// ---- shared pipeline steps ----------------------------------------------

struct BaseArtifacts {
  CorpusH corpus;
  VocabH vocab;
  CountsH counts;
};

BaseArtifacts build_base(const RunConfig& cfg) {
  require_corpus(cfg);
  BaseArtifacts base;
  check(pc_corpus_load(cfg.corpus.c_str(), 0, base.corpus.out()));
  check(pc_vocab_build(base.corpus, cfg.max_vocab, base.vocab.out()));
  check(pc_counts_build(base.corpus, base.vocab, cfg.window,
                        base.counts.out()));
  return base;
}

SignalH build_signal_for(const RunConfig& cfg, const pc_counts* counts,
                         const std::string& kind) {
  SignalH signal;
  check(pc_signal_build(counts, signal_kind_id(kind), cfg.beta,
                        cfg.allow_large ? 1 : 0, signal.out()));
  return signal;
}

// Half-split noise estimate + thresholded spectrum for one signal kind.
EstimateH compute_estimate(const RunConfig& cfg, const BaseArtifacts& base,
                           const std::string& kind, double* sigma_out) {
  CorpusH half_a;
  CorpusH half_b;
  check(pc_corpus_split(base.corpus, pc_derive_seed(cfg.seed, "split", 0),
                        half_a.out(), half_b.out()));
  CountsH counts_a;
  CountsH counts_b;
  check(pc_counts_build(half_a, base.vocab, cfg.window, counts_a.out()));
  check(pc_counts_build(half_b, base.vocab, cfg.window, counts_b.out()));
  const SignalH signal_a = build_signal_for(cfg, counts_a, kind);
  const SignalH signal_b = build_signal_for(cfg, counts_b, kind);
  double sigma = 0.0;
  check(pc_noise_estimate(signal_a, signal_b, &sigma));
  if (sigma_out != nullptr) *sigma_out = sigma;

  const SignalH full = build_signal_for(cfg, base.counts, kind);
  EstimateH estimate;
  check(pc_estimate_from_signal(full, sigma, estimate.out()));
  return estimate;
}

std::vector<double> ideal_prefix(const pc_estimate* est, std::int32_t count) {
  std::vector<double> values(static_cast<std::size_t>(count));
  for (std::int32_t i = 0; i < count; ++i)
    check(pc_estimate_ideal_value(est, i, &values[static_cast<std::size_t>(i)]));
  return values;
}

// ---- subcommands ---------------------------------------------------------

int cmd_build(const RunConfig& cfg, const std::string& signal_sel) {
  const BaseArtifacts base = build_base(cfg);
  const std::string vocab_path = out_path(cfg, "vocab.tsv");
  const std::string counts_path = out_path(cfg, "counts.tsv");
  check(pc_vocab_save(base.vocab, vocab_path.c_str()));
  check(pc_counts_save(base.counts, counts_path.c_str()));

  json signals = json::object();
  for (const std::string& kind : selected_kinds(signal_sel)) {
    const SignalH signal = build_signal_for(cfg, base.counts, kind);
    const std::string path = out_path(cfg, "signal_" + kind + ".bin");
    check(pc_signal_save(signal, path.c_str()));
    signals[kind] = path;
  }
  emit({{"vocab", vocab_path}, {"counts", counts_path}, {"signals", signals}});
  return 0;
}

int cmd_estimate(const RunConfig& cfg, const std::string& signal_sel) {
  const BaseArtifacts base = build_base(cfg);
  json out = json::object();
  for (const std::string& kind : selected_kinds(signal_sel)) {
    double sigma = 0.0;
    const EstimateH estimate = compute_estimate(cfg, base, kind, &sigma);
    const std::string path = out_path(cfg, "estimate_" + kind + ".json");
    check(pc_estimate_save(estimate, path.c_str()));
    std::int32_t rank = 0;
    check(pc_estimate_rank(estimate, &rank));
    out[kind] = {{"path", path}, {"sigma", sigma}, {"rank", rank}};
  }
  emit({{"estimates", out}});
  return 0;
}

int cmd_embed(const RunConfig& cfg, const std::string& signal_sel,
              std::int32_t k_flag, const std::string& estimate_path,
              const std::string& curve_out) {
  const std::vector<std::string> kinds = selected_kinds(signal_sel);
  if (kinds.size() != 1)
    usage_error("embed needs a single --signal kind, not `all`");
  const std::string kind = kinds.front();

  const BaseArtifacts base = build_base(cfg);
  const SignalH signal = build_signal_for(cfg, base.counts, kind);

  std::int32_t k = k_flag;
  if (k <= 0 || !curve_out.empty()) {
    EstimateH estimate;
    if (!estimate_path.empty()) {
      check(pc_estimate_load(estimate_path.c_str(), estimate.out()));
    } else {
      estimate = compute_estimate(cfg, base, kind, nullptr);
    }
    const std::uint64_t select_seed = pc_derive_seed(
        cfg.seed, "select", static_cast<std::uint64_t>(signal_kind_id(kind)));
    if (!curve_out.empty())
      check(pc_pip_loss_curve_csv(estimate, cfg.alpha, cfg.trials, select_seed,
                                  curve_out.c_str()));
    if (k <= 0)
      check(pc_select_dimension(estimate, cfg.alpha, cfg.trials, select_seed,
                                &k));
  }

  EmbeddingH embedding;
  check(pc_embed(signal, cfg.alpha, k, embedding.out()));
  check(pc_embedding_set_tokens(embedding, base.vocab));
  const std::string path = out_path(cfg, "embedding_" + kind + ".txt");
  check(pc_embedding_save_text(embedding, path.c_str()));

  json out = {{"embedding", path}, {"kind", kind}, {"k", k},
              {"alpha", cfg.alpha}};
  if (!curve_out.empty()) out["curve"] = curve_out;
  emit(out);
  return 0;
}

int cmd_meta(const RunConfig& cfg, const std::vector<std::string>& source_paths,
             const std::string& mode, const std::vector<std::string>& ideals,
             bool normalize, std::int32_t svd_dim) {
  if (source_paths.empty()) usage_error("meta needs at least one --source");

  std::vector<EmbeddingH> sources;
  std::vector<const pc_embedding*> raw;
  std::vector<std::int32_t> dims;
  for (const std::string& path : source_paths) {
    EmbeddingH e;
    check(pc_embedding_load_text(path.c_str(), e.out()));
    std::int32_t k = 0;
    check(pc_embedding_cols(e, &k));
    dims.push_back(k);
    sources.push_back(std::move(e));
  }
  for (const auto& e : sources) raw.push_back(e.get());
  const std::int32_t total_dim =
      std::accumulate(dims.begin(), dims.end(), std::int32_t{0});

  EmbeddingH meta;
  WeightsH weights;
  std::string weights_path;

  if (mode == "avg") {
    check(pc_avg_baseline(raw.data(), static_cast<std::int32_t>(raw.size()),
                          meta.out()));
  } else if (mode == "svd") {
    check(pc_svd_baseline(raw.data(), static_cast<std::int32_t>(raw.size()),
                          svd_dim, meta.out()));
  } else if (mode == "uw") {
    check(pc_weights_uniform(dims.data(), static_cast<std::int32_t>(dims.size()),
                             cfg.alpha, weights.out()));
  } else if (mode == "sw" || mode == "dw") {
    // Ideal spectrum: one estimate indexed globally across the concatenation,
    // or one estimate per source contributing its own truncated block.
    std::vector<double> lam;
    if (ideals.size() == 1) {
      EstimateH est;
      check(pc_estimate_load(ideals.front().c_str(), est.out()));
      std::int32_t rank = 0;
      check(pc_estimate_rank(est, &rank));
      if (rank < total_dim)
        usage_error("estimate rank " + std::to_string(rank) +
                    " is below the concatenated width " +
                    std::to_string(total_dim));
      lam = ideal_prefix(est, total_dim);
    } else if (ideals.size() == source_paths.size()) {
      for (std::size_t j = 0; j < ideals.size(); ++j) {
        EstimateH est;
        check(pc_estimate_load(ideals[j].c_str(), est.out()));
        std::int32_t rank = 0;
        check(pc_estimate_rank(est, &rank));
        if (rank < dims[j])
          usage_error("estimate " + ideals[j] + " has rank " +
                      std::to_string(rank) + " but source " +
                      std::to_string(j + 1) + " has " +
                      std::to_string(dims[j]) + " columns");
        const auto block = ideal_prefix(est, dims[j]);
        lam.insert(lam.end(), block.begin(), block.end());
      }
    } else if (ideals.empty()) {
      usage_error("mode " + mode + " needs --ideal (one estimate for the "
                  "whole concatenation, or one per source)");
    } else {
      usage_error("--ideal count must be 1 or match the source count");
    }

    // Source spectra recovered from column norms: ||col_i|| = mu_i^alpha.
    std::vector<std::vector<double>> spectra(sources.size());
    std::vector<const double*> spectra_ptrs;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      spectra[j].resize(static_cast<std::size_t>(dims[j]));
      for (std::int32_t i = 0; i < dims[j]; ++i) {
        double norm = 0.0;
        check(pc_embedding_column_norm(sources[j].get(), i, &norm));
        spectra[j][static_cast<std::size_t>(i)] =
            cfg.alpha > 0.0 ? std::pow(norm, 1.0 / cfg.alpha) : 1.0;
      }
      spectra_ptrs.push_back(spectra[j].data());
    }
    check(pc_weights_compute(mode == "dw" ? PC_WEIGHTS_DW : PC_WEIGHTS_SW,
                             lam.data(),
                             static_cast<std::int32_t>(lam.size()),
                             spectra_ptrs.data(), dims.data(),
                             static_cast<std::int32_t>(dims.size()), cfg.alpha,
                             weights.out()));
  } else {
    usage_error("unknown mode `" + mode + "` (use uw|sw|dw|avg|svd)");
  }

  if (weights.get() != nullptr) {
    if (normalize) check(pc_weights_normalize(weights.get()));
    check(pc_concat(raw.data(), static_cast<std::int32_t>(raw.size()), weights,
                    meta.out()));
    weights_path = out_path(cfg, "weights_" + mode + ".json");
    check(pc_weights_save(weights, weights_path.c_str()));
  } else if (normalize) {
    usage_error("--normalize-weights only applies to uw|sw|dw");
  }

  const std::string path = out_path(cfg, "meta_" + mode + ".txt");
  check(pc_embedding_save_text(meta, path.c_str()));
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  check(pc_embedding_rows(meta, &rows));
  check(pc_embedding_cols(meta, &cols));

  json out = {{"mode", mode}, {"output", path}, {"rows", rows},
              {"cols", cols}};
  if (!weights_path.empty()) out["weights"] = weights_path;
  emit(out);
  return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& embedding_path,
             const std::vector<std::string>& similarity_paths,
             const std::vector<std::string>& analogy_paths) {
  if (embedding_path.empty()) usage_error("eval needs --embedding");
  if (similarity_paths.empty() && analogy_paths.empty())
    usage_error("eval needs at least one --similarity or --analogy dataset");

  EmbeddingH embedding;
  check(pc_embedding_load_text(embedding_path.c_str(), embedding.out()));

  json results = json::array();
  for (const std::string& path : similarity_paths) {
    SimilarityH ds;
    check(pc_similarity_load(path.c_str(), ds.out()));
    double rho = 0.0;
    std::int32_t covered = 0;
    std::int32_t total = 0;
    check(pc_eval_spearman(embedding, ds, &rho, &covered, &total));
    const std::string stem = file_stem(path);
    const std::string out = out_path(cfg, "eval_" + stem + "_spearman.json");
    check(pc_eval_result_save(stem.c_str(), "spearman", rho, covered, total,
                              out.c_str()));
    results.push_back({{"dataset", stem},
                       {"metric", "spearman"},
                       {"value", rho},
                       {"covered", covered},
                       {"total", total},
                       {"path", out}});
  }
  for (const std::string& path : analogy_paths) {
    AnalogyH ds;
    check(pc_analogy_load(path.c_str(), ds.out()));
    double accuracy = 0.0;
    std::int32_t covered = 0;
    std::int32_t total = 0;
    check(pc_eval_cosadd(embedding, ds, &accuracy, &covered, &total));
    const std::string stem = file_stem(path);
    const std::string out = out_path(cfg, "eval_" + stem + "_cosadd.json");
    check(pc_eval_result_save(stem.c_str(), "cosadd", accuracy, covered, total,
                              out.c_str()));
    results.push_back({{"dataset", stem},
                       {"metric", "cosadd"},
                       {"value", accuracy},
                       {"covered", covered},
                       {"total", total},
                       {"path", out}});
  }
  emit({{"results", results}});
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::int32_t instances,
               const std::string& bound_report) {
  if (instances < 1) usage_error("--instances must be >= 1");
  json suites = json::array();
  std::int32_t total_violations = 0;

  const auto record = [&](const char* name, std::int32_t n,
                          std::int32_t violations, double worst,
                          double tolerance) {
    suites.push_back({{"suite", name},
                      {"instances", n},
                      {"violations", violations},
                      {"worst", worst},
                      {"tolerance", tolerance}});
    total_violations += violations;
  };

  std::int32_t violations = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  check(pc_verify_projection_identity(instances, cfg.seed, &violations, &worst,
                                      &tolerance));
  record("projection-identity", instances, violations, worst, tolerance);

  const std::int32_t two_src[2] = {8, 6};
  check(pc_verify_loss_bound(instances, two_src, 2, cfg.seed, 0, &violations,
                             &worst, &tolerance));
  record("loss-bound-2src", instances, violations, worst, tolerance);

  const std::int32_t three_src[3] = {6, 5, 4};
  const std::int32_t three_n = std::max(1, instances / 2);
  check(pc_verify_loss_bound(three_n, three_src, 3, cfg.seed, 0, &violations,
                             &worst, &tolerance));
  record("loss-bound-3src", three_n, violations, worst, tolerance);

  check(pc_verify_loss_bound(instances, two_src, 2, cfg.seed, 1, &violations,
                             &worst, &tolerance));
  record("loss-bound-2src-flat", instances, violations, worst, tolerance);

  check(pc_verify_weight_grid(instances, cfg.seed, &violations, &worst,
                              &tolerance));
  record("weight-optimality", instances, violations, worst, tolerance);

  json out = {{"suites", suites}, {"violations", total_violations}};
  if (!bound_report.empty()) {
    check(pc_verify_bound_report(cfg.seed, bound_report.c_str()));
    out["bound_report"] = bound_report;
  }
  emit(out);
  if (total_violations > 0) {
    std::fprintf(stderr, "error: verification found %d violation(s)\n",
                 total_violations);
    return 1;
  }
  return 0;
}

int cmd_alpha_sweep(const RunConfig& cfg, const std::string& signal_sel,
                    std::vector<double> alphas,
                    const std::string& similarity_path) {
  if (alphas.empty()) usage_error("alpha-sweep needs --alphas");
  if (similarity_path.empty()) usage_error("alpha-sweep needs --similarity");
  const std::vector<std::string> kinds = selected_kinds(signal_sel);
  if (kinds.size() != 1)
    usage_error("alpha-sweep needs a single --signal kind, not `all`");
  const std::string kind = kinds.front();

  // Deduplicate, preserving first-seen order.
  {
    std::set<double> seen;
    std::vector<double> unique;
    for (const double a : alphas)
      if (seen.insert(a).second) unique.push_back(a);
    alphas = std::move(unique);
  }

  const BaseArtifacts base = build_base(cfg);
  const SignalH signal = build_signal_for(cfg, base.counts, kind);
  const EstimateH estimate = compute_estimate(cfg, base, kind, nullptr);
  SimilarityH ds;
  check(pc_similarity_load(similarity_path.c_str(), ds.out()));

  const std::string csv_path = out_path(cfg, "alpha_sweep.csv");
  std::ofstream csv(csv_path);
  if (!csv.is_open()) {
    std::fprintf(stderr, "error: io-error: cannot write %s\n",
                 csv_path.c_str());
    return 1;
  }
  csv << "alpha,spearman\n";
  const std::uint64_t select_seed = pc_derive_seed(
      cfg.seed, "select", static_cast<std::uint64_t>(signal_kind_id(kind)));
  for (const double alpha : alphas) {
    if (alpha < 0.0) usage_error("alpha must be >= 0");
    std::int32_t k = 0;
    check(pc_select_dimension(estimate, alpha, cfg.trials, select_seed, &k));
    EmbeddingH embedding;
    check(pc_embed(signal, alpha, k, embedding.out()));
    check(pc_embedding_set_tokens(embedding, base.vocab));
    double rho = 0.0;
    std::int32_t covered = 0;
    std::int32_t total = 0;
    check(pc_eval_spearman(embedding, ds, &rho, &covered, &total));
    csv << alpha << ',' << rho << '\n';
  }
  csv.close();
  emit({{"csv", csv_path}, {"rows", alphas.size()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral word embeddings, PIP-loss dimensionality selection, "
               "and weighted meta-embedding concatenation"};
  app.require_subcommand(1);

  Overrides ov;

  auto* build = app.add_subcommand(
      "build", "corpus -> vocabulary, counts, and signal matrices");
  add_common_options(build, &ov, true);
  std::string build_signal_sel;
  build->add_option("--signals", build_signal_sel,
                    "kinds to build: logcooc|spmi|ppmi|all (default: config "
                    "signal)");

  auto* estimate = app.add_subcommand(
      "estimate", "half-split noise and ideal-spectrum estimate");
  add_common_options(estimate, &ov, true);
  std::string estimate_signal_sel;
  estimate->add_option("--signals", estimate_signal_sel,
                       "kinds to estimate: logcooc|spmi|ppmi|all");

  auto* embed = app.add_subcommand(
      "embed", "factorize a signal matrix into an embedding");
  add_common_options(embed, &ov, true);
  std::int32_t embed_k = 0;
  std::string embed_estimate, embed_curve;
  embed->add_option("--k", embed_k,
                    "dimensionality (default: Monte-Carlo selection)");
  embed->add_option("--estimate", embed_estimate,
                    "reuse an estimate JSON instead of recomputing");
  embed->add_option("--curve-out", embed_curve,
                    "also write the loss-vs-k curve CSV here");

  auto* meta = app.add_subcommand(
      "meta", "combine source embeddings into a meta-embedding");
  add_common_options(meta, &ov, false);
  std::vector<std::string> meta_sources, meta_ideals;
  std::string meta_mode = "uw";
  bool meta_normalize = false;
  std::int32_t meta_svd_dim = 200;
  meta->add_option("--source", meta_sources,
                   "source embedding text file (repeat per source)");
  meta->add_option("--mode", meta_mode, "uw|sw|dw|avg|svd (default uw)");
  meta->add_option("--ideal", meta_ideals,
                   "estimate JSON for the ideal spectrum (one global, or one "
                   "per source)");
  meta->add_flag("--normalize-weights", meta_normalize,
                 "rescale weights so per-source means sum to 1");
  meta->add_option("--svd-dim", meta_svd_dim,
                   "output dimensionality for mode=svd (default 200)");

  auto* eval = app.add_subcommand(
      "eval", "score an embedding on similarity/analogy datasets");
  add_common_options(eval, &ov, false);
  std::string eval_embedding;
  std::vector<std::string> eval_similarity, eval_analogy;
  eval->add_option("--embedding", eval_embedding, "embedding text file");
  eval->add_option("--similarity", eval_similarity,
                   "similarity TSV (word1<TAB>word2<TAB>score)");
  eval->add_option("--analogy", eval_analogy,
                   "analogy file (`a b c d` lines, `: section` headers)");

  auto* verify = app.add_subcommand(
      "verify", "run the numerical identity/bound/optimality suites");
  add_common_options(verify, &ov, false);
  std::int32_t verify_instances = 100;
  std::string verify_bound_report;
  verify->add_option("--instances", verify_instances,
                     "instances per suite (default 100)");
  verify->add_option("--bound-report", verify_bound_report,
                     "write one sample bias/variance breakdown JSON here");

  auto* sweep = app.add_subcommand(
      "alpha-sweep", "similarity correlation across alpha values");
  add_common_options(sweep, &ov, true);
  std::vector<double> sweep_alphas;
  std::string sweep_similarity;
  sweep->add_option("--alphas", sweep_alphas,
                    "alpha values to sweep (repeat or comma-separate)")
      ->delimiter(',');
  sweep->add_option("--similarity", sweep_similarity,
                    "dev similarity TSV used for scoring");

  CLI11_PARSE(app, argc, argv);

  const RunConfig cfg = resolve_config(ov);
  try {
    if (build->parsed())
      return cmd_build(cfg, build_signal_sel.empty() ? cfg.signal
                                                     : build_signal_sel);
    if (estimate->parsed())
      return cmd_estimate(cfg, estimate_signal_sel.empty()
                                   ? cfg.signal
                                   : estimate_signal_sel);
    if (embed->parsed())
      return cmd_embed(cfg, cfg.signal, embed_k, embed_estimate, embed_curve);
    if (meta->parsed())
      return cmd_meta(cfg, meta_sources, meta_mode, meta_ideals,
                      meta_normalize, meta_svd_dim);
    if (eval->parsed())
      return cmd_eval(cfg, eval_embedding, eval_similarity, eval_analogy);
    if (verify->parsed())
      return cmd_verify(cfg, verify_instances, verify_bound_report);
    if (sweep->parsed())
      return cmd_alpha_sweep(cfg, cfg.signal, sweep_alphas, sweep_similarity);
  } catch (const CliFailure& failure) {
    std::fprintf(stderr, "error: %s: %s\n", pc_status_name(failure.status),
                 pc_error_message());
    return 1;
  }
  return 0;
}
