// Corpus ingestion: tokenization, vocabulary, co-occurrence counting, and the
// half-corpus split used for noise estimation.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pipconcat {

// Sentences are the window/split unit: newline-delimited lines, with overlong
// lines chopped into fixed-size pseudo-sentence blocks (for unsegmented
// corpora such as text8).
struct Corpus {
  std::vector<std::vector<std::string>> sentences;

  std::size_t sentence_count() const { return sentences.size(); }
  std::size_t token_count() const;
};

struct Vocabulary {
  std::vector<std::string> tokens;        // frequency-descending
  std::vector<std::uint64_t> counts;      // aligned with tokens
  std::unordered_map<std::string, std::int32_t> index;

  std::int32_t size() const { return static_cast<std::int32_t>(tokens.size()); }
  // -1 when the token is out of vocabulary.
  std::int32_t lookup(const std::string& token) const;
};

// Sparse symmetric co-occurrence counts; only (i, j) with i <= j is stored.
struct CooccurrenceCounts {
  std::int32_t n = 0;
  std::int32_t window = 0;
  std::uint64_t total = 0;                      // symmetric expansion
  std::vector<std::uint64_t> row_marginals;     // row sums of the full matrix
  std::unordered_map<std::uint64_t, std::uint64_t> entries;

  static std::uint64_t key(std::int32_t i, std::int32_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
  }
  std::uint64_t get(std::int32_t i, std::int32_t j) const;
};

// Lowercases, splits on Unicode whitespace, strips leading/trailing ASCII
// punctuation. Tokens that normalize to nothing are dropped.
std::vector<std::string> tokenize(std::string_view line);

inline constexpr std::int32_t kDefaultBlockTokens = 1000;

Corpus load_corpus(const std::string& path,
                   std::int32_t block_tokens = kDefaultBlockTokens);
Corpus corpus_from_text(std::string_view text,
                        std::int32_t block_tokens = kDefaultBlockTokens);

// The max_vocab most frequent tokens; count ties broken lexicographically.
Vocabulary build_vocabulary(const Corpus& corpus, std::int32_t max_vocab);

// Every unordered pair of in-vocab tokens at distance <= window within one
// sentence contributes one count; out-of-vocab tokens occupy positions.
CooccurrenceCounts count_cooccurrences(const Corpus& corpus,
                                       const Vocabulary& vocab,
                                       std::int32_t window);

// Deterministic pseudo-random sentence assignment; halves differ by at most
// one sentence and preserve corpus order internally.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus,
                                       std::uint64_t seed);

// One `token<TAB>count` line per word, frequency-descending.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

// Header `n<TAB>window<TAB>total`, then `i<TAB>j<TAB>count` triples (i <= j).
void save_counts(const CooccurrenceCounts& counts, const std::string& path);
CooccurrenceCounts load_counts(const std::string& path);

}  // namespace pipconcat
