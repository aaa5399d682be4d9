#include "core/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "core/common.hpp"
#include "core/io_util.hpp"

namespace pipconcat {

namespace {

// Byte length of the whitespace sequence at s[i], or 0. Covers ASCII
// whitespace plus the common UTF-8 space code points (NBSP, the U+2000 block,
// line/paragraph separators, narrow/medium spaces, ideographic space).
std::size_t whitespace_len(std::string_view s, std::size_t i) {
  const unsigned char c0 = s[i];
  if (c0 == ' ' || (c0 >= 0x09 && c0 <= 0x0D)) return 1;
  if (c0 == 0xC2 && i + 1 < s.size() &&
      static_cast<unsigned char>(s[i + 1]) == 0xA0)
    return 2;  // U+00A0
  if (c0 == 0xE1 && i + 2 < s.size() &&
      static_cast<unsigned char>(s[i + 1]) == 0x9A &&
      static_cast<unsigned char>(s[i + 2]) == 0x80)
    return 3;  // U+1680
  if (c0 == 0xE2 && i + 2 < s.size()) {
    const unsigned char c1 = s[i + 1];
    const unsigned char c2 = s[i + 2];
    if (c1 == 0x80 && ((c2 >= 0x80 && c2 <= 0x8A) || c2 == 0xA8 ||
                       c2 == 0xA9 || c2 == 0xAF))
      return 3;  // U+2000..U+200A, U+2028, U+2029, U+202F
    if (c1 == 0x81 && c2 == 0x9F) return 3;  // U+205F
  }
  if (c0 == 0xE3 && i + 2 < s.size() &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x80)
    return 3;  // U+3000
  return 0;
}

void normalize_and_push(std::string_view raw, std::vector<std::string>* out) {
  std::size_t lo = 0;
  std::size_t hi = raw.size();
  while (lo < hi && std::ispunct(static_cast<unsigned char>(raw[lo]))) ++lo;
  while (hi > lo && std::ispunct(static_cast<unsigned char>(raw[hi - 1]))) --hi;
  if (lo >= hi) return;
  std::string token;
  token.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i)
    token.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(raw[i]))));
  out->push_back(std::move(token));
}

void append_blocks(std::vector<std::string>&& tokens,
                   std::int32_t block_tokens,
                   std::vector<std::vector<std::string>>* sentences) {
  if (tokens.empty()) return;
  const std::size_t block = static_cast<std::size_t>(block_tokens);
  if (tokens.size() <= block) {
    sentences->push_back(std::move(tokens));
    return;
  }
  for (std::size_t start = 0; start < tokens.size(); start += block) {
    const std::size_t end = std::min(start + block, tokens.size());
    sentences->emplace_back(tokens.begin() + start, tokens.begin() + end);
  }
}

Corpus corpus_from_stream(std::istream& in, std::int32_t block_tokens) {
  require(block_tokens >= 1, ErrorCode::kInvalidArgument,
          "block_tokens must be >= 1");
  Corpus corpus;
  std::string line;
  while (std::getline(in, line))
    append_blocks(tokenize(line), block_tokens, &corpus.sentences);
  return corpus;
}

}  // namespace

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::int32_t Vocabulary::lookup(const std::string& token) const {
  const auto it = index.find(token);
  return it == index.end() ? -1 : it->second;
}

std::uint64_t CooccurrenceCounts::get(std::int32_t i, std::int32_t j) const {
  if (i > j) std::swap(i, j);
  const auto it = entries.find(key(i, j));
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    const std::size_t ws = whitespace_len(line, i);
    if (ws > 0) {
      if (i > start) normalize_and_push(line.substr(start, i - start), &out);
      i += ws;
      start = i;
    } else {
      ++i;
    }
  }
  if (i > start) normalize_and_push(line.substr(start, i - start), &out);
  return out;
}

Corpus load_corpus(const std::string& path, std::int32_t block_tokens) {
  std::ifstream in = open_input(path);
  return corpus_from_stream(in, block_tokens);
}

Corpus corpus_from_text(std::string_view text, std::int32_t block_tokens) {
  std::istringstream in{std::string(text)};
  return corpus_from_stream(in, block_tokens);
}

Vocabulary build_vocabulary(const Corpus& corpus, std::int32_t max_vocab) {
  require(max_vocab >= 1, ErrorCode::kInvalidArgument, "max_vocab must be >= 1");
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& sentence : corpus.sentences)
    for (const auto& token : sentence) ++freq[token];
  require(!freq.empty(), ErrorCode::kEmptyCorpus,
          "corpus has no tokens after tokenization");

  std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(),
                                                            freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > static_cast<std::size_t>(max_vocab))
    ranked.resize(static_cast<std::size_t>(max_vocab));

  Vocabulary vocab;
  vocab.tokens.reserve(ranked.size());
  vocab.counts.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    vocab.tokens.push_back(ranked[i].first);
    vocab.counts.push_back(ranked[i].second);
    vocab.index.emplace(ranked[i].first, static_cast<std::int32_t>(i));
  }
  return vocab;
}

CooccurrenceCounts count_cooccurrences(const Corpus& corpus,
                                       const Vocabulary& vocab,
                                       std::int32_t window) {
  require(window >= 1, ErrorCode::kInvalidArgument, "window must be >= 1");
  CooccurrenceCounts counts;
  counts.n = vocab.size();
  counts.window = window;
  counts.row_marginals.assign(static_cast<std::size_t>(counts.n), 0);

  std::vector<std::int32_t> ids;
  for (const auto& sentence : corpus.sentences) {
    ids.clear();
    ids.reserve(sentence.size());
    for (const auto& token : sentence) ids.push_back(vocab.lookup(token));
    const std::int64_t len = static_cast<std::int64_t>(ids.size());
    for (std::int64_t t = 0; t < len; ++t) {
      if (ids[t] < 0) continue;  // OOV occupies the position but never pairs
      const std::int64_t lo = std::max<std::int64_t>(0, t - window);
      for (std::int64_t u = lo; u < t; ++u) {
        if (ids[u] < 0) continue;
        const std::int32_t i = std::min(ids[t], ids[u]);
        const std::int32_t j = std::max(ids[t], ids[u]);
        ++counts.entries[CooccurrenceCounts::key(i, j)];
      }
    }
  }

  for (const auto& [key, c] : counts.entries) {
    const auto i = static_cast<std::int32_t>(key >> 32);
    const auto j = static_cast<std::int32_t>(key & 0xFFFFFFFFull);
    if (i == j) {
      counts.row_marginals[static_cast<std::size_t>(i)] += c;
      counts.total += c;
    } else {
      counts.row_marginals[static_cast<std::size_t>(i)] += c;
      counts.row_marginals[static_cast<std::size_t>(j)] += c;
      counts.total += 2 * c;
    }
  }
  return counts;
}

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus,
                                       std::uint64_t seed) {
  const std::size_t n = corpus.sentence_count();
  require(n >= 2, ErrorCode::kSplitTooSmall,
          "need at least 2 sentences to split");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i)  // Fisher-Yates
    std::swap(perm[i], perm[rng.below(i + 1)]);

  const std::size_t half = (n + 1) / 2;
  std::vector<bool> in_a(n, false);
  for (std::size_t i = 0; i < half; ++i) in_a[perm[i]] = true;

  std::pair<Corpus, Corpus> out;
  for (std::size_t i = 0; i < n; ++i)
    (in_a[i] ? out.first : out.second).sentences.push_back(corpus.sentences[i]);
  return out;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out = open_output(path);
  for (std::int32_t i = 0; i < vocab.size(); ++i)
    out << vocab.tokens[static_cast<std::size_t>(i)] << '\t'
        << vocab.counts[static_cast<std::size_t>(i)] << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in = open_input(path);
  Vocabulary vocab;
  std::string line;
  std::uint64_t prev = UINT64_MAX;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line, '\t');
    require(fields.size() == 2 && !fields[0].empty(), ErrorCode::kParseError,
            path + ": expected `token<TAB>count`, got: " + line);
    std::uint64_t count = 0;
    try {
      count = std::stoull(fields[1]);
    } catch (const std::exception&) {
      fail(ErrorCode::kParseError, path + ": bad count in: " + line);
    }
    require(count <= prev, ErrorCode::kParseError,
            path + ": counts must be frequency-descending");
    prev = count;
    vocab.index.emplace(fields[0], vocab.size());
    vocab.tokens.push_back(fields[0]);
    vocab.counts.push_back(count);
  }
  require(vocab.index.size() == vocab.tokens.size(), ErrorCode::kParseError,
          path + ": duplicate tokens");
  return vocab;
}

void save_counts(const CooccurrenceCounts& counts, const std::string& path) {
  std::ofstream out = open_output(path);
  out << counts.n << '\t' << counts.window << '\t' << counts.total << '\n';
  std::vector<std::uint64_t> keys;
  keys.reserve(counts.entries.size());
  for (const auto& [key, c] : counts.entries) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  for (const std::uint64_t key : keys)
    out << static_cast<std::int32_t>(key >> 32) << '\t'
        << static_cast<std::int32_t>(key & 0xFFFFFFFFull) << '\t'
        << counts.entries.at(key) << '\n';
  require(out.good(), ErrorCode::kIoError, "write failed: " + path);
}

CooccurrenceCounts load_counts(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParseError,
          path + ": missing header");
  const auto header = split_fields(line, '\t');
  require(header.size() == 3, ErrorCode::kParseError,
          path + ": header must be `n<TAB>window<TAB>total`");

  CooccurrenceCounts counts;
  std::uint64_t declared_total = 0;
  try {
    counts.n = std::stoi(header[0]);
    counts.window = std::stoi(header[1]);
    declared_total = std::stoull(header[2]);
  } catch (const std::exception&) {
    fail(ErrorCode::kParseError, path + ": bad header: " + line);
  }
  require(counts.n >= 0 && counts.window >= 1, ErrorCode::kParseError,
          path + ": bad header values");
  counts.row_marginals.assign(static_cast<std::size_t>(counts.n), 0);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line, '\t');
    require(fields.size() == 3, ErrorCode::kParseError,
            path + ": expected `i<TAB>j<TAB>count`, got: " + line);
    std::int32_t i = 0, j = 0;
    std::uint64_t c = 0;
    try {
      i = std::stoi(fields[0]);
      j = std::stoi(fields[1]);
      c = std::stoull(fields[2]);
    } catch (const std::exception&) {
      fail(ErrorCode::kParseError, path + ": bad triple: " + line);
    }
    require(0 <= i && i <= j && j < counts.n, ErrorCode::kParseError,
            path + ": indices out of range in: " + line);
    require(counts.entries.emplace(CooccurrenceCounts::key(i, j), c).second,
            ErrorCode::kParseError, path + ": duplicate pair in: " + line);
    if (i == j) {
      counts.row_marginals[static_cast<std::size_t>(i)] += c;
      counts.total += c;
    } else {
      counts.row_marginals[static_cast<std::size_t>(i)] += c;
      counts.row_marginals[static_cast<std::size_t>(j)] += c;
      counts.total += 2 * c;
    }
  }
  require(counts.total == declared_total, ErrorCode::kParseError,
          path + ": header total does not match entries");
  return counts;
}

}  // namespace pipconcat
