#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "driftbench/error.hpp"
#include "driftbench/utf8.hpp"

namespace driftbench {

struct Document {
  std::string id;
  std::string text;
};

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;

  bool operator==(const TokenStream&) const = default;
};

struct TokenizerRules {
  bool join_apostrophes = true;
  bool join_hyphens = true;
  bool keep_numerals = true;
};

namespace detail {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

}  // namespace detail

using Stoplist = detail::StringSet;

/// Splits `text` into lowercase tokens. A token is a maximal run of letters
/// and digits, optionally joined by single apostrophes or hyphens that sit
/// between two word characters ("don't", "common-sense"). Everything else,
/// including "--" and trailing apostrophes, separates tokens. Typographic
/// apostrophes and hyphens are normalized to their ASCII forms.
inline std::vector<std::string> tokenize_text(std::string_view text,
                                              const TokenizerRules& rules = {}) {
  std::vector<std::string> tokens;
  std::string current;
  bool all_digits = true;
  bool pending_joiner = false;
  char pending_char = 0;

  const auto flush = [&] {
    if (!current.empty() && (rules.keep_numerals || !all_digits)) {
      tokens.push_back(std::move(current));
    }
    current.clear();
    all_digits = true;
    pending_joiner = false;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::decode_next(text, pos);
    if (utf8::is_word_char(cp)) {
      if (pending_joiner) {
        current.push_back(pending_char);
        pending_joiner = false;
      }
      if (!utf8::is_digit(cp)) all_digits = false;
      utf8::append(current, utf8::to_lower(cp));
      continue;
    }
    const bool joiner = (rules.join_apostrophes && utf8::is_apostrophe(cp)) ||
                        (rules.join_hyphens && utf8::is_hyphen(cp));
    if (joiner && !current.empty() && !pending_joiner) {
      pending_joiner = true;
      pending_char = utf8::is_apostrophe(cp) ? '\'' : '-';
      continue;
    }
    flush();
  }
  flush();
  return tokens;
}

inline TokenStream tokenize(const Document& doc, const TokenizerRules& rules = {}) {
  return TokenStream{doc.id, tokenize_text(doc.text, rules)};
}

inline std::vector<TokenStream> tokenize_all(std::span<const Document> docs,
                                             const TokenizerRules& rules = {}) {
  std::vector<TokenStream> streams;
  streams.reserve(docs.size());
  for (const auto& doc : docs) streams.push_back(tokenize(doc, rules));
  return streams;
}

/// Bijective token <-> index mapping with per-token corpus frequencies.
/// Indices are contiguous from zero; new entries are always appended.
class Vocabulary {
 public:
  Vocabulary() = default;

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  std::optional<std::size_t> find(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view token) const { return index_.contains(token); }

  std::size_t index_of(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) throw LookupError(std::string(token));
    return it->second;
  }

  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::uint64_t frequency(std::size_t index) const { return frequencies_.at(index); }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::vector<std::uint64_t>& frequencies() const noexcept { return frequencies_; }

  std::size_t min_count() const noexcept { return min_count_; }
  void set_min_count(std::size_t min_count) noexcept { min_count_ = min_count; }

  std::size_t add(std::string token, std::uint64_t frequency) {
    if (token.empty()) throw DataError("vocabulary tokens must be non-empty");
    if (frequency == 0) throw DataError("vocabulary frequency must be >= 1 for '" + token + "'");
    if (index_.contains(token)) throw DataError("duplicate vocabulary token '" + token + "'");
    const std::size_t index = tokens_.size();
    index_.emplace(token, index);
    tokens_.push_back(std::move(token));
    frequencies_.push_back(frequency);
    return index;
  }

  void add_occurrences(std::size_t index, std::uint64_t count) { frequencies_.at(index) += count; }

  std::uint64_t total_frequency() const {
    std::uint64_t sum = 0;
    for (auto f : frequencies_) sum += f;
    return sum;
  }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_ && frequencies_ == other.frequencies_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> frequencies_;
  detail::StringMap<std::size_t> index_;
  std::size_t min_count_ = 1;
};

inline detail::StringMap<std::uint64_t> count_tokens(std::span<const TokenStream> streams) {
  detail::StringMap<std::uint64_t> counts;
  for (const auto& stream : streams) {
    for (const auto& token : stream.tokens) ++counts[token];
  }
  return counts;
}

/// Keeps tokens with frequency >= min_count, most frequent first with
/// lexicographic tie-breaking. `max_size` truncates after that ordering.
inline Vocabulary build_vocabulary(std::span<const TokenStream> streams, std::size_t min_count = 1,
                                   std::optional<std::size_t> max_size = std::nullopt) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (max_size && *max_size == 0) throw EmptyVocabularyError("vocabulary size cap of 0 admits no token");

  std::vector<std::pair<std::string, std::uint64_t>> entries;
  for (auto& [token, count] : count_tokens(streams)) {
    if (count >= min_count) entries.emplace_back(token, count);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (max_size && entries.size() > *max_size) entries.resize(*max_size);
  if (entries.empty()) throw EmptyVocabularyError();

  Vocabulary vocab;
  vocab.set_min_count(min_count);
  for (auto& [token, count] : entries) vocab.add(std::move(token), count);
  return vocab;
}

/// Returns `base` with the occurrences in `streams` folded in. Known tokens
/// gain frequency; unseen tokens reaching the vocabulary's min_count within
/// `streams` are appended in order of first appearance.
inline Vocabulary extend_vocabulary(const Vocabulary& base, std::span<const TokenStream> streams) {
  Vocabulary vocab = base;
  const auto counts = count_tokens(streams);
  detail::StringSet appended;
  for (const auto& stream : streams) {
    for (const auto& token : stream.tokens) {
      if (base.contains(token)) continue;
      if (appended.contains(token)) continue;
      const auto count = counts.find(token)->second;
      if (count < base.min_count()) continue;
      appended.insert(token);
      vocab.add(token, count);
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto it = counts.find(base.token(i));
    if (it != counts.end()) vocab.add_occurrences(i, it->second);
  }
  return vocab;
}

inline TokenStream remove_stopwords(const TokenStream& stream, const Stoplist& stoplist) {
  TokenStream out{stream.doc_id, {}};
  out.tokens.reserve(stream.tokens.size());
  for (const auto& token : stream.tokens) {
    if (!stoplist.contains(token)) out.tokens.push_back(token);
  }
  return out;
}

inline std::vector<TokenStream> remove_stopwords(std::span<const TokenStream> streams,
                                                 const Stoplist& stoplist) {
  std::vector<TokenStream> out;
  out.reserve(streams.size());
  for (const auto& stream : streams) out.push_back(remove_stopwords(stream, stoplist));
  return out;
}

struct CorpusStats {
  std::uint64_t token_count = 0;
  std::uint64_t type_count = 0;
  double type_token_ratio = 0.0;
  bool ratio_defined = false;  // false for an empty corpus
};

inline CorpusStats corpus_stats(std::span<const TokenStream> streams) {
  CorpusStats stats;
  detail::StringSet types;
  for (const auto& stream : streams) {
    stats.token_count += stream.tokens.size();
    for (const auto& token : stream.tokens) types.insert(token);
  }
  stats.type_count = types.size();
  if (stats.token_count > 0) {
    stats.type_token_ratio =
        static_cast<double>(stats.type_count) / static_cast<double>(stats.token_count);
    stats.ratio_defined = true;
  }
  return stats;
}

// ---- file input ----------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Loads a single file, or every regular file of a directory (sorted by
/// name, non-recursive), as one document each. Text must be UTF-8; an
/// invalid sequence is reported with the file name and byte offset.
inline std::vector<Document> load_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("corpus directory '" + path.string() + "' has no files");
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else {
    throw DataError("corpus path '" + path.string() + "' does not exist");
  }

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    Document doc{file.filename().string(), read_file(file)};
    try {
      utf8::validate(doc.text);
    } catch (const EncodingError& e) {
      throw DataError("'" + file.string() + "': " + e.what());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline Stoplist load_stoplist(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  utf8::validate(text);
  Stoplist stoplist;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (auto& token : tokenize_text(line)) stoplist.insert(std::move(token));
  }
  return stoplist;
}

}  // namespace driftbench
