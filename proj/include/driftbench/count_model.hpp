#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "driftbench/corpus.hpp"
#include "driftbench/error.hpp"
#include "driftbench/space.hpp"

namespace driftbench {

struct WindowConfig {
  std::size_t radius = 10;
  // Windows never cross document boundaries; kept as a field so saved
  // matrices carry the full configuration.
  bool cross_document = false;

  bool operator==(const WindowConfig&) const = default;
};

struct CountEntry {
  std::uint32_t context;
  std::uint64_t count;

  bool operator==(const CountEntry&) const = default;
};

/// Sparse symmetric target x context co-occurrence counts. Both halves are
/// stored so that any row can be read directly; rows are sorted by context
/// index and hold only positive counts.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix() = default;
  CooccurrenceMatrix(Vocabulary vocab, WindowConfig window)
      : vocab_(std::move(vocab)), window_(window), rows_(vocab_.size()) {}

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  const WindowConfig& window() const noexcept { return window_; }
  std::size_t size() const noexcept { return rows_.size(); }
  std::uint64_t total() const noexcept { return total_; }

  std::span<const CountEntry> row(std::size_t target) const { return rows_.at(target); }

  std::uint64_t count(std::size_t target, std::size_t context) const {
    const auto& r = rows_.at(target);
    const auto it = std::lower_bound(r.begin(), r.end(), context,
                                     [](const CountEntry& e, std::size_t c) { return e.context < c; });
    return (it != r.end() && it->context == context) ? it->count : 0;
  }

  std::uint64_t count(std::string_view target, std::string_view context) const {
    return count(vocab_.index_of(target), vocab_.index_of(context));
  }

  std::uint64_t row_sum(std::size_t target) const {
    std::uint64_t sum = 0;
    for (const auto& e : rows_.at(target)) sum += e.count;
    return sum;
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool operator==(const CooccurrenceMatrix& other) const {
    return vocab_ == other.vocab_ && window_ == other.window_ && total_ == other.total_ &&
           rows_ == other.rows_;
  }

  // Pairs are keyed as (min << 32 | max); each key's value is the count of
  // one orientation, mirrored into both rows.
  using PairCounts = std::unordered_map<std::uint64_t, std::uint64_t>;

  /// Folds upper-triangle pair counts into the stored rows. Rows grow to the
  /// current vocabulary size first.
  void merge(const PairCounts& pairs) {
    rows_.resize(vocab_.size());
    std::vector<std::vector<CountEntry>> incoming(vocab_.size());
    for (const auto& [key, value] : pairs) {
      const auto a = static_cast<std::uint32_t>(key >> 32);
      const auto b = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
      incoming.at(a).push_back({b, value});
      if (a != b) incoming.at(b).push_back({a, value});
      total_ += (a == b) ? value : 2 * value;
    }
    for (std::size_t t = 0; t < incoming.size(); ++t) {
      auto& add = incoming[t];
      if (add.empty()) continue;
      std::sort(add.begin(), add.end(),
                [](const CountEntry& x, const CountEntry& y) { return x.context < y.context; });
      auto& row = rows_[t];
      std::vector<CountEntry> merged;
      merged.reserve(row.size() + add.size());
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < row.size() || j < add.size()) {
        if (j == add.size() || (i < row.size() && row[i].context < add[j].context)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || add[j].context < row[i].context) {
          merged.push_back(add[j++]);
        } else {
          merged.push_back({row[i].context, row[i].count + add[j].count});
          ++i;
          ++j;
        }
      }
      row = std::move(merged);
    }
  }

  Vocabulary& mutable_vocabulary() noexcept { return vocab_; }

 private:
  Vocabulary vocab_;
  WindowConfig window_;
  std::vector<std::vector<CountEntry>> rows_;
  std::uint64_t total_ = 0;
};

namespace detail {

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline constexpr std::uint32_t kOutOfVocabulary = std::numeric_limits<std::uint32_t>::max();

/// Counts every unordered position pair (i, j), 0 < j - i <= radius, whose
/// tokens are both in the vocabulary. Out-of-vocabulary tokens still occupy
/// window positions.
inline void accumulate_pairs(std::span<const TokenStream> streams, const Vocabulary& vocab,
                             std::size_t radius, CooccurrenceMatrix::PairCounts& pairs) {
  std::vector<std::uint32_t> ids;
  for (const auto& stream : streams) {
    ids.clear();
    for (const auto& token : stream.tokens) {
      const auto idx = vocab.find(token);
      ids.push_back(idx ? static_cast<std::uint32_t>(*idx) : kOutOfVocabulary);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == kOutOfVocabulary) continue;
      const std::size_t end = std::min(ids.size(), i + radius + 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        if (ids[j] == kOutOfVocabulary) continue;
        const std::uint32_t a = ids[i];
        const std::uint32_t b = ids[j];
        // Same-type pairs land on the diagonal once per orientation.
        pairs[pair_key(a, b)] += (a == b) ? 2 : 1;
      }
    }
  }
}

inline void check_window(const WindowConfig& window) {
  if (window.radius < 1) throw ConfigError("window radius must be >= 1");
  if (window.cross_document) throw ConfigError("cross-document windows are not supported");
}

}  // namespace detail

/// For every in-vocabulary occurrence T at position i, adds one to
/// counts[T][C] for each in-vocabulary C at positions i-radius..i+radius
/// other than i. Other occurrences of T's own type inside the window count
/// toward the diagonal.
inline CooccurrenceMatrix count_cooccurrences(std::span<const TokenStream> streams,
                                              const Vocabulary& vocab, WindowConfig window = {}) {
  detail::check_window(window);
  CooccurrenceMatrix matrix(vocab, window);
  CooccurrenceMatrix::PairCounts pairs;
  detail::accumulate_pairs(streams, vocab, window.radius, pairs);
  matrix.merge(pairs);
  return matrix;
}

/// Adds the co-occurrences of `new_streams` to `base`. The vocabulary is
/// extended with new types (appended, existing indices unchanged), so the
/// result equals count_cooccurrences over all streams with the extended
/// vocabulary.
inline CooccurrenceMatrix augment_counts(const CooccurrenceMatrix& base,
                                         std::span<const TokenStream> new_streams,
                                         std::optional<WindowConfig> window = std::nullopt) {
  if (window && *window != base.window()) {
    throw ConfigError("augmentation window (radius " + std::to_string(window->radius) +
                      ") differs from the base matrix (radius " +
                      std::to_string(base.window().radius) + ")");
  }
  CooccurrenceMatrix result = base;
  result.mutable_vocabulary() = extend_vocabulary(base.vocabulary(), new_streams);
  CooccurrenceMatrix::PairCounts pairs;
  detail::accumulate_pairs(new_streams, result.vocabulary(), base.window().radius, pairs);
  result.merge(pairs);
  return result;
}

/// Dense copy of a matrix row over all context dimensions, in index order.
inline WordVector row_vector(const CooccurrenceMatrix& m, std::string_view word) {
  const std::size_t t = m.vocabulary().index_of(word);
  WordVector v{std::string(word), std::vector<double>(m.size(), 0.0)};
  for (const auto& e : m.row(t)) v.components[e.context] = static_cast<double>(e.count);
  return v;
}

/// Raw count rows as a sparse space over the vocabulary's context columns.
inline SparseVectorSpace raw_count_space(const CooccurrenceMatrix& m) {
  std::vector<std::vector<SparseEntry>> rows(m.size());
  for (std::size_t t = 0; t < m.size(); ++t) {
    rows[t].reserve(m.row(t).size());
    for (const auto& e : m.row(t)) rows[t].push_back({e.context, static_cast<double>(e.count)});
  }
  return SparseVectorSpace(m.vocabulary(), m.size(), std::move(rows));
}

/// Positive pointwise mutual information with probabilities taken from the
/// matrix margins (natural log):
///   ppmi(t, c) = max(0, log(count(t, c) * total / (rowsum(t) * colsum(c))))
/// Cells that are zero, or clamp to zero, are left out of the sparse rows.
inline SparseVectorSpace ppmi_transform(const CooccurrenceMatrix& m) {
  if (m.total() == 0) throw DataError("PPMI of an empty co-occurrence matrix is undefined");
  std::vector<double> row_sums(m.size(), 0.0);
  std::vector<double> col_sums(m.size(), 0.0);
  for (std::size_t t = 0; t < m.size(); ++t) {
    for (const auto& e : m.row(t)) {
      row_sums[t] += static_cast<double>(e.count);
      col_sums[e.context] += static_cast<double>(e.count);
    }
  }
  const double total = static_cast<double>(m.total());
  std::vector<std::vector<SparseEntry>> rows(m.size());
  for (std::size_t t = 0; t < m.size(); ++t) {
    for (const auto& e : m.row(t)) {
      const double pmi =
          std::log(static_cast<double>(e.count) * total / (row_sums[t] * col_sums[e.context]));
      if (pmi > 0.0) rows[t].push_back({e.context, pmi});
    }
  }
  return SparseVectorSpace(m.vocabulary(), m.size(), std::move(rows));
}

// ---- COOC v1 text format ---------------------------------------------------

inline void write_matrix(std::ostream& out, const CooccurrenceMatrix& m) {
  const auto& vocab = m.vocabulary();
  out << "COOC v1 " << vocab.size() << ' ' << m.window().radius << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << i << '\t' << vocab.token(i) << '\t' << vocab.frequency(i) << '\n';
  }
  for (std::size_t t = 0; t < m.size(); ++t) {
    for (const auto& e : m.row(t)) {
      if (e.context < t) continue;
      out << t << '\t' << e.context << '\t' << e.count << '\n';
    }
  }
}

namespace detail {

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError("line " + std::to_string(line_no) + ": malformed number '" +
                    std::string(field) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace detail

inline CooccurrenceMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!detail::read_line(in, line)) throw DataError("empty matrix file");
  const auto header = detail::split(line, ' ');
  if (header.size() != 4 || header[0] != "COOC" || header[1] != "v1") {
    throw DataError("not a COOC v1 matrix file");
  }
  const auto vocab_size = detail::parse_number<std::size_t>(header[2], line_no);
  const auto radius = detail::parse_number<std::size_t>(header[3], line_no);

  Vocabulary vocab;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    ++line_no;
    if (!detail::read_line(in, line)) throw DataError("truncated vocabulary block");
    const auto f = detail::split(line, '\t');
    if (f.size() != 3) throw DataError("line " + std::to_string(line_no) + ": expected 3 fields");
    if (detail::parse_number<std::size_t>(f[0], line_no) != i) {
      throw DataError("line " + std::to_string(line_no) + ": vocabulary index out of order");
    }
    vocab.add(std::string(f[1]), detail::parse_number<std::uint64_t>(f[2], line_no));
  }

  CooccurrenceMatrix m(std::move(vocab), WindowConfig{radius, false});
  CooccurrenceMatrix::PairCounts pairs;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 3) throw DataError("line " + std::to_string(line_no) + ": expected 3 fields");
    const auto t = detail::parse_number<std::uint32_t>(f[0], line_no);
    const auto c = detail::parse_number<std::uint32_t>(f[1], line_no);
    const auto n = detail::parse_number<std::uint64_t>(f[2], line_no);
    if (t > c || c >= vocab_size || n == 0) {
      throw DataError("line " + std::to_string(line_no) + ": invalid triple");
    }
    if (!pairs.emplace(detail::pair_key(t, c), n).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate triple");
    }
  }
  m.merge(pairs);
  return m;
}

inline std::string to_string(const CooccurrenceMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

}  // namespace driftbench
