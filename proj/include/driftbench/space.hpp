#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftbench/corpus.hpp"
#include "driftbench/error.hpp"

namespace driftbench {

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

struct WordVector {
  std::string word;
  std::vector<double> components;
};

struct Provenance {
  std::string config;         // serialized training or build configuration
  std::string corpus_digest;  // SHA-256 hex of the input corpus, when known
};

/// Vocabulary plus a dense row-major matrix, one row of `dimension` reals per
/// word. Used for trained embeddings and for rotated or aligned copies.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;

  EmbeddingSpace(Vocabulary vocab, std::size_t dimension)
      : vocab_(std::move(vocab)), dimension_(dimension), data_(vocab_.size() * dimension, 0.0) {}

  EmbeddingSpace(Vocabulary vocab, std::size_t dimension, std::vector<double> data)
      : vocab_(std::move(vocab)), dimension_(dimension), data_(std::move(data)) {
    if (data_.size() != vocab_.size() * dimension_) {
      throw DataError("embedding matrix has " + std::to_string(data_.size()) +
                      " values, expected " + std::to_string(vocab_.size() * dimension_));
    }
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  std::size_t size() const noexcept { return vocab_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dimension_, dimension_);
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(data_).subspan(i * dimension_, dimension_);
  }

  std::span<const double> row(std::string_view word) const { return row(vocab_.index_of(word)); }

  WordVector vector(std::string_view word) const {
    const auto r = row(word);
    return WordVector{std::string(word), std::vector<double>(r.begin(), r.end())};
  }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  const Provenance& provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  bool operator==(const EmbeddingSpace& other) const {
    return vocab_ == other.vocab_ && dimension_ == other.dimension_ && data_ == other.data_;
  }

 private:
  Vocabulary vocab_;
  std::size_t dimension_ = 0;
  std::vector<double> data_;
  Provenance provenance_;
};

struct SparseEntry {
  std::uint32_t index;
  double value;
};

/// Sparse rows over `dimension` context columns (raw counts or PPMI). Keeps
/// a column-major copy so that cosine scores against every row can be
/// accumulated from the query's nonzeros alone.
class SparseVectorSpace {
 public:
  SparseVectorSpace() = default;

  SparseVectorSpace(Vocabulary vocab, std::size_t dimension,
                    std::vector<std::vector<SparseEntry>> rows)
      : vocab_(std::move(vocab)), dimension_(dimension), rows_(std::move(rows)) {
    if (rows_.size() != vocab_.size()) throw DataError("sparse space row count != vocabulary size");
    columns_.resize(dimension_);
    norms_.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      double sq = 0.0;
      for (const auto& e : rows_[i]) {
        if (e.index >= dimension_) throw DataError("sparse entry outside the context dimension");
        columns_[e.index].push_back({static_cast<std::uint32_t>(i), e.value});
        sq += e.value * e.value;
      }
      norms_[i] = std::sqrt(sq);
    }
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<const SparseEntry> row(std::size_t i) const { return rows_.at(i); }
  std::span<const SparseEntry> column(std::size_t j) const { return columns_.at(j); }
  double norm(std::size_t i) const { return norms_.at(i); }

  WordVector vector(std::string_view word) const {
    const std::size_t i = vocab_.index_of(word);
    WordVector v{std::string(word), std::vector<double>(dimension_, 0.0)};
    for (const auto& e : rows_[i]) v.components[e.index] = e.value;
    return v;
  }

 private:
  Vocabulary vocab_;
  std::size_t dimension_ = 0;
  std::vector<std::vector<SparseEntry>> rows_;
  std::vector<std::vector<SparseEntry>> columns_;
  std::vector<double> norms_;
};

// ---- embedding text format -------------------------------------------------
//
//   <vocab_size> <dimension>
//   token v1 v2 ... vd
//
// Values use the shortest representation that round-trips exactly.

inline void write_embedding_text(std::ostream& out, const EmbeddingSpace& space) {
  out << space.size() << ' ' << space.dimension() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.vocabulary().token(i);
    for (double v : space.row(i)) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

/// Frequencies are not part of the text format; loaded words get frequency 1.
inline EmbeddingSpace read_embedding_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty embedding file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::size_t n = 0;
  std::size_t d = 0;
  {
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw DataError("embedding header must be '<vocab_size> <dimension>'");
    const auto parse = [&](std::string_view f, std::size_t& out_value) {
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), out_value);
      if (ec != std::errc{} || p != f.data() + f.size()) {
        throw DataError("embedding header must be '<vocab_size> <dimension>'");
      }
    };
    parse(std::string_view(line).substr(0, sp), n);
    parse(std::string_view(line).substr(sp + 1), d);
  }
  if (d == 0) throw DataError("embedding dimension must be >= 1");

  Vocabulary vocab;
  std::vector<double> data;
  data.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("embedding file truncated at row " + std::to_string(i));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view rest(line);
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) throw DataError("row " + std::to_string(i) + " has no values");
    vocab.add(std::string(rest.substr(0, sp)), 1);
    rest.remove_prefix(sp + 1);
    for (std::size_t j = 0; j < d; ++j) {
      const auto next = rest.find(' ');
      const auto field = rest.substr(0, next);
      double v = 0.0;
      const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || p != field.data() + field.size() || !std::isfinite(v)) {
        throw DataError("row " + std::to_string(i) + ": malformed value '" + std::string(field) + "'");
      }
      data.push_back(v);
      if (next == std::string_view::npos) {
        if (j + 1 != d) throw DataError("row " + std::to_string(i) + ": expected " + std::to_string(d) + " values");
        rest = {};
      } else {
        rest.remove_prefix(next + 1);
      }
    }
    if (!rest.empty()) throw DataError("row " + std::to_string(i) + ": too many values");
  }
  return EmbeddingSpace(std::move(vocab), d, std::move(data));
}

}  // namespace driftbench
