#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftbench/error.hpp"
#include "driftbench/parallel.hpp"
#include "driftbench/space.hpp"

namespace driftbench {

enum class Metric { cosine, euclidean, cityblock };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::cosine: return "cosine";
    case Metric::euclidean: return "euclidean";
    case Metric::cityblock: return "cityblock";
  }
  return "unknown";
}

inline Metric parse_metric(std::string_view name) {
  if (name == "cosine") return Metric::cosine;
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cityblock") return Metric::cityblock;
  throw UsageError("unknown metric '" + std::string(name) + "' (expected cosine|euclidean|cityblock)");
}

namespace detail {

inline void check_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DataError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail

inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  detail::check_same_dimension(a.size(), b.size());
  const double na = std::sqrt(detail::dot(a, a));
  const double nb = std::sqrt(detail::dot(b, b));
  if (na == 0.0 || nb == 0.0) throw DataError("cosine similarity is undefined for a zero vector");
  return detail::dot(a, b) / (na * nb);
}

inline double cosine_similarity(const WordVector& a, const WordVector& b) {
  if (a.components.size() != b.components.size()) {
    throw DataError("dimension mismatch between '" + a.word + "' and '" + b.word + "'");
  }
  try {
    return cosine_similarity(a.components, b.components);
  } catch (const DataError&) {
    throw DataError("cosine similarity is undefined: zero vector for '" +
                    (detail::dot(a.components, a.components) == 0.0 ? a.word : b.word) + "'");
  }
}

inline double vector_distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  detail::check_same_dimension(a.size(), b.size());
  double s = 0.0;
  switch (metric) {
    case Metric::euclidean:
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    case Metric::cityblock:
      for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
      return s;
    case Metric::cosine: break;
  }
  throw UsageError("vector_distance takes euclidean or cityblock");
}

inline double vector_distance(const WordVector& a, const WordVector& b, Metric metric) {
  return vector_distance(a.components, b.components, metric);
}

/// Similarity-oriented score: cosine similarity, or the negated distance for
/// euclidean and cityblock, so that larger is always closer.
inline double score(std::span<const double> a, std::span<const double> b, Metric metric) {
  return metric == Metric::cosine ? cosine_similarity(a, b) : -vector_distance(a, b, metric);
}

struct Neighbor {
  std::string token;
  double score;

  bool operator==(const Neighbor&) const = default;
};

/// Ranked neighbors of `query`, best first. Order is total: score descending,
/// then token ascending. For distance metrics the score is -distance.
struct NeighborList {
  std::string query;
  Metric metric = Metric::cosine;
  std::vector<Neighbor> entries;

  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.token);
    return out;
  }

  bool operator==(const NeighborList&) const = default;
};

inline bool ranks_before(double score_a, std::string_view token_a, double score_b,
                         std::string_view token_b) {
  if (score_a != score_b) return score_a > score_b;
  return token_a < token_b;
}

template <typename S>
concept WordSpace = std::is_same_v<S, EmbeddingSpace> || std::is_same_v<S, SparseVectorSpace>;

/// Scores of one query against every row of a space. `valid[i]` is false
/// where the score is undefined (zero rows under cosine).
struct ScoreBuffer {
  std::vector<double> value;
  std::vector<char> valid;

  void reset(std::size_t n) {
    value.assign(n, 0.0);
    valid.assign(n, 1);
  }
};

inline void score_all(const EmbeddingSpace& space, std::span<const double> query, Metric metric,
                      ScoreBuffer& out) {
  detail::check_same_dimension(space.dimension(), query.size());
  out.reset(space.size());
  const double qn = std::sqrt(detail::dot(query, query));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto r = space.row(i);
    if (metric == Metric::cosine) {
      const double rn = std::sqrt(detail::dot(r, r));
      if (rn == 0.0 || qn == 0.0) {
        out.valid[i] = 0;
        continue;
      }
      out.value[i] = detail::dot(query, r) / (qn * rn);
    } else {
      out.value[i] = -vector_distance(query, r, metric);
    }
  }
}

/// Sparse scoring accumulates over the query's nonzero columns only. Distances
/// use the norm expansions ||q-r||^2 = ||q||^2 + ||r||^2 - 2 q.r and
/// |q-r|_1 = |q|_1 + |r|_1 - sum over shared columns of (|q_c| + |r_c| - |q_c - r_c|).
inline void score_all(const SparseVectorSpace& space, std::span<const SparseEntry> query,
                      Metric metric, ScoreBuffer& out) {
  const std::size_t n = space.size();
  out.reset(n);
  std::vector<double>& acc = out.value;
  double q_sq = 0.0;
  double q_l1 = 0.0;
  for (const auto& qe : query) {
    q_sq += qe.value * qe.value;
    q_l1 += std::abs(qe.value);
    for (const auto& ce : space.column(qe.index)) {
      if (metric == Metric::cityblock) {
        acc[ce.index] += std::abs(qe.value) + std::abs(ce.value) - std::abs(qe.value - ce.value);
      } else {
        acc[ce.index] += qe.value * ce.value;
      }
    }
  }
  const double qn = std::sqrt(q_sq);
  for (std::size_t i = 0; i < n; ++i) {
    const double rn = space.norm(i);
    switch (metric) {
      case Metric::cosine:
        if (rn == 0.0 || qn == 0.0) {
          out.valid[i] = 0;
        } else {
          acc[i] = acc[i] / (qn * rn);
        }
        break;
      case Metric::euclidean:
        acc[i] = -std::sqrt(std::max(0.0, q_sq + rn * rn - 2.0 * acc[i]));
        break;
      case Metric::cityblock: {
        double r_l1 = 0.0;
        for (const auto& e : space.row(i)) r_l1 += std::abs(e.value);
        acc[i] = -(q_l1 + r_l1 - acc[i]);
        break;
      }
    }
  }
}

inline void score_all(const EmbeddingSpace& space, std::size_t i, Metric metric, ScoreBuffer& out) {
  score_all(space, space.row(i), metric, out);
}

inline void score_all(const SparseVectorSpace& space, std::size_t i, Metric metric, ScoreBuffer& out) {
  score_all(space, space.row(i), metric, out);
}

inline double row_norm(const EmbeddingSpace& space, std::size_t i) {
  const auto r = space.row(i);
  return std::sqrt(detail::dot(r, r));
}

inline double row_norm(const SparseVectorSpace& space, std::size_t i) { return space.norm(i); }

/// Score between two words of one space.
template <WordSpace Space>
double similarity(const Space& space, std::string_view a, std::string_view b, Metric metric) {
  const auto va = space.vector(a);
  const auto vb = space.vector(b);
  if (metric == Metric::cosine) return cosine_similarity(va, vb);
  return -vector_distance(va, vb, metric);
}

namespace detail {

inline NeighborList select_top(const Vocabulary& vocab, const ScoreBuffer& scores, std::size_t k,
                               Metric metric, std::string query,
                               const std::vector<std::size_t>& excluded) {
  std::vector<std::size_t> candidates;
  candidates.reserve(scores.value.size());
  for (std::size_t i = 0; i < scores.value.size(); ++i) {
    if (!scores.valid[i]) continue;
    if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) continue;
    candidates.push_back(i);
  }
  const auto before = [&](std::size_t a, std::size_t b) {
    return ranks_before(scores.value[a], vocab.token(a), scores.value[b], vocab.token(b));
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), before);
  NeighborList list{std::move(query), metric, {}};
  list.entries.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    list.entries.push_back({vocab.token(candidates[r]), scores.value[candidates[r]]});
  }
  return list;
}

template <WordSpace Space>
void require_nonzero(const Space& space, std::size_t i, Metric metric) {
  if (metric == Metric::cosine && row_norm(space, i) == 0.0) {
    throw DataError("cosine similarity is undefined: zero vector for '" +
                    space.vocabulary().token(i) + "'");
  }
}

}  // namespace detail

struct NeighborOptions {
  bool include_query = false;
};

/// Exact top-k neighbors of `word`. k larger than the candidate count yields
/// the full ranking. Rows with undefined scores (zero vectors under cosine)
/// are skipped as candidates; a zero query vector is an error.
template <WordSpace Space>
NeighborList nearest_neighbors(const Space& space, std::string_view word, std::size_t k,
                               Metric metric = Metric::cosine, NeighborOptions options = {}) {
  if (k < 1) throw UsageError("k must be >= 1");
  const std::size_t i = space.vocabulary().index_of(word);
  detail::require_nonzero(space, i, metric);
  ScoreBuffer scores;
  score_all(space, i, metric, scores);
  std::vector<std::size_t> excluded;
  if (!options.include_query) excluded.push_back(i);
  return detail::select_top(space.vocabulary(), scores, k, metric, std::string(word), excluded);
}

/// Neighbor lists for every word (index order), computed on `threads` workers.
template <WordSpace Space>
std::vector<NeighborList> neighbor_table(const Space& space, std::size_t k,
                                         Metric metric = Metric::cosine,
                                         std::size_t threads = thread_count()) {
  if (k < 1) throw UsageError("k must be >= 1");
  std::vector<NeighborList> table(space.size());
  parallel_chunks(space.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    ScoreBuffer scores;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& word = space.vocabulary().token(i);
      table[i].query = word;
      table[i].metric = metric;
      if (metric == Metric::cosine && row_norm(space, i) == 0.0) continue;
      score_all(space, i, metric, scores);
      table[i] = detail::select_top(space.vocabulary(), scores, k, metric, word, {i});
    }
  });
  return table;
}

struct AnalogyOptions {
  bool exclude_inputs = true;
};

/// Neighbors (cosine) of vector(b) - vector(a) + vector(c): "a is to b as c
/// is to ?". The three inputs are excluded from the result unless disabled.
template <WordSpace Space>
NeighborList analogy(const Space& space, std::string_view a, std::string_view b,
                     std::string_view c, std::size_t k, AnalogyOptions options = {}) {
  if (k < 1) throw UsageError("k must be >= 1");
  const auto& vocab = space.vocabulary();
  const std::size_t ia = vocab.index_of(a);
  const std::size_t ib = vocab.index_of(b);
  const std::size_t ic = vocab.index_of(c);
  ScoreBuffer scores;
  if constexpr (std::is_same_v<Space, EmbeddingSpace>) {
    std::vector<double> query(space.dimension());
    const auto ra = space.row(ia);
    const auto rb = space.row(ib);
    const auto rc = space.row(ic);
    for (std::size_t j = 0; j < query.size(); ++j) query[j] = rb[j] - ra[j] + rc[j];
    if (detail::dot(query, query) == 0.0) throw DataError("analogy query vector is zero");
    score_all(space, query, Metric::cosine, scores);
  } else {
    std::vector<double> dense(space.dimension(), 0.0);
    for (const auto& e : space.row(ia)) dense[e.index] -= e.value;
    for (const auto& e : space.row(ib)) dense[e.index] += e.value;
    for (const auto& e : space.row(ic)) dense[e.index] += e.value;
    std::vector<SparseEntry> query;
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (dense[j] != 0.0) query.push_back({static_cast<std::uint32_t>(j), dense[j]});
    }
    if (query.empty()) throw DataError("analogy query vector is zero");
    score_all(space, query, Metric::cosine, scores);
  }
  std::vector<std::size_t> excluded;
  if (options.exclude_inputs) excluded = {ia, ib, ic};
  std::string label = std::string(b) + " - " + std::string(a) + " + " + std::string(c);
  return detail::select_top(vocab, scores, k, Metric::cosine, std::move(label), excluded);
}

// ---- output ----------------------------------------------------------------

/// TSV rows `rank<TAB>token<TAB>score`, rank from 1, score to 10 decimals.
inline void write_neighbors_tsv(std::ostream& out, const NeighborList& list) {
  char buf[64];
  for (std::size_t r = 0; r < list.entries.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.10f", list.entries[r].score);
    out << (r + 1) << '\t' << list.entries[r].token << '\t' << buf << '\n';
  }
}

inline nlohmann::json to_json(const NeighborList& list) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t r = 0; r < list.entries.size(); ++r) {
    arr.push_back({{"rank", r + 1}, {"token", list.entries[r].token}, {"score", list.entries[r].score}});
  }
  return nlohmann::json{{"query", list.query}, {"metric", to_string(list.metric)}, {"neighbors", arr}};
}

}  // namespace driftbench
