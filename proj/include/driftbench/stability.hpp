#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftbench/corpus.hpp"
#include "driftbench/error.hpp"
#include "driftbench/linalg.hpp"
#include "driftbench/parallel.hpp"
#include "driftbench/space.hpp"
#include "driftbench/trainer.hpp"
#include "driftbench/vector_space.hpp"

namespace driftbench {

// ---- neighbor-list comparison ----------------------------------------------

struct OverlapResult {
  double value = 0.0;
  std::size_t k_used = 0;
  bool clamped = false;  // a list was shorter than the requested k
};

namespace detail {

inline std::vector<std::string> top_tokens(const NeighborList& list, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& e : list.entries) {
    if (out.size() == k) break;
    if (e.token == list.query) continue;
    out.push_back(e.token);
  }
  return out;
}

inline std::size_t list_length(const NeighborList& list) {
  std::size_t n = 0;
  for (const auto& e : list.entries) n += (e.token != list.query);
  return n;
}

inline void check_same_query(const NeighborList& a, const NeighborList& b) {
  if (a.query != b.query) {
    throw UsageError("neighbor lists belong to different queries ('" + a.query + "' vs '" + b.query + "')");
  }
}

inline std::size_t clamp_k(const NeighborList& a, const NeighborList& b, std::size_t k, bool& clamped) {
  if (k < 1) throw UsageError("k must be >= 1");
  const std::size_t available = std::min(list_length(a), list_length(b));
  clamped = available < k;
  return std::min(k, available);
}

inline std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = 0;
  for (const auto& t : a) n += std::find(b.begin(), b.end(), t) != b.end();
  return n;
}

}  // namespace detail

/// |top_k(A) & top_k(B)| / k, ignoring the query word itself. If either list
/// holds fewer than k entries, k shrinks to the shorter length and the
/// result is flagged.
inline OverlapResult overlap_at_k(const NeighborList& a, const NeighborList& b, std::size_t k) {
  detail::check_same_query(a, b);
  OverlapResult r;
  r.k_used = detail::clamp_k(a, b, k, r.clamped);
  if (r.k_used == 0) return r;
  const auto ta = detail::top_tokens(a, r.k_used);
  const auto tb = detail::top_tokens(b, r.k_used);
  r.value = static_cast<double>(detail::intersection_size(ta, tb)) / static_cast<double>(r.k_used);
  return r;
}

/// Kendall tau-b between two paired samples; nullopt when fewer than two
/// pairs or when either side is constant.
inline std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("kendall_tau_b needs paired samples");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double concordant = 0;
  double discordant = 0;
  double ties_x = 0;
  double ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++ties_x;
      } else if (dy == 0) {
        ++ties_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double denom = std::sqrt((concordant + discordant + ties_x) * (concordant + discordant + ties_y));
  if (denom == 0) return std::nullopt;
  return (concordant - discordant) / denom;
}

/// Average ranks (1-based), ties sharing the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

/// Spearman rank correlation (Pearson over average ranks); nullopt if either
/// side is constant or fewer than two observations exist.
inline std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("spearman needs paired samples");
  if (x.size() < 2) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

struct NeighborDiff {
  std::string word;
  std::size_t k = 0;
  double overlap_at_k = 0.0;
  double jaccard_at_k = 0.0;
  bool exact_order = false;
  std::optional<double> rank_agreement;  // Kendall tau-b over the shared words
  bool clamped = false;
};

/// Compares two neighbor lists of the same query.
inline NeighborDiff compare_neighbors(const NeighborList& a, const NeighborList& b, std::size_t k) {
  detail::check_same_query(a, b);
  NeighborDiff diff;
  diff.word = a.query;
  diff.k = detail::clamp_k(a, b, k, diff.clamped);
  const auto ta = detail::top_tokens(a, diff.k);
  const auto tb = detail::top_tokens(b, diff.k);
  const std::size_t shared = detail::intersection_size(ta, tb);
  if (diff.k > 0) {
    diff.overlap_at_k = static_cast<double>(shared) / static_cast<double>(diff.k);
    const std::size_t united = ta.size() + tb.size() - shared;
    diff.jaccard_at_k = united == 0 ? 1.0 : static_cast<double>(shared) / static_cast<double>(united);
  }
  diff.exact_order = diff.k > 0 && ta == tb;

  std::vector<double> rank_a;
  std::vector<double> rank_b;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const auto it = std::find(tb.begin(), tb.end(), ta[i]);
    if (it == tb.end()) continue;
    rank_a.push_back(static_cast<double>(i));
    rank_b.push_back(static_cast<double>(it - tb.begin()));
  }
  diff.rank_agreement = kendall_tau_b(rank_a, rank_b);
  return diff;
}

/// Differential comparison of `word` across two spaces. No alignment is
/// needed: the spaces may differ in dimension and in vocabulary.
template <WordSpace SpaceA, WordSpace SpaceB>
NeighborDiff neighbor_diff(const SpaceA& a, const SpaceB& b, std::string_view word, std::size_t k,
                           Metric metric = Metric::cosine) {
  const auto la = nearest_neighbors(a, word, k, metric);
  const auto lb = nearest_neighbors(b, word, k, metric);
  return compare_neighbors(la, lb, k);
}

// ---- absolute position -----------------------------------------------------

struct Displacement {
  double euclidean = 0.0;
  std::optional<double> cosine;  // between the two versions of the vector; undefined for a zero vector
};

/// Euclidean distance between the two positions of `word`. Without a prior
/// alignment the value depends on each space's arbitrary basis.
inline Displacement displacement(const EmbeddingSpace& a, const EmbeddingSpace& b, std::string_view word) {
  if (a.dimension() != b.dimension()) {
    throw DataError("displacement needs equal dimensions (" + std::to_string(a.dimension()) + " vs " +
                    std::to_string(b.dimension()) +
                    "); positions in different spaces are not comparable, align them with procrustes_align first");
  }
  const auto ra = a.row(word);
  const auto rb = b.row(word);
  Displacement d;
  d.euclidean = vector_distance(ra, rb, Metric::euclidean);
  const double na = std::sqrt(detail::dot(ra, ra));
  const double nb = std::sqrt(detail::dot(rb, rb));
  if (na > 0 && nb > 0) d.cosine = detail::dot(ra, rb) / (na * nb);
  return d;
}

// ---- rotation and alignment ------------------------------------------------

/// Multiplies every row by `q` (x -> x Q). The identity leaves the space
/// bitwise unchanged.
inline EmbeddingSpace rotate(const EmbeddingSpace& space, const Matrix& q) {
  if (q.rows() != space.dimension() || q.cols() != space.dimension()) {
    throw DataError("rotation is " + std::to_string(q.rows()) + "x" + std::to_string(q.cols()) +
                    " but the space has dimension " + std::to_string(space.dimension()));
  }
  if (is_identity(q)) return space;
  EmbeddingSpace out(space.vocabulary(), space.dimension());
  out.set_provenance(space.provenance());
  const std::size_t d = space.dimension();
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto x = space.row(i);
    auto y = out.row(i);
    for (std::size_t k = 0; k < d; ++k) {
      const double xk = x[k];
      for (std::size_t j = 0; j < d; ++j) y[j] += xk * q(k, j);
    }
  }
  return out;
}

inline EmbeddingSpace random_rotation(const EmbeddingSpace& space, std::uint64_t seed) {
  return rotate(space, random_orthogonal(space.dimension(), seed));
}

struct AlignmentResult {
  Matrix rotation;                       // d x d orthogonal
  double residual = 0.0;                 // ||(X - mean_x) R - (Y - mean_y)||_F over shared rows
  std::vector<std::string> shared_vocab; // in X's index order
  std::vector<double> mean_x;
  std::vector<double> mean_y;
  bool underdetermined = false;          // fewer shared words than dimensions
  bool converged = true;                 // SVD sweep limit not hit
};

/// Orthogonal Procrustes: the rotation R minimizing ||Xc R - Yc||_F over the
/// shared vocabulary, where Xc and Yc are the mean-centered shared rows.
/// R = U V^T from the SVD U S V^T of Xc^T Yc. No scaling is applied.
inline AlignmentResult procrustes_align(const EmbeddingSpace& x, const EmbeddingSpace& y) {
  if (x.dimension() != y.dimension()) {
    throw DataError("procrustes_align needs equal dimensions (" + std::to_string(x.dimension()) + " vs " +
                    std::to_string(y.dimension()) + ")");
  }
  const std::size_t d = x.dimension();
  AlignmentResult result;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (const auto j = y.vocabulary().find(x.vocabulary().token(i))) {
      rows.emplace_back(i, *j);
      result.shared_vocab.push_back(x.vocabulary().token(i));
    }
  }
  if (rows.empty()) throw DataError("procrustes_align: the two spaces share no vocabulary");
  result.underdetermined = rows.size() < d;

  result.mean_x.assign(d, 0.0);
  result.mean_y.assign(d, 0.0);
  for (const auto& [i, j] : rows) {
    const auto rx = x.row(i);
    const auto ry = y.row(j);
    for (std::size_t k = 0; k < d; ++k) {
      result.mean_x[k] += rx[k];
      result.mean_y[k] += ry[k];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (std::size_t k = 0; k < d; ++k) {
    result.mean_x[k] *= inv;
    result.mean_y[k] *= inv;
  }

  Matrix cross(d, d);
  for (const auto& [i, j] : rows) {
    const auto rx = x.row(i);
    const auto ry = y.row(j);
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = rx[a] - result.mean_x[a];
      for (std::size_t b = 0; b < d; ++b) cross(a, b) += xa * (ry[b] - result.mean_y[b]);
    }
  }
  const SvdResult svd = jacobi_svd(cross);
  result.converged = svd.converged;
  result.rotation = multiply(svd.u, transpose(svd.v));

  double sq = 0.0;
  std::vector<double> mapped(d);
  for (const auto& [i, j] : rows) {
    const auto rx = x.row(i);
    const auto ry = y.row(j);
    std::fill(mapped.begin(), mapped.end(), 0.0);
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = rx[a] - result.mean_x[a];
      for (std::size_t b = 0; b < d; ++b) mapped[b] += xa * result.rotation(a, b);
    }
    for (std::size_t b = 0; b < d; ++b) {
      const double diff = mapped[b] - (ry[b] - result.mean_y[b]);
      sq += diff * diff;
    }
  }
  result.residual = std::sqrt(sq);
  return result;
}

/// Maps every row of X into Y's frame: x -> (x - mean_x) R + mean_y.
inline EmbeddingSpace apply_alignment(const EmbeddingSpace& x, const AlignmentResult& alignment) {
  const std::size_t d = x.dimension();
  if (alignment.rotation.rows() != d) throw DataError("alignment dimension does not match the space");
  EmbeddingSpace out(x.vocabulary(), d);
  out.set_provenance(x.provenance());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto rx = x.row(i);
    auto ro = out.row(i);
    for (std::size_t b = 0; b < d; ++b) ro[b] = alignment.mean_y[b];
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = rx[a] - alignment.mean_x[a];
      for (std::size_t b = 0; b < d; ++b) ro[b] += xa * alignment.rotation(a, b);
    }
  }
  return out;
}

/// ||Xc R - Yc||_F for an arbitrary R, over the shared rows used by `alignment`.
inline double procrustes_objective(const EmbeddingSpace& x, const EmbeddingSpace& y, const Matrix& r,
                                   const AlignmentResult& alignment) {
  const std::size_t d = x.dimension();
  double sq = 0.0;
  std::vector<double> mapped(d);
  for (const auto& word : alignment.shared_vocab) {
    const auto rx = x.row(word);
    const auto ry = y.row(word);
    std::fill(mapped.begin(), mapped.end(), 0.0);
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = rx[a] - alignment.mean_x[a];
      for (std::size_t b = 0; b < d; ++b) mapped[b] += xa * r(a, b);
    }
    for (std::size_t b = 0; b < d; ++b) {
      const double diff = mapped[b] - (ry[b] - alignment.mean_y[b]);
      sq += diff * diff;
    }
  }
  return std::sqrt(sq);
}

// ---- reports ---------------------------------------------------------------

struct WordStability {
  NeighborDiff diff;
  std::uint64_t frequency = 0;  // corpus frequency in model A
  std::optional<Displacement> displacement;
};

struct Quantiles {
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct StabilityReport {
  std::size_t k = 0;
  Metric metric = Metric::cosine;
  std::vector<WordStability> words;  // shared vocabulary, in model A's order
  double mean_overlap = 0.0;
  double mean_jaccard = 0.0;
  double exact_order_fraction = 0.0;
  std::optional<double> mean_rank_agreement;
  std::optional<double> mean_displacement;
  Quantiles overlap_quantiles;
  std::optional<double> frequency_correlation;  // Spearman(frequency, overlap); nullopt if undefined
  bool aligned = false;

  const WordStability* find(std::string_view word) const {
    for (const auto& w : words) {
      if (w.diff.word == word) return &w;
    }
    return nullptr;
  }
};

/// Linear-interpolation quantiles of an unsorted sample.
inline Quantiles quantiles(std::vector<double> v) {
  Quantiles q;
  if (v.empty()) return q;
  std::sort(v.begin(), v.end());
  const auto at = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  q.min = v.front();
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.max = v.back();
  return q;
}

struct ReportOptions {
  std::size_t threads = thread_count();
  // Restrict to these words (must be shared); empty means the whole shared vocabulary.
  std::vector<std::string> words;
  // Align B onto A's frame before measuring displacement (dense, equal-dimension spaces only).
  bool align = false;
};

namespace detail {

template <WordSpace Space>
std::vector<NeighborList> lists_for(const Space& space, const std::vector<std::size_t>& indices, std::size_t k,
                                    Metric metric, std::size_t threads) {
  std::vector<NeighborList> out(indices.size());
  parallel_chunks(indices.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    ScoreBuffer scores;
    for (std::size_t n = begin; n < end; ++n) {
      const std::size_t i = indices[n];
      const auto& word = space.vocabulary().token(i);
      out[n].query = word;
      out[n].metric = metric;
      if (metric == Metric::cosine && row_norm(space, i) == 0.0) continue;
      score_all(space, i, metric, scores);
      out[n] = select_top(space.vocabulary(), scores, k, metric, word, {i});
    }
  });
  return out;
}

}  // namespace detail

template <WordSpace SpaceA, WordSpace SpaceB>
StabilityReport stability_report(const SpaceA& a, const SpaceB& b, std::size_t k, Metric metric = Metric::cosine,
                                 const ReportOptions& options = {}) {
  if (k < 1) throw UsageError("k must be >= 1");
  StabilityReport report;
  report.k = k;
  report.metric = metric;

  std::vector<std::size_t> ia;
  std::vector<std::size_t> ib;
  if (options.words.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (const auto j = b.vocabulary().find(a.vocabulary().token(i))) {
        ia.push_back(i);
        ib.push_back(*j);
      }
    }
  } else {
    for (const auto& w : options.words) {
      const auto i = a.vocabulary().find(w);
      const auto j = b.vocabulary().find(w);
      if (!i || !j) throw LookupError(w);
      ia.push_back(*i);
      ib.push_back(*j);
    }
  }

  const auto lists_a = detail::lists_for(a, ia, k, metric, options.threads);
  const auto lists_b = detail::lists_for(b, ib, k, metric, options.threads);

  std::optional<EmbeddingSpace> aligned_b;
  if constexpr (std::is_same_v<SpaceA, EmbeddingSpace> && std::is_same_v<SpaceB, EmbeddingSpace>) {
    if (options.align && a.dimension() == b.dimension()) {
      aligned_b = apply_alignment(b, procrustes_align(b, a));
      report.aligned = true;
    }
  }

  std::vector<double> overlaps;
  std::vector<double> freqs;
  double jaccard_sum = 0;
  double exact = 0;
  double tau_sum = 0;
  std::size_t tau_n = 0;
  double disp_sum = 0;
  std::size_t disp_n = 0;
  for (std::size_t n = 0; n < ia.size(); ++n) {
    WordStability ws;
    ws.diff = compare_neighbors(lists_a[n], lists_b[n], k);
    ws.frequency = a.vocabulary().frequency(ia[n]);
    if constexpr (std::is_same_v<SpaceA, EmbeddingSpace> && std::is_same_v<SpaceB, EmbeddingSpace>) {
      if (a.dimension() == b.dimension()) {
        const auto& word = a.vocabulary().token(ia[n]);
        ws.displacement = displacement(a, aligned_b ? *aligned_b : b, word);
        disp_sum += ws.displacement->euclidean;
        ++disp_n;
      }
    }
    overlaps.push_back(ws.diff.overlap_at_k);
    freqs.push_back(static_cast<double>(ws.frequency));
    jaccard_sum += ws.diff.jaccard_at_k;
    exact += ws.diff.exact_order ? 1 : 0;
    if (ws.diff.rank_agreement) {
      tau_sum += *ws.diff.rank_agreement;
      ++tau_n;
    }
    report.words.push_back(std::move(ws));
  }
  if (!overlaps.empty()) {
    const double n = static_cast<double>(overlaps.size());
    double sum = 0;
    for (double o : overlaps) sum += o;
    report.mean_overlap = sum / n;
    report.mean_jaccard = jaccard_sum / n;
    report.exact_order_fraction = exact / n;
  }
  if (tau_n > 0) report.mean_rank_agreement = tau_sum / static_cast<double>(tau_n);
  if (disp_n > 0) report.mean_displacement = disp_sum / static_cast<double>(disp_n);
  report.overlap_quantiles = quantiles(overlaps);
  report.frequency_correlation = spearman(freqs, overlaps);
  return report;
}

inline nlohmann::json to_json(const StabilityReport& r) {
  using nlohmann::json;
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json words = json::array();
  for (const auto& w : r.words) {
    json rec{{"word", w.diff.word},
             {"frequency", w.frequency},
             {"k", w.diff.k},
             {"overlap", w.diff.overlap_at_k},
             {"jaccard", w.diff.jaccard_at_k},
             {"exact_order", w.diff.exact_order},
             {"rank_agreement", opt(w.diff.rank_agreement)},
             {"clamped", w.diff.clamped}};
    if (w.displacement) {
      rec["displacement"] = w.displacement->euclidean;
      rec["displacement_cosine"] = opt(w.displacement->cosine);
    } else {
      rec["displacement"] = nullptr;
    }
    words.push_back(std::move(rec));
  }
  return json{{"k", r.k},
              {"metric", to_string(r.metric)},
              {"aligned", r.aligned},
              {"shared_words", r.words.size()},
              {"aggregates",
               {{"mean_overlap", r.mean_overlap},
                {"mean_jaccard", r.mean_jaccard},
                {"exact_order_fraction", r.exact_order_fraction},
                {"mean_rank_agreement", opt(r.mean_rank_agreement)},
                {"mean_displacement", opt(r.mean_displacement)},
                {"overlap_quantiles",
                 {{"min", r.overlap_quantiles.min},
                  {"q25", r.overlap_quantiles.q25},
                  {"median", r.overlap_quantiles.median},
                  {"q75", r.overlap_quantiles.q75},
                  {"max", r.overlap_quantiles.max}}},
                {"frequency_correlation", opt(r.frequency_correlation)},
                {"frequency_correlation_defined", r.frequency_correlation.has_value()}}},
              {"words", std::move(words)}};
}

/// CSV: word,frequency,overlap,jaccard,exact_order,rank_agreement,displacement
/// Undefined values are left empty.
inline void write_report_csv(std::ostream& out, const StabilityReport& r) {
  out << "word,frequency,overlap,jaccard,exact_order,rank_agreement,displacement\n";
  const auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
  };
  for (const auto& w : r.words) {
    std::string word = w.diff.word;
    if (word.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : word) quoted += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
      word = quoted + "\"";
    }
    out << word << ',' << w.frequency << ',' << num(w.diff.overlap_at_k) << ',' << num(w.diff.jaccard_at_k) << ','
        << (w.diff.exact_order ? "true" : "false") << ','
        << (w.diff.rank_agreement ? num(*w.diff.rank_agreement) : std::string()) << ','
        << (w.displacement ? num(w.displacement->euclidean) : std::string()) << '\n';
  }
}

// ---- cross-seed stability --------------------------------------------------

struct SeedStabilityReport {
  std::vector<std::uint64_t> seeds;
  std::size_t k = 0;
  std::vector<std::string> words;        // vocabulary shared by every model
  std::vector<std::uint64_t> frequencies;
  std::vector<double> mean_overlap;      // per word, over all seed pairs
  double overall_mean_overlap = 0.0;
  std::optional<double> frequency_correlation;
  std::vector<std::vector<double>> epoch_losses;  // per seed
};

/// Trains one model per seed and averages overlap@k over every unordered
/// pair of models (a model is never compared with itself; a seed listed
/// twice yields two identical models whose overlap is 1).
inline SeedStabilityReport cross_seed_stability(std::span<const TokenStream> streams, const TrainingConfig& config,
                                                std::span<const std::uint64_t> seeds, std::size_t k,
                                                std::size_t threads = thread_count()) {
  if (seeds.size() < 2) throw UsageError("cross-seed stability needs at least two seeds");
  if (k < 1) throw UsageError("k must be >= 1");
  std::vector<std::optional<TrainingResult>> models(seeds.size());
  parallel_chunks(seeds.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t s = begin; s < end; ++s) {
      TrainingConfig c = config;
      c.seed = seeds[s];
      try {
        models[s] = train(streams, c);
      } catch (const Error& e) {
        throw Error(e.kind(), "training with seed " + std::to_string(seeds[s]) + " failed: " + e.what());
      }
    }
  });

  SeedStabilityReport report;
  report.seeds.assign(seeds.begin(), seeds.end());
  report.k = k;
  for (const auto& m : models) report.epoch_losses.push_back(m->epoch_losses);

  // Every model shares one vocabulary (same corpus and min_count).
  const auto& vocab = models.front()->embedding.vocabulary();
  std::vector<std::size_t> all(vocab.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::vector<NeighborList>> tables;
  tables.reserve(models.size());
  for (const auto& m : models) tables.push_back(detail::lists_for(m->embedding, all, k, Metric::cosine, threads));

  std::vector<double> freqs;
  double total = 0.0;
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (std::size_t j = i + 1; j < models.size(); ++j) {
        sum += overlap_at_k(tables[i][w], tables[j][w], k).value;
        ++pairs;
      }
    }
    const double mean = sum / static_cast<double>(pairs);
    report.words.push_back(vocab.token(w));
    report.frequencies.push_back(vocab.frequency(w));
    report.mean_overlap.push_back(mean);
    freqs.push_back(static_cast<double>(vocab.frequency(w)));
    total += mean;
  }
  if (!report.words.empty()) report.overall_mean_overlap = total / static_cast<double>(report.words.size());
  report.frequency_correlation = spearman(freqs, report.mean_overlap);
  return report;
}

inline nlohmann::json to_json(const SeedStabilityReport& r) {
  using nlohmann::json;
  json words = json::array();
  for (std::size_t i = 0; i < r.words.size(); ++i) {
    words.push_back({{"word", r.words[i]}, {"frequency", r.frequencies[i]}, {"mean_overlap", r.mean_overlap[i]}});
  }
  return json{{"seeds", r.seeds},
              {"k", r.k},
              {"overall_mean_overlap", r.overall_mean_overlap},
              {"frequency_correlation", r.frequency_correlation ? json(*r.frequency_correlation) : json(nullptr)},
              {"epoch_losses", r.epoch_losses},
              {"words", std::move(words)}};
}

}  // namespace driftbench
