#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. They favour obviousness over speed.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "driftbench/corpus.hpp"
#include "driftbench/random.hpp"

namespace oracle {

using Cell = std::pair<std::string, std::string>;
using Counts = std::map<Cell, std::uint64_t>;

/// Ordered-pair counts over every position pair (i, j), i != j, |i - j| <= radius.
inline Counts all_pairs(const std::vector<driftbench::TokenStream>& streams, std::size_t radius,
                        const driftbench::Vocabulary* vocab = nullptr) {
  Counts counts;
  for (const auto& s : streams) {
    const auto n = s.tokens.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap > radius) continue;
        if (vocab && (!vocab->contains(s.tokens[i]) || !vocab->contains(s.tokens[j]))) continue;
        ++counts[{s.tokens[i], s.tokens[j]}];
      }
    }
  }
  return counts;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  return dot(a, b) / (std::sqrt(dot(a, a)) * std::sqrt(dot(b, b)));
}

/// Documents of random tokens "t0".."t<vocab-1>".
inline std::vector<driftbench::TokenStream> random_streams(driftbench::Rng& rng, std::size_t docs,
                                                           std::size_t max_tokens, std::size_t vocab) {
  std::vector<driftbench::TokenStream> out;
  for (std::size_t d = 0; d < docs; ++d) {
    driftbench::TokenStream s{"doc" + std::to_string(d), {}};
    const auto n = 1 + rng.below(max_tokens);
    for (std::size_t i = 0; i < n; ++i) s.tokens.push_back("t" + std::to_string(rng.below(vocab)));
    out.push_back(std::move(s));
  }
  return out;
}

inline const std::vector<driftbench::TokenStream>& rose_streams() {
  static const std::vector<driftbench::TokenStream> streams{
      {"rose", {"rose", "is", "a", "rose", "is", "a", "rose", "is", "a", "rose"}}};
  return streams;
}

}  // namespace oracle
