#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "driftbench/corpus.hpp"
#include "driftbench/error.hpp"
#include "driftbench/random.hpp"

namespace driftbench {

struct SyntheticCorpusConfig {
  std::size_t vocab_size = 500;
  double zipf_exponent = 1.0;
  std::size_t clusters = 25;
  // Probability mass that each transition keeps inside the current word's cluster.
  double cluster_affinity = 0.7;
  std::size_t tokens = 20000;
  std::size_t document_length = 1000;
  std::uint64_t seed = 1;
};

/// Seeded bigram (Markov) sampler over words "w000", "w001", ... with Zipfian
/// unigram margins. Word i belongs to cluster i mod `clusters`; transitions
/// follow
///   P(j | i) = (1 - a) pi_j + a pi_j [c(j) = c(i)] / pi(c(i))
/// where pi is the Zipf distribution and a the cluster affinity. pi is
/// stationary for this chain and the first word of every document is drawn
/// from pi, so every position has exactly Zipfian margins while words of
/// one cluster share contexts.
class SyntheticCorpus {
 public:
  explicit SyntheticCorpus(SyntheticCorpusConfig config) : config_(config) {
    if (config_.vocab_size < 2) throw ConfigError("synthetic vocabulary needs >= 2 words");
    if (config_.clusters < 1 || config_.clusters > config_.vocab_size) {
      throw ConfigError("cluster count must be in [1, vocab_size]");
    }
    if (config_.cluster_affinity < 0.0 || config_.cluster_affinity > 1.0) {
      throw ConfigError("cluster affinity must be in [0, 1]");
    }
    if (config_.document_length < 1) throw ConfigError("document length must be >= 1");

    const std::size_t n = config_.vocab_size;
    pi_.resize(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pi_[i] = 1.0 / std::pow(static_cast<double>(i + 1), config_.zipf_exponent);
      norm += pi_[i];
    }
    for (double& p : pi_) p /= norm;

    all_ = all_indices();
    global_ = cumulative(all_);
    members_.resize(config_.clusters);
    for (std::size_t i = 0; i < n; ++i) members_[i % config_.clusters].push_back(i);
    for (const auto& m : members_) cluster_cdf_.push_back(cumulative(m));

    char buf[16];
    const int width = n <= 1000 ? 3 : static_cast<int>(std::to_string(n - 1).size());
    for (std::size_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof(buf), "w%0*zu", width, i);
      words_.emplace_back(buf);
    }
  }

  const std::vector<double>& unigram() const noexcept { return pi_; }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::size_t cluster_of(std::size_t word) const { return word % config_.clusters; }

  std::vector<TokenStream> generate() const {
    Rng rng(config_.seed);
    std::vector<TokenStream> docs;
    std::size_t produced = 0;
    while (produced < config_.tokens) {
      TokenStream doc;
      doc.doc_id = "synthetic-" + std::to_string(docs.size());
      const std::size_t len = std::min(config_.document_length, config_.tokens - produced);
      std::size_t current = draw(global_, all_, rng);
      doc.tokens.push_back(words_[current]);
      for (std::size_t t = 1; t < len; ++t) {
        if (rng.uniform() < config_.cluster_affinity) {
          const std::size_t c = cluster_of(current);
          current = draw(cluster_cdf_[c], members_[c], rng);
        } else {
          current = draw(global_, all_, rng);
        }
        doc.tokens.push_back(words_[current]);
      }
      produced += len;
      docs.push_back(std::move(doc));
    }
    return docs;
  }

 private:
  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> idx(config_.vocab_size);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }

  std::vector<double> cumulative(const std::vector<std::size_t>& members) const {
    std::vector<double> cdf;
    double total = 0.0;
    for (auto i : members) {
      total += pi_[i];
      cdf.push_back(total);
    }
    return cdf;
  }

  static std::size_t draw(const std::vector<double>& cdf, const std::vector<std::size_t>& members, Rng& rng) {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto pos = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    return members[pos];
  }

  SyntheticCorpusConfig config_;
  std::vector<double> pi_;
  std::vector<double> global_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<double>> cluster_cdf_;
  std::vector<std::string> words_;
  std::vector<std::size_t> all_;
};

inline std::vector<TokenStream> generate_synthetic_corpus(const SyntheticCorpusConfig& config) {
  return SyntheticCorpus(config).generate();
}

}  // namespace driftbench
