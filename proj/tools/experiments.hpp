#pragma once

// End-to-end experiment drivers shared by the command-line tool and the
// acceptance suite.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "driftbench.hpp"

namespace driftbench::experiments {

inline std::vector<TokenStream> load_streams(const std::filesystem::path& path,
                                             const std::optional<std::filesystem::path>& stoplist = std::nullopt) {
  auto streams = tokenize_all(load_corpus(path));
  if (stoplist) streams = remove_stopwords(streams, load_stoplist(*stoplist));
  return streams;
}

/// SHA-256 of a file, or of the ordered (name, text) pairs of a directory.
inline std::string input_digest(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return digest_documents(load_corpus(path));
  return digest_file(path);
}

// ---- count model before and after adding a short text ---------------------

struct AugmentationConfig {
  std::filesystem::path base;
  std::filesystem::path addition;
  std::optional<std::filesystem::path> stoplist;
  std::size_t window = 10;
  std::size_t min_count = 1;
  std::size_t k = 10;
  Metric metric = Metric::cosine;
  bool ppmi = false;
  std::vector<std::string> watch{"know", "glass"};
  // Words of the base corpus below this frequency are left out of the report.
  std::size_t report_min_count = 1;
  std::size_t threads = thread_count();
};

struct WatchedWord {
  std::string word;
  NeighborList before;
  NeighborList after;
  std::uint64_t base_frequency = 0;
  std::uint64_t addition_frequency = 0;
};

struct AugmentationResult {
  CorpusStats base_stats;
  CorpusStats addition_stats;
  CooccurrenceMatrix base;
  CooccurrenceMatrix augmented;
  StabilityReport report;
  std::vector<WatchedWord> watched;
};

inline void require_corpus(const std::filesystem::path& path, const std::string& role) {
  if (path.empty()) throw UsageError("missing " + role);
  if (!std::filesystem::exists(path)) {
    throw DataError(role + " '" + path.string() + "' does not exist (corpora are not bundled; supply a local copy)");
  }
}

inline AugmentationResult run_count_augmentation(const AugmentationConfig& config) {
  require_corpus(config.base, "base corpus");
  require_corpus(config.addition, "addition corpus");
  const auto base_streams = load_streams(config.base, config.stoplist);
  auto addition_streams = load_streams(config.addition, config.stoplist);
  for (auto& s : addition_streams) s.doc_id = "addition/" + s.doc_id;

  AugmentationResult r;
  r.base_stats = corpus_stats(base_streams);
  r.addition_stats = corpus_stats(addition_streams);
  const WindowConfig window{config.window};
  r.base = count_cooccurrences(base_streams, build_vocabulary(base_streams, config.min_count), window);
  r.augmented = augment_counts(r.base, addition_streams, window);

  const auto space = [&](const CooccurrenceMatrix& m) { return config.ppmi ? ppmi_transform(m) : raw_count_space(m); };
  const auto before = space(r.base);
  const auto after = space(r.augmented);

  ReportOptions options;
  options.threads = config.threads;
  const auto& vocab = r.base.vocabulary();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (vocab.frequency(i) >= config.report_min_count) options.words.push_back(vocab.token(i));
  }
  if (options.words.empty()) throw DataError("no word of the base corpus reaches the report frequency threshold");
  r.report = stability_report(before, after, config.k, config.metric, options);

  const auto addition_counts = count_tokens(addition_streams);
  for (const auto& word : config.watch) {
    if (!vocab.contains(word)) continue;
    WatchedWord w;
    w.word = word;
    w.before = nearest_neighbors(before, word, config.k, config.metric);
    w.after = nearest_neighbors(after, word, config.k, config.metric);
    w.base_frequency = vocab.frequency(vocab.index_of(word));
    if (const auto it = addition_counts.find(word); it != addition_counts.end()) w.addition_frequency = it->second;
    r.watched.push_back(std::move(w));
  }
  return r;
}

// ---- trained embeddings before and after adding a corpus ------------------

struct TrainedAugmentationConfig {
  std::filesystem::path base;
  std::filesystem::path addition;
  std::optional<std::filesystem::path> stoplist;
  TrainingConfig training;
  std::size_t k = 10;
  std::vector<std::string> watch;
  std::size_t threads = thread_count();
};

struct TrainedAugmentationResult {
  TrainingResult before;
  TrainingResult after;
  StabilityReport report;
  std::vector<WatchedWord> watched;
};

/// Trains one model on the base corpus and one on base plus addition with
/// the same seed, then compares them word by word.
inline TrainedAugmentationResult run_trained_augmentation(const TrainedAugmentationConfig& config) {
  require_corpus(config.base, "base corpus");
  require_corpus(config.addition, "addition corpus");
  const auto base_streams = load_streams(config.base, config.stoplist);
  auto all_streams = base_streams;
  for (auto s : load_streams(config.addition, config.stoplist)) {
    s.doc_id = "addition/" + s.doc_id;
    all_streams.push_back(std::move(s));
  }
  TrainedAugmentationResult r{train(base_streams, config.training), train(all_streams, config.training), {}, {}};
  ReportOptions options;
  options.threads = config.threads;
  options.align = true;
  r.report = stability_report(r.before.embedding, r.after.embedding, config.k, Metric::cosine, options);
  for (const auto& word : config.watch) {
    if (!r.before.embedding.vocabulary().contains(word) || !r.after.embedding.vocabulary().contains(word)) continue;
    WatchedWord w;
    w.word = word;
    w.before = nearest_neighbors(r.before.embedding, word, config.k);
    w.after = nearest_neighbors(r.after.embedding, word, config.k);
    w.base_frequency = r.before.embedding.vocabulary().frequency(r.before.embedding.vocabulary().index_of(word));
    r.watched.push_back(std::move(w));
  }
  return r;
}

// ---- cross-seed stability against corpus size ------------------------------

struct SeedStabilityConfig {
  std::vector<std::size_t> sizes{20000, 200000};
  std::size_t runs = 5;
  std::uint64_t seed = 1;  // corpus seed; training seeds are seed, seed + 1, ...
  SyntheticCorpusConfig corpus;
  TrainingConfig training;
  std::size_t k = 10;
  std::size_t threads = thread_count();
};

struct SizeRow {
  std::size_t tokens = 0;
  std::size_t vocabulary = 0;
  double mean_overlap = 0.0;
  // Mean over the words present at every size, so sizes are compared on the same words.
  double common_mean_overlap = 0.0;
  std::optional<double> frequency_correlation;
  SeedStabilityReport detail;
};

inline SeedStabilityConfig default_seed_stability() {
  SeedStabilityConfig c;
  c.training.architecture = Architecture::cbow;
  c.training.dimension = 25;
  c.training.window_radius = 5;
  c.training.epochs = 5;
  c.training.learning_rate = 0.025;
  c.training.objective = Objective::negative_sampling(5);
  return c;
}

inline std::vector<SizeRow> run_seed_stability(const SeedStabilityConfig& config) {
  if (config.sizes.empty()) throw UsageError("seed stability needs at least one corpus size");
  if (config.runs < 2) throw UsageError("seed stability needs at least two runs");
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < config.runs; ++i) seeds.push_back(config.seed + i);

  std::vector<SizeRow> rows;
  for (const std::size_t size : config.sizes) {
    SyntheticCorpusConfig corpus = config.corpus;
    corpus.tokens = size;
    corpus.seed = config.seed;
    const auto streams = generate_synthetic_corpus(corpus);
    SizeRow row;
    row.tokens = size;
    row.detail = cross_seed_stability(streams, config.training, seeds, config.k, config.threads);
    row.vocabulary = row.detail.words.size();
    row.mean_overlap = row.detail.overall_mean_overlap;
    row.frequency_correlation = row.detail.frequency_correlation;
    rows.push_back(std::move(row));
  }

  std::map<std::string, std::size_t> presence;
  for (const auto& row : rows) {
    for (const auto& w : row.detail.words) ++presence[w];
  }
  for (auto& row : rows) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < row.detail.words.size(); ++i) {
      if (presence[row.detail.words[i]] != rows.size()) continue;
      sum += row.detail.mean_overlap[i];
      ++n;
    }
    row.common_mean_overlap = n ? sum / static_cast<double>(n) : 0.0;
  }
  return rows;
}

// ---- JSON summaries --------------------------------------------------------

inline nlohmann::json to_json(const CorpusStats& s) {
  return {{"tokens", s.token_count},
          {"types", s.type_count},
          {"type_token_ratio", s.ratio_defined ? nlohmann::json(s.type_token_ratio) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const WatchedWord& w, std::size_t k) {
  const auto diff = compare_neighbors(w.before, w.after, k);
  return {{"word", w.word},
          {"base_frequency", w.base_frequency},
          {"addition_frequency", w.addition_frequency},
          {"overlap", diff.overlap_at_k},
          {"exact_order", diff.exact_order},
          {"before", driftbench::to_json(w.before)},
          {"after", driftbench::to_json(w.after)}};
}

inline nlohmann::json to_json(const std::vector<SizeRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"tokens", r.tokens},
                   {"vocabulary", r.vocabulary},
                   {"mean_overlap", r.mean_overlap},
                   {"common_mean_overlap", r.common_mean_overlap},
                   {"frequency_correlation",
                    r.frequency_correlation ? nlohmann::json(*r.frequency_correlation) : nlohmann::json(nullptr)},
                   {"epoch_losses", r.detail.epoch_losses}});
  }
  return out;
}

}  // namespace driftbench::experiments
