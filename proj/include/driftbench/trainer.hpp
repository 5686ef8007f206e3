#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "driftbench/corpus.hpp"
#include "driftbench/digest.hpp"
#include "driftbench/error.hpp"
#include "driftbench/random.hpp"
#include "driftbench/space.hpp"

namespace driftbench {

enum class Architecture { cbow, skipgram };

inline std::string_view to_string(Architecture a) { return a == Architecture::cbow ? "cbow" : "skipgram"; }

struct Objective {
  enum class Kind { full_softmax, negative_sampling };
  Kind kind = Kind::full_softmax;
  std::size_t negatives = 5;

  static Objective full_softmax() { return {Kind::full_softmax, 0}; }
  static Objective negative_sampling(std::size_t k) { return {Kind::negative_sampling, k}; }

  bool operator==(const Objective&) const = default;
};

inline std::string to_string(const Objective& o) {
  return o.kind == Objective::Kind::full_softmax ? "softmax" : "neg:" + std::to_string(o.negatives);
}

/// Parses "softmax" or "neg:<k>".
inline Objective parse_objective(std::string_view text) {
  if (text == "softmax") return Objective::full_softmax();
  if (text.starts_with("neg:")) {
    const auto digits = text.substr(4);
    std::size_t k = 0;
    const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && p == digits.data() + digits.size() && k >= 1) {
      return Objective::negative_sampling(k);
    }
  }
  throw UsageError("objective must be 'softmax' or 'neg:<k>' with k >= 1, got '" + std::string(text) + "'");
}

inline constexpr std::size_t kFullSoftmaxVocabularyLimit = 20000;

struct TrainingConfig {
  std::size_t dimension = 300;
  std::size_t window_radius = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  // The rate decays linearly per processed sample down to this fraction of
  // its initial value.
  double learning_rate_floor = 1e-4;
  std::uint64_t seed = 1;
  // Unset: full softmax up to kFullSoftmaxVocabularyLimit words, else neg:5.
  std::optional<Objective> objective;
  std::size_t min_count = 1;
  Architecture architecture = Architecture::cbow;
};

inline Objective resolve_objective(const TrainingConfig& config, std::size_t vocab_size) {
  if (config.objective) return *config.objective;
  return vocab_size <= kFullSoftmaxVocabularyLimit ? Objective::full_softmax()
                                                    : Objective::negative_sampling(5);
}

inline nlohmann::json to_json(const TrainingConfig& c) {
  nlohmann::json j{{"architecture", to_string(c.architecture)},
                   {"dimension", c.dimension},
                   {"window_radius", c.window_radius},
                   {"epochs", c.epochs},
                   {"learning_rate", c.learning_rate},
                   {"learning_rate_floor", c.learning_rate_floor},
                   {"seed", c.seed},
                   {"min_count", c.min_count}};
  j["objective"] = c.objective ? nlohmann::json(to_string(*c.objective)) : nlohmann::json("auto");
  return j;
}

/// Zero learning rate is accepted (weights stay at their initial values).
inline void validate(const TrainingConfig& c) {
  if (c.dimension < 1) throw ConfigError("dimension must be >= 1");
  if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (c.window_radius < 1) throw ConfigError("window radius must be >= 1");
  if (c.min_count < 1) throw ConfigError("min_count must be >= 1");
  if (!std::isfinite(c.learning_rate) || c.learning_rate < 0.0) {
    throw ConfigError("learning rate must be a finite value >= 0");
  }
  if (!(c.learning_rate_floor > 0.0 && c.learning_rate_floor <= 1.0)) {
    throw ConfigError("learning rate floor must be in (0, 1]");
  }
  if (c.objective && c.objective->kind == Objective::Kind::negative_sampling && c.objective->negatives < 1) {
    throw ConfigError("negative sampling needs k >= 1");
  }
}

/// Weights of the three-layer network. `input` rows are the word embeddings;
/// `output` rows score each vocabulary word against the hidden layer.
struct ModelState {
  std::size_t vocab_size = 0;
  std::size_t dimension = 0;
  Objective objective;
  std::vector<double> input;
  std::vector<double> output;

  std::span<double> input_row(std::size_t i) { return std::span(input).subspan(i * dimension, dimension); }
  std::span<const double> input_row(std::size_t i) const {
    return std::span(input).subspan(i * dimension, dimension);
  }
  std::span<double> output_row(std::size_t i) { return std::span(output).subspan(i * dimension, dimension); }
  std::span<const double> output_row(std::size_t i) const {
    return std::span(output).subspan(i * dimension, dimension);
  }

  bool operator==(const ModelState&) const = default;
};

/// Input rows uniform in [-0.5/d, 0.5/d); output rows zero.
inline ModelState initialize_model(std::size_t vocab_size, std::size_t dimension, Objective objective,
                                   std::uint64_t seed) {
  ModelState state{vocab_size, dimension, objective, std::vector<double>(vocab_size * dimension),
                   std::vector<double>(vocab_size * dimension, 0.0)};
  Rng rng(seed);
  const double half = 0.5 / static_cast<double>(dimension);
  for (double& w : state.input) w = rng.uniform(-half, half);
  return state;
}

/// One prediction: the mean of the `inputs` embeddings predicts `output`.
/// CBOW: inputs = context window, output = centre word.
/// Skip-gram: inputs = {centre word}, output = one context word.
struct TrainingSample {
  std::vector<std::uint32_t> inputs;
  std::uint32_t output = 0;
  std::vector<std::uint32_t> negatives;
};

/// Loss of one sample and the pieces of its gradient:
///   d loss / d output_row(j) = coefficients[j].second * hidden
///   d loss / d input_row(c)  = hidden_grad / |inputs|   (per occurrence of c)
struct SampleGradient {
  double loss = 0.0;
  std::vector<double> hidden;
  std::vector<double> hidden_grad;
  std::vector<std::pair<std::uint32_t, double>> coefficients;
};

namespace detail {

// log(1 + exp(x)) without overflow.
inline double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace detail

inline void forward_backward(const ModelState& state, const TrainingSample& sample, SampleGradient& g) {
  const std::size_t d = state.dimension;
  g.hidden.assign(d, 0.0);
  g.hidden_grad.assign(d, 0.0);
  g.coefficients.clear();
  g.loss = 0.0;
  const double inv = 1.0 / static_cast<double>(sample.inputs.size());
  for (auto c : sample.inputs) {
    const auto r = state.input_row(c);
    for (std::size_t k = 0; k < d; ++k) g.hidden[k] += r[k];
  }
  for (double& h : g.hidden) h *= inv;

  if (state.objective.kind == Objective::Kind::full_softmax) {
    std::vector<double> logits(state.vocab_size);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.vocab_size; ++j) {
      logits[j] = detail::dot(state.output_row(j), g.hidden);
      max_logit = std::max(max_logit, logits[j]);
    }
    double z = 0.0;
    for (double l : logits) z += std::exp(l - max_logit);
    const double log_z = max_logit + std::log(z);
    g.loss = log_z - logits[sample.output];
    g.coefficients.reserve(state.vocab_size);
    for (std::size_t j = 0; j < state.vocab_size; ++j) {
      const double coeff = std::exp(logits[j] - log_z) - (j == sample.output ? 1.0 : 0.0);
      g.coefficients.emplace_back(static_cast<std::uint32_t>(j), coeff);
    }
  } else {
    const auto add = [&](std::uint32_t j, bool positive) {
      const double x = detail::dot(state.output_row(j), g.hidden);
      g.loss += positive ? detail::softplus(-x) : detail::softplus(x);
      g.coefficients.emplace_back(j, detail::sigmoid(x) - (positive ? 1.0 : 0.0));
    };
    add(sample.output, true);
    for (auto n : sample.negatives) {
      if (n != sample.output) add(n, false);
    }
  }

  for (const auto& [j, coeff] : g.coefficients) {
    const auto r = state.output_row(j);
    for (std::size_t k = 0; k < d; ++k) g.hidden_grad[k] += coeff * r[k];
  }
}

/// Plain SGD step from a computed gradient; all gradients use the weights
/// as they were before this step.
inline void apply_gradient(ModelState& state, const TrainingSample& sample, const SampleGradient& g,
                           double learning_rate) {
  const std::size_t d = state.dimension;
  for (const auto& [j, coeff] : g.coefficients) {
    auto r = state.output_row(j);
    const double step = learning_rate * coeff;
    for (std::size_t k = 0; k < d; ++k) r[k] -= step * g.hidden[k];
  }
  const double scale = learning_rate / static_cast<double>(sample.inputs.size());
  for (auto c : sample.inputs) {
    auto r = state.input_row(c);
    for (std::size_t k = 0; k < d; ++k) r[k] -= scale * g.hidden_grad[k];
  }
}

struct LossResult {
  double mean = 0.0;
  bool empty = false;  // true when the batch had no samples; mean is then 0
};

/// Mean cross-entropy (full softmax) or negative-sampling objective.
inline LossResult training_loss(const ModelState& state, std::span<const TrainingSample> batch) {
  if (batch.empty()) return {0.0, true};
  SampleGradient g;
  double sum = 0.0;
  for (const auto& sample : batch) {
    forward_backward(state, sample, g);
    sum += g.loss;
  }
  return {sum / static_cast<double>(batch.size()), false};
}

/// Draws words from unigram^0.75.
class NoiseDistribution {
 public:
  explicit NoiseDistribution(const Vocabulary& vocab) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (auto f : vocab.frequencies()) {
      total += std::pow(static_cast<double>(f), 0.75);
      cumulative_.push_back(total);
    }
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return static_cast<std::uint32_t>(std::min(idx, cumulative_.size() - 1));
  }

 private:
  std::vector<double> cumulative_;
};

namespace detail {

inline constexpr std::uint32_t kNoWord = std::numeric_limits<std::uint32_t>::max();

inline std::vector<std::vector<std::uint32_t>> to_ids(std::span<const TokenStream> streams,
                                                      const Vocabulary& vocab) {
  std::vector<std::vector<std::uint32_t>> docs;
  docs.reserve(streams.size());
  for (const auto& s : streams) {
    auto& ids = docs.emplace_back();
    ids.reserve(s.tokens.size());
    for (const auto& t : s.tokens) {
      const auto idx = vocab.find(t);
      ids.push_back(idx ? static_cast<std::uint32_t>(*idx) : kNoWord);
    }
  }
  return docs;
}

/// Visits training samples in document order. Words below min_count occupy
/// window positions but are neither predicted nor used as context.
template <typename Fn>
void for_each_sample(const std::vector<std::vector<std::uint32_t>>& docs, std::size_t radius,
                     Architecture arch, Fn&& fn) {
  TrainingSample sample;
  for (const auto& ids : docs) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == kNoWord) continue;
      const std::size_t lo = i >= radius ? i - radius : 0;
      const std::size_t hi = std::min(ids.size(), i + radius + 1);
      if (arch == Architecture::cbow) {
        sample.inputs.clear();
        for (std::size_t j = lo; j < hi; ++j) {
          if (j != i && ids[j] != kNoWord) sample.inputs.push_back(ids[j]);
        }
        if (sample.inputs.empty()) continue;
        sample.output = ids[i];
        fn(sample);
      } else {
        for (std::size_t j = lo; j < hi; ++j) {
          if (j == i || ids[j] == kNoWord) continue;
          sample.inputs.assign(1, ids[i]);
          sample.output = ids[j];
          fn(sample);
        }
      }
    }
  }
}

}  // namespace detail

/// All samples of a corpus with negatives pre-drawn from `seed`; used for
/// loss evaluation and gradient checks.
inline std::vector<TrainingSample> build_samples(std::span<const TokenStream> streams, const Vocabulary& vocab,
                                                 std::size_t radius, Architecture arch, const Objective& objective,
                                                 std::uint64_t seed) {
  const auto docs = detail::to_ids(streams, vocab);
  std::vector<TrainingSample> samples;
  Rng rng(seed);
  const NoiseDistribution noise(vocab);
  detail::for_each_sample(docs, radius, arch, [&](TrainingSample& s) {
    s.negatives.clear();
    if (objective.kind == Objective::Kind::negative_sampling) {
      for (std::size_t k = 0; k < objective.negatives; ++k) s.negatives.push_back(noise.draw(rng));
    }
    samples.push_back(s);
  });
  return samples;
}

struct TrainingResult {
  EmbeddingSpace embedding;  // input-layer rows
  ModelState state;          // both layers, for checkpoints
  std::vector<double> epoch_losses;
  TrainingConfig config;
};

/// Trains on `streams` with plain SGD, scanning samples in document order on
/// one thread. Identical streams, config and seed give bitwise-identical
/// weights.
inline TrainingResult train(std::span<const TokenStream> streams, const TrainingConfig& config) {
  validate(config);
  const Vocabulary vocab = build_vocabulary(streams, config.min_count);
  const Objective objective = resolve_objective(config, vocab.size());
  const auto docs = detail::to_ids(streams, vocab);

  std::uint64_t per_epoch = 0;
  detail::for_each_sample(docs, config.window_radius, config.architecture, [&](TrainingSample&) { ++per_epoch; });
  if (per_epoch == 0) throw EmptyVocabularyError("corpus yields no training samples");

  // Separate streams for initialization and negative draws keep the
  // initial weights independent of the objective.
  ModelState state = initialize_model(vocab.size(), config.dimension, objective, config.seed);
  Rng noise_rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  const NoiseDistribution noise(vocab);

  const double total = static_cast<double>(per_epoch * config.epochs);
  std::uint64_t processed = 0;
  std::vector<double> epoch_losses;
  SampleGradient g;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double sum = 0.0;
    detail::for_each_sample(docs, config.window_radius, config.architecture, [&](TrainingSample& s) {
      s.negatives.clear();
      if (objective.kind == Objective::Kind::negative_sampling) {
        for (std::size_t k = 0; k < objective.negatives; ++k) s.negatives.push_back(noise.draw(noise_rng));
      }
      const double progress = static_cast<double>(processed) / total;
      const double lr = config.learning_rate * std::max(config.learning_rate_floor, 1.0 - progress);
      forward_backward(state, s, g);
      if (!std::isfinite(g.loss)) {
        throw NumericalError("training diverged: non-finite loss at epoch " + std::to_string(epoch + 1) +
                             ", sample " + std::to_string(processed - epoch * per_epoch) +
                             " (learning rate " + std::to_string(lr) + "); lower the learning rate");
      }
      sum += g.loss;
      apply_gradient(state, s, g, lr);
      ++processed;
    });
    epoch_losses.push_back(sum / static_cast<double>(per_epoch));
  }
  for (double w : state.input) {
    if (!std::isfinite(w)) throw NumericalError("training produced non-finite weights; lower the learning rate");
  }

  EmbeddingSpace embedding(vocab, config.dimension, state.input);
  embedding.set_provenance({to_json(config).dump(), digest_streams(streams)});
  return TrainingResult{std::move(embedding), std::move(state), std::move(epoch_losses), config};
}

inline TrainingResult train_cbow(std::span<const TokenStream> streams, TrainingConfig config) {
  config.architecture = Architecture::cbow;
  return train(streams, config);
}

inline TrainingResult train_skipgram(std::span<const TokenStream> streams, TrainingConfig config) {
  config.architecture = Architecture::skipgram;
  return train(streams, config);
}

// ---- gradient check --------------------------------------------------------

/// Test hook that may alter the analytic gradient before comparison.
using GradientMutator = std::function<void(std::span<double> input_grad, std::span<double> output_grad)>;

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t parameters_checked = 0;
};

/// Analytic gradient of the mean batch loss with respect to every weight.
inline void batch_gradient(const ModelState& state, std::span<const TrainingSample> batch,
                           std::vector<double>& input_grad, std::vector<double>& output_grad) {
  input_grad.assign(state.input.size(), 0.0);
  output_grad.assign(state.output.size(), 0.0);
  const std::size_t d = state.dimension;
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  SampleGradient g;
  for (const auto& sample : batch) {
    forward_backward(state, sample, g);
    for (const auto& [j, coeff] : g.coefficients) {
      for (std::size_t k = 0; k < d; ++k) output_grad[j * d + k] += inv_batch * coeff * g.hidden[k];
    }
    const double scale = inv_batch / static_cast<double>(sample.inputs.size());
    for (auto c : sample.inputs) {
      for (std::size_t k = 0; k < d; ++k) input_grad[c * d + k] += scale * g.hidden_grad[k];
    }
  }
}

/// Compares analytic gradients with central finite differences (step 1e-5)
/// on `parameter_samples` randomly chosen weights of a randomly initialized
/// model (both layers uniform in [-0.5, 0.5)). Returns the largest
/// |analytic - numeric| / max(|analytic|, |numeric|).
inline GradientCheckResult gradient_check(const TrainingConfig& config, std::span<const TokenStream> corpus,
                                          std::size_t parameter_samples, const GradientMutator& mutate = {}) {
  validate(config);
  if (config.dimension > 16) throw ConfigError("gradient check needs dimension <= 16");
  const Vocabulary vocab = build_vocabulary(corpus, config.min_count);
  if (vocab.size() > 50) throw ConfigError("gradient check needs a vocabulary of <= 50 words");
  const Objective objective = resolve_objective(config, vocab.size());
  const auto batch = build_samples(corpus, vocab, config.window_radius, config.architecture, objective, config.seed);
  if (batch.empty()) throw EmptyVocabularyError("corpus yields no training samples");

  ModelState state{vocab.size(), config.dimension, objective, std::vector<double>(vocab.size() * config.dimension),
                   std::vector<double>(vocab.size() * config.dimension)};
  Rng rng(config.seed);
  for (double& w : state.input) w = rng.uniform(-0.5, 0.5);
  for (double& w : state.output) w = rng.uniform(-0.5, 0.5);

  std::vector<double> input_grad;
  std::vector<double> output_grad;
  batch_gradient(state, batch, input_grad, output_grad);

  // Only weights that the batch touches carry signal.
  std::vector<char> input_used(vocab.size(), 0);
  std::vector<char> output_used(vocab.size(), 0);
  for (const auto& s : batch) {
    for (auto c : s.inputs) input_used[c] = 1;
    if (objective.kind == Objective::Kind::full_softmax) {
      std::fill(output_used.begin(), output_used.end(), 1);
    } else {
      output_used[s.output] = 1;
      for (auto n : s.negatives) output_used[n] = 1;
    }
  }
  std::vector<std::pair<bool, std::size_t>> candidates;  // (is_output, flat index)
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    for (std::size_t k = 0; k < config.dimension; ++k) {
      if (input_used[w]) candidates.emplace_back(false, w * config.dimension + k);
      if (output_used[w]) candidates.emplace_back(true, w * config.dimension + k);
    }
  }

  if (mutate) mutate(input_grad, output_grad);

  constexpr double step = 1e-5;
  GradientCheckResult result;
  for (std::size_t n = 0; n < parameter_samples && !candidates.empty(); ++n) {
    const auto [is_output, flat] = candidates[rng.below(candidates.size())];
    double& weight = is_output ? state.output[flat] : state.input[flat];
    const double original = weight;
    weight = original + step;
    const double plus = training_loss(state, batch).mean;
    weight = original - step;
    const double minus = training_loss(state, batch).mean;
    weight = original;
    const double numeric = (plus - minus) / (2.0 * step);
    const double analytic = is_output ? output_grad[flat] : input_grad[flat];
    const double scale = std::max(std::abs(analytic), std::abs(numeric));
    const double rel = scale < 1e-10 ? 0.0 : std::abs(analytic - numeric) / scale;
    result.max_relative_error = std::max(result.max_relative_error, rel);
    ++result.parameters_checked;
  }
  return result;
}

// ---- binary checkpoint -----------------------------------------------------
//
// Little-endian: magic "DBCKPT01", then the configuration, the vocabulary
// (length-prefixed tokens with frequencies) and both weight matrices.

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw DataError("truncated checkpoint");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

inline constexpr std::string_view kCheckpointMagic = "DBCKPT01";

}  // namespace detail

inline void write_checkpoint(std::ostream& out, const TrainingResult& r) {
  out.write(detail::kCheckpointMagic.data(), static_cast<std::streamsize>(detail::kCheckpointMagic.size()));
  const auto& c = r.config;
  detail::put_u64(out, c.architecture == Architecture::cbow ? 0 : 1);
  detail::put_u64(out, r.state.objective.kind == Objective::Kind::full_softmax ? 0 : 1);
  detail::put_u64(out, r.state.objective.negatives);
  detail::put_u64(out, c.dimension);
  detail::put_u64(out, c.window_radius);
  detail::put_u64(out, c.epochs);
  detail::put_u64(out, c.min_count);
  detail::put_u64(out, c.seed);
  detail::put_f64(out, c.learning_rate);
  detail::put_f64(out, c.learning_rate_floor);
  const auto& vocab = r.embedding.vocabulary();
  detail::put_u64(out, vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    detail::put_u64(out, vocab.token(i).size());
    out.write(vocab.token(i).data(), static_cast<std::streamsize>(vocab.token(i).size()));
    detail::put_u64(out, vocab.frequency(i));
  }
  detail::put_u64(out, r.epoch_losses.size());
  for (double l : r.epoch_losses) detail::put_f64(out, l);
  for (double w : r.state.input) detail::put_f64(out, w);
  for (double w : r.state.output) detail::put_f64(out, w);
}

inline TrainingResult read_checkpoint(std::istream& in) {
  std::string magic(detail::kCheckpointMagic.size(), '\0');
  if (!in.read(magic.data(), static_cast<std::streamsize>(magic.size())) || magic != detail::kCheckpointMagic) {
    throw DataError("not a driftbench checkpoint (bad magic)");
  }
  TrainingConfig c;
  c.architecture = detail::get_u64(in) == 0 ? Architecture::cbow : Architecture::skipgram;
  const bool softmax = detail::get_u64(in) == 0;
  const auto negatives = detail::get_u64(in);
  c.objective = softmax ? Objective::full_softmax() : Objective::negative_sampling(negatives);
  c.dimension = detail::get_u64(in);
  c.window_radius = detail::get_u64(in);
  c.epochs = detail::get_u64(in);
  c.min_count = detail::get_u64(in);
  c.seed = detail::get_u64(in);
  c.learning_rate = detail::get_f64(in);
  c.learning_rate_floor = detail::get_f64(in);
  const auto n = detail::get_u64(in);
  Vocabulary vocab;
  vocab.set_min_count(c.min_count);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = detail::get_u64(in);
    if (len > (1u << 20)) throw DataError("corrupt checkpoint token length");
    std::string token(len, '\0');
    if (!in.read(token.data(), static_cast<std::streamsize>(len))) throw DataError("truncated checkpoint");
    vocab.add(std::move(token), detail::get_u64(in));
  }
  std::vector<double> losses(detail::get_u64(in));
  for (double& l : losses) l = detail::get_f64(in);
  ModelState state{n, c.dimension, *c.objective, std::vector<double>(n * c.dimension),
                   std::vector<double>(n * c.dimension)};
  for (double& w : state.input) w = detail::get_f64(in);
  for (double& w : state.output) w = detail::get_f64(in);
  EmbeddingSpace embedding(vocab, c.dimension, state.input);
  embedding.set_provenance({to_json(c).dump(), ""});
  return TrainingResult{std::move(embedding), std::move(state), std::move(losses), c};
}

}  // namespace driftbench
