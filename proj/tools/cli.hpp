#pragma once

// Command-line front end. run_cli() never exits the process; it returns the
// exit code (0 ok, 1 usage, 2 data, 3 numerical) so tests can drive it.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "driftbench.hpp"
#include "experiments.hpp"

namespace driftbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

using Model = std::variant<EmbeddingSpace, SparseVectorSpace>;

inline void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
    throw DataError("cannot write '" + path.string() + "'");
  }
}

inline bool starts_with(const std::string& bytes, std::string_view prefix) {
  return bytes.size() >= prefix.size() && std::string_view(bytes).substr(0, prefix.size()) == prefix;
}

inline CooccurrenceMatrix load_matrix(const fs::path& path) {
  const auto bytes = read_file(path);
  if (!starts_with(bytes, "COOC v1")) {
    throw DataError("'" + path.string() + "' is not a COOC v1 matrix (produce one with build-count)");
  }
  std::istringstream in(bytes);
  return read_matrix(in);
}

/// Count matrices, checkpoints and text embeddings are told apart by their
/// first bytes.
inline Model load_model(const fs::path& path, const std::string& weighting) {
  const auto bytes = read_file(path);
  try {
    if (starts_with(bytes, detail::kCheckpointMagic)) {
      std::istringstream in(bytes, std::ios::binary);
      return read_checkpoint(in).embedding;
    }
    std::istringstream in(bytes);
    if (starts_with(bytes, "COOC v1")) {
      const auto m = read_matrix(in);
      return weighting == "ppmi" ? ppmi_transform(m) : raw_count_space(m);
    }
    return read_embedding_text(in);
  } catch (const DataError& e) {
    throw DataError("'" + path.string() + "': " + e.what());
  }
}

inline EmbeddingSpace require_dense(Model model, const fs::path& path) {
  if (auto* dense = std::get_if<EmbeddingSpace>(&model)) return std::move(*dense);
  throw DataError("'" + path.string() + "' is a count matrix; this command needs a dense embedding");
}

inline std::string embedding_text(const EmbeddingSpace& space) {
  std::ostringstream out;
  write_embedding_text(out, space);
  return out.str();
}

struct Io {
  std::ostream& out;
  std::ostream& err;
};

/// Writes `content` to `path` (manifest beside it) or to stdout (manifest on
/// stderr).
inline void emit(Io io, const std::string& path, const std::string& content, RunManifest manifest) {
  manifest.timestamp = utc_timestamp();
  if (path.empty()) {
    io.out << content;
    io.err << to_json(manifest).dump() << '\n';
    return;
  }
  write_file(path, content);
  write_file(path + ".manifest.json", to_json(manifest).dump(2) + "\n");
}

inline void write_manifest(const fs::path& path, RunManifest manifest) {
  manifest.timestamp = utc_timestamp();
  write_file(path, to_json(manifest).dump(2) + "\n");
}

inline void require_positive(const char* name, double value) {
  if (!(value > 0)) throw UsageError(std::string("--") + name + " must be > 0");
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- option bundles ---------------------------------------------------------

struct TrainFlags {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t epochs = 5;
  double lr = 0.025;
  std::size_t min_count = 1;
  std::string objective = "auto";
  bool skipgram = false;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--dim", dim, "Embedding dimension")->capture_default_str();
    app->add_option("--window", window, "Context radius in tokens")->capture_default_str();
    app->add_option("--epochs", epochs, "Passes over the corpus")->capture_default_str();
    app->add_option("--lr", lr, "Initial learning rate (> 0)")->capture_default_str();
    app->add_option("--min-count", min_count, "Drop words rarer than this")->capture_default_str();
    app->add_option("--objective", objective, "softmax | neg:<k> | auto")->capture_default_str();
    app->add_flag("--skipgram", skipgram, "Train skip-gram instead of CBOW");
    app->add_option("--seed", seed, "Random seed (required)");
  }

  TrainingConfig config() const {
    if (!seed) throw UsageError("--seed is required for training (no implicit random default)");
    require_positive("lr", lr);
    TrainingConfig c;
    c.dimension = dim;
    c.window_radius = window;
    c.epochs = epochs;
    c.learning_rate = lr;
    c.min_count = min_count;
    c.seed = *seed;
    c.architecture = skipgram ? Architecture::skipgram : Architecture::cbow;
    if (objective != "auto") c.objective = parse_objective(objective);
    validate(c);
    return c;
  }
};

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : "|") + std::string(f);
  throw UsageError("--format must be one of " + list);
}

inline void check_weighting(const std::string& weighting) {
  if (weighting != "raw" && weighting != "ppmi") throw UsageError("--weighting must be raw or ppmi");
}

// ---- subcommands ------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  const Io io{out, err};
  CLI::App app{"driftbench: distributional semantics stability workbench", "driftbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string corpus, model_a, model_b, word, out_path, stoplist, format, weighting = "raw", metric = "cosine";
  std::string from, to;
  std::size_t window = 10, min_count = 1, k = 10;
  std::uint64_t min_weight = 1;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> words;
  bool align = false;
  TrainFlags train_flags;

  auto* stats = app.add_subcommand("stats", "Token count, type count and type-token ratio of a corpus");
  stats->add_option("corpus", corpus, "Text file or directory of text files")->required();
  stats->add_option("--stoplist", stoplist, "Stopword file removed before counting");
  stats->add_option("--out", out_path, "Output file (default stdout)");

  auto* build = app.add_subcommand("build-count", "Build a windowed co-occurrence matrix");
  build->add_option("corpus", corpus, "Text file or directory of text files")->required();
  build->add_option("--window", window, "Context radius in tokens")->capture_default_str();
  build->add_option("--min-count", min_count, "Drop words rarer than this")->capture_default_str();
  build->add_option("--stoplist", stoplist, "Stopword file");
  build->add_option("--out", out_path, "Output matrix file")->required();

  auto* neighbors = app.add_subcommand("neighbors", "Nearest neighbours of a word");
  neighbors->add_option("model", model_a, "Matrix, checkpoint or text embedding")->required();
  neighbors->add_option("word", word, "Query word")->required();
  neighbors->add_option("--k", k, "Number of neighbours")->capture_default_str();
  neighbors->add_option("--metric", metric, "cosine | euclidean | cityblock")->capture_default_str();
  neighbors->add_option("--weighting", weighting, "Count matrices: raw | ppmi")->capture_default_str();
  neighbors->add_option("--format", format, "tsv | json");
  neighbors->add_option("--out", out_path, "Output file (default stdout)");

  auto* diff = app.add_subcommand("diff", "Compare neighbour lists of two models");
  diff->add_option("model_a", model_a, "First model")->required();
  diff->add_option("model_b", model_b, "Second model")->required();
  diff->add_option("--k", k, "Neighbour list length")->capture_default_str();
  diff->add_option("--metric", metric, "cosine | euclidean | cityblock")->capture_default_str();
  diff->add_option("--weighting", weighting, "Count matrices: raw | ppmi")->capture_default_str();
  diff->add_option("--word", words, "Restrict to these words (repeatable; default all shared)");
  diff->add_flag("--align", align, "Procrustes-align B onto A before measuring displacement");
  diff->add_option("--format", format, "json | csv");
  diff->add_option("--out", out_path, "Output file (default stdout)");

  auto* train_cmd = app.add_subcommand("train", "Train a CBOW or skip-gram embedding");
  train_cmd->add_option("corpus", corpus, "Text file or directory of text files")->required();
  train_cmd->add_option("--stoplist", stoplist, "Stopword file");
  train_cmd->add_option("--out", out_path, "Output embedding (text); a .ckpt checkpoint is written beside it")
      ->required();
  train_flags.attach(train_cmd);

  auto* rotate_cmd = app.add_subcommand("rotate", "Apply a seeded random orthogonal transform");
  rotate_cmd->add_option("model", model_a, "Dense embedding")->required();
  rotate_cmd->add_option("--seed", seed, "Random seed (required)");
  rotate_cmd->add_option("--out", out_path, "Output embedding (default stdout)");

  auto* align_cmd = app.add_subcommand("align", "Orthogonal Procrustes alignment of X onto Y");
  align_cmd->add_option("model_x", model_a, "Embedding to move")->required();
  align_cmd->add_option("model_y", model_b, "Target embedding")->required();
  align_cmd->add_option("--out", out_path, "Write the aligned copy of X here");

  auto* graph_cmd = app.add_subcommand("graph", "Co-occurrence matrix to weighted graph");
  graph_cmd->add_option("matrix", model_a, "COOC v1 matrix")->required();
  graph_cmd->add_option("--min-weight", min_weight, "Smallest count kept as an edge")->capture_default_str();
  graph_cmd->add_option("--format", format, "tsv | graphml");
  graph_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* intersect_cmd = app.add_subcommand("intersect", "Shared nodes and edges of two graphs");
  intersect_cmd->add_option("graph_a", model_a, "Edge list")->required();
  intersect_cmd->add_option("graph_b", model_b, "Edge list")->required();
  intersect_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* path_cmd = app.add_subcommand("path", "Shortest path between two words of a graph (cost 1/weight)");
  path_cmd->add_option("graph", model_a, "Edge list")->required();
  path_cmd->add_option("from", from, "Start word")->required();
  path_cmd->add_option("to", to, "End word")->required();

  std::string experiment, base, addition, out_dir, watch = "know,glass", sizes = "20000,200000";
  std::size_t runs = 5, report_min_count = 1;
  TrainFlags exp_flags;
  exp_flags.dim = 25;
  auto* exp = app.add_subcommand("experiment", "Run a full build/augment/diff pipeline");
  exp->add_option("name", experiment, "stein_hemingway | wiki_sep_style | seed_stability")
      ->required()
      ->check(CLI::IsMember({"stein_hemingway", "wiki_sep_style", "seed_stability"}));
  exp->add_option("--base", base, "Base corpus (stein_hemingway, wiki_sep_style)");
  exp->add_option("--addition", addition, "Corpus added to the base");
  exp->add_option("--out-dir", out_dir, "Directory for every artifact")->required();
  exp->add_option("--k", k, "Neighbour list length")->capture_default_str();
  exp->add_option("--metric", metric, "cosine | euclidean | cityblock")->capture_default_str();
  exp->add_option("--weighting", weighting, "Count model weighting: raw | ppmi")->capture_default_str();
  exp->add_option("--stoplist", stoplist, "Stopword file");
  exp->add_option("--watch", watch, "Comma-separated words to report in full")->capture_default_str();
  exp->add_option("--report-min-count", report_min_count, "Report words at least this frequent")
      ->capture_default_str();
  exp->add_option("--sizes", sizes, "seed_stability: comma-separated token counts")->capture_default_str();
  exp->add_option("--runs", runs, "seed_stability: models per size")->capture_default_str();
  exp_flags.attach(exp);
  exp->get_option("--window")->description("Context radius (count model default 10)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::usage);
  }

  try {
    RunManifest manifest;
    const auto opt_stoplist = stoplist.empty() ? std::nullopt : std::optional<fs::path>(stoplist);
    const auto digest_inputs = [&](std::initializer_list<const std::string*> paths) {
      for (const auto* p : paths) {
        if (!p->empty()) manifest.input_digests[*p] = experiments::input_digest(*p);
      }
    };

    if (*stats) {
      manifest.subcommand = "stats";
      manifest.parameters = {{"stoplist", stoplist}};
      const auto streams = experiments::load_streams(corpus, opt_stoplist);
      digest_inputs({&corpus, &stoplist});
      emit(io, out_path, experiments::to_json(corpus_stats(streams)).dump(2) + "\n", manifest);
      return 0;
    }

    if (*build) {
      manifest.subcommand = "build-count";
      manifest.parameters = {{"window", window}, {"min_count", min_count}, {"stoplist", stoplist}};
      const auto streams = experiments::load_streams(corpus, opt_stoplist);
      digest_inputs({&corpus, &stoplist});
      const auto m = count_cooccurrences(streams, build_vocabulary(streams, min_count), {window});
      emit(io, out_path, to_string(m), manifest);
      return 0;
    }

    if (*neighbors) {
      if (format.empty()) format = "tsv";
      check_format(format, {"tsv", "json"});
      check_weighting(weighting);
      manifest.subcommand = "neighbors";
      manifest.parameters = {{"word", word}, {"k", k}, {"metric", metric}, {"weighting", weighting}, {"format", format}};
      const Metric m = parse_metric(metric);
      const auto model = load_model(model_a, weighting);
      digest_inputs({&model_a});
      const auto list = std::visit([&](const auto& s) { return nearest_neighbors(s, word, k, m); }, model);
      std::ostringstream text;
      if (format == "json") {
        text << driftbench::to_json(list).dump(2) << '\n';
      } else {
        write_neighbors_tsv(text, list);
      }
      emit(io, out_path, text.str(), manifest);
      return 0;
    }

    if (*diff) {
      if (format.empty()) format = "json";
      check_format(format, {"json", "csv"});
      check_weighting(weighting);
      manifest.subcommand = "diff";
      manifest.parameters = {{"k", k},          {"metric", metric}, {"weighting", weighting},
                             {"words", words},  {"align", align},   {"format", format}};
      const Metric m = parse_metric(metric);
      const auto a = load_model(model_a, weighting);
      const auto b = load_model(model_b, weighting);
      digest_inputs({&model_a, &model_b});
      ReportOptions options;
      options.words = words;
      options.align = align;
      const auto report =
          std::visit([&](const auto& x, const auto& y) { return stability_report(x, y, k, m, options); }, a, b);
      if (align && !report.aligned) {
        throw UsageError("--align needs two dense embeddings of equal dimension");
      }
      std::ostringstream text;
      if (format == "csv") {
        write_report_csv(text, report);
      } else {
        text << driftbench::to_json(report).dump(2) << '\n';
      }
      emit(io, out_path, text.str(), manifest);
      return 0;
    }

    if (*train_cmd) {
      const auto config = train_flags.config();
      manifest.subcommand = "train";
      manifest.parameters = to_json(config);
      manifest.parameters["stoplist"] = stoplist;
      manifest.seed = config.seed;
      const auto streams = experiments::load_streams(corpus, opt_stoplist);
      digest_inputs({&corpus, &stoplist});
      const auto result = train(streams, config);
      write_file(out_path, embedding_text(result.embedding));
      std::ostringstream ckpt(std::ios::binary);
      write_checkpoint(ckpt, result);
      write_file(out_path + ".ckpt", ckpt.str());
      write_manifest(out_path + ".manifest.json", manifest);
      out << "epoch\tloss\n";
      for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
        out << e + 1 << '\t' << result.epoch_losses[e] << '\n';
      }
      return 0;
    }

    if (*rotate_cmd) {
      if (!seed) throw UsageError("--seed is required for rotate");
      manifest.subcommand = "rotate";
      manifest.seed = *seed;
      const auto space = require_dense(load_model(model_a, "raw"), model_a);
      digest_inputs({&model_a});
      emit(io, out_path, embedding_text(random_rotation(space, *seed)), manifest);
      return 0;
    }

    if (*align_cmd) {
      manifest.subcommand = "align";
      const auto x = require_dense(load_model(model_a, "raw"), model_a);
      const auto y = require_dense(load_model(model_b, "raw"), model_b);
      digest_inputs({&model_a, &model_b});
      const auto result = procrustes_align(x, y);
      std::vector<std::vector<double>> rotation;
      for (std::size_t i = 0; i < result.rotation.rows(); ++i) {
        rotation.emplace_back(result.rotation.data().begin() + static_cast<std::ptrdiff_t>(i * result.rotation.cols()),
                              result.rotation.data().begin() +
                                  static_cast<std::ptrdiff_t>((i + 1) * result.rotation.cols()));
      }
      const json summary{{"residual", result.residual},
                         {"shared_words", result.shared_vocab.size()},
                         {"underdetermined", result.underdetermined},
                         {"converged", result.converged},
                         {"rotation", rotation}};
      if (!out_path.empty()) {
        write_file(out_path, embedding_text(apply_alignment(x, result)));
        write_manifest(out_path + ".manifest.json", manifest);
        out << summary.dump(2) << '\n';
      } else {
        emit(io, "", summary.dump(2) + "\n", manifest);
      }
      return 0;
    }

    if (*graph_cmd) {
      if (format.empty()) format = "tsv";
      check_format(format, {"tsv", "graphml"});
      manifest.subcommand = "graph";
      manifest.parameters = {{"min_weight", min_weight}, {"format", format}};
      const auto g = from_counts(load_matrix(model_a), min_weight);
      digest_inputs({&model_a});
      emit(io, out_path, format == "graphml" ? export_graphml(g) : export_edge_list(g), manifest);
      return 0;
    }

    if (*intersect_cmd) {
      manifest.subcommand = "intersect";
      const auto a = import_edge_list(read_file(model_a));
      const auto b = import_edge_list(read_file(model_b));
      digest_inputs({&model_a, &model_b});
      emit(io, out_path, export_edge_list(intersection(a, b)), manifest);
      return 0;
    }

    if (*path_cmd) {
      const auto g = import_edge_list(read_file(model_a));
      const auto p = shortest_path(g, from, to);
      if (!p.found) {
        out << "no path\n";
        return 0;
      }
      for (std::size_t i = 0; i < p.path.size(); ++i) out << (i ? " " : "") << p.path[i];
      out << '\t' << p.cost << '\n';
      return 0;
    }

    if (*exp) {
      check_weighting(weighting);
      const fs::path dir(out_dir);
      manifest.subcommand = "experiment " + experiment;
      const auto watched_json = [&](const std::vector<experiments::WatchedWord>& watched) {
        json list = json::array();
        for (const auto& w : watched) {
          list.push_back(experiments::to_json(w, k));
          std::ostringstream before, after;
          write_neighbors_tsv(before, w.before);
          write_neighbors_tsv(after, w.after);
          write_file(dir / ("neighbors_" + w.word + "_before.tsv"), before.str());
          write_file(dir / ("neighbors_" + w.word + "_after.tsv"), after.str());
        }
        return list;
      };
      const auto write_report = [&](const StabilityReport& report) {
        write_file(dir / "report.json", driftbench::to_json(report).dump(2) + "\n");
        std::ostringstream csv;
        write_report_csv(csv, report);
        write_file(dir / "report.csv", csv.str());
      };

      if (experiment == "stein_hemingway") {
        if (base.empty() || addition.empty()) {
          throw UsageError(
              "stein_hemingway needs --base <plain-text edition of The Making of Americans> and "
              "--addition <plain-text short story to add>; corpora are not bundled");
        }
        experiments::AugmentationConfig config;
        config.base = base;
        config.addition = addition;
        config.stoplist = opt_stoplist;
        config.window = exp->get_option("--window")->count() ? exp_flags.window : 10;
        config.min_count = exp_flags.min_count;
        config.k = k;
        config.metric = parse_metric(metric);
        config.ppmi = weighting == "ppmi";
        config.watch = split_list(watch);
        config.report_min_count = report_min_count;
        manifest.parameters = {{"window", config.window}, {"min_count", config.min_count},
                               {"k", k},                  {"metric", metric},
                               {"weighting", weighting},  {"watch", config.watch},
                               {"report_min_count", report_min_count}, {"stoplist", stoplist}};
        const auto r = experiments::run_count_augmentation(config);
        digest_inputs({&base, &addition, &stoplist});
        write_file(dir / "base.cooc", to_string(r.base));
        write_file(dir / "augmented.cooc", to_string(r.augmented));
        write_report(r.report);
        const json summary{{"base", experiments::to_json(r.base_stats)},
                           {"addition", experiments::to_json(r.addition_stats)},
                           {"mean_overlap", r.report.mean_overlap},
                           {"frequency_correlation", r.report.frequency_correlation
                                                         ? json(*r.report.frequency_correlation)
                                                         : json(nullptr)},
                           {"watched", watched_json(r.watched)}};
        write_file(dir / "summary.json", summary.dump(2) + "\n");
        write_manifest(dir / "manifest.json", manifest);
        out << summary.dump(2) << '\n';
        return 0;
      }

      if (experiment == "wiki_sep_style") {
        if (base.empty() || addition.empty()) {
          throw UsageError(
              "wiki_sep_style needs --base <general corpus> and --addition <domain corpus>; "
              "corpora are not bundled");
        }
        experiments::TrainedAugmentationConfig config;
        config.base = base;
        config.addition = addition;
        config.stoplist = opt_stoplist;
        config.training = exp_flags.config();
        config.k = k;
        config.watch = split_list(watch);
        manifest.parameters = to_json(config.training);
        manifest.parameters["k"] = k;
        manifest.parameters["watch"] = config.watch;
        manifest.seed = config.training.seed;
        const auto r = experiments::run_trained_augmentation(config);
        digest_inputs({&base, &addition, &stoplist});
        write_file(dir / "before.vec", embedding_text(r.before.embedding));
        write_file(dir / "after.vec", embedding_text(r.after.embedding));
        write_report(r.report);
        const json summary{{"mean_overlap", r.report.mean_overlap},
                           {"mean_displacement_after_alignment",
                            r.report.mean_displacement ? json(*r.report.mean_displacement) : json(nullptr)},
                           {"losses_before", r.before.epoch_losses},
                           {"losses_after", r.after.epoch_losses},
                           {"watched", watched_json(r.watched)}};
        write_file(dir / "summary.json", summary.dump(2) + "\n");
        write_manifest(dir / "manifest.json", manifest);
        out << summary.dump(2) << '\n';
        return 0;
      }

      // seed_stability
      auto config = experiments::default_seed_stability();
      config.training = exp_flags.config();
      if (!exp->get_option("--objective")->count()) config.training.objective = Objective::negative_sampling(5);
      config.seed = config.training.seed;
      config.runs = runs;
      config.k = k;
      config.sizes.clear();
      for (const auto& s : split_list(sizes)) {
        try {
          config.sizes.push_back(std::stoul(s));
        } catch (const std::exception&) {
          throw UsageError("--sizes expects comma-separated integers, got '" + s + "'");
        }
      }
      manifest.parameters = to_json(config.training);
      manifest.parameters["sizes"] = config.sizes;
      manifest.parameters["runs"] = runs;
      manifest.parameters["k"] = k;
      manifest.parameters["synthetic_vocab"] = config.corpus.vocab_size;
      manifest.seed = config.seed;
      const auto rows = experiments::run_seed_stability(config);
      const auto table = experiments::to_json(rows);
      write_file(dir / "seed_stability.json", table.dump(2) + "\n");
      std::ostringstream tsv;
      tsv << "tokens\tvocabulary\tmean_overlap\tcommon_mean_overlap\n";
      for (const auto& r : rows) {
        tsv << r.tokens << '\t' << r.vocabulary << '\t' << r.mean_overlap << '\t' << r.common_mean_overlap << '\n';
      }
      write_file(dir / "seed_stability.tsv", tsv.str());
      write_manifest(dir / "manifest.json", manifest);
      out << tsv.str();
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::data);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return static_cast<int>(ErrorKind::data);
  }
  return static_cast<int>(ErrorKind::usage);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace driftbench::cli
