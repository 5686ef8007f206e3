#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "temp_dir.hpp"

using namespace driftbench;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = driftbench::cli::run_cli(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kRose = std::string(DRIFTBENCH_TEST_DATA) + "/rose.txt";

const char* kTinyText =
    "The cat sat on the mat and the dog sat on the rug.\n"
    "A cat and a dog met on a mat near the rug.\n"
    "The dog saw the cat and the cat saw the dog.\n";

}  // namespace

TEST(Cli, ExitCodesForUsage) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  const auto help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("build-count"), std::string::npos);
  EXPECT_EQ(invoke({"neighbors", kRose}).code, 1);
}

TEST(Cli, StatsOfRoseFile) {
  const auto r = invoke({"stats", kRose});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tokens"], 10);
  EXPECT_EQ(j["types"], 3);
  EXPECT_DOUBLE_EQ(j["type_token_ratio"].get<double>(), 0.3);
  const auto manifest = manifest_from_json(nlohmann::json::parse(r.err));
  EXPECT_EQ(manifest.subcommand, "stats");
  EXPECT_EQ(manifest.input_digests.at(kRose), digest_file(kRose));
}

TEST(Cli, MissingOrEmptyCorpusIsDataError) {
  TempDir dir;
  EXPECT_EQ(invoke({"stats", dir.str("")}).code, 2);
  const auto r = invoke({"stats", dir.str("absent.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("absent.txt"), std::string::npos);
}

TEST(Cli, BuildCountIsDeterministic) {
  TempDir dir;
  ASSERT_EQ(invoke({"build-count", kRose, "--window", "10", "--out", dir.str("a.cooc")}).code, 0);
  ASSERT_EQ(invoke({"build-count", kRose, "--window", "10", "--out", dir.str("b.cooc")}).code, 0);
  const auto text = slurp(dir.path / "a.cooc");
  EXPECT_EQ(text, slurp(dir.path / "b.cooc"));
  const auto streams = tokenize_all(load_corpus(kRose));
  EXPECT_EQ(text, to_string(count_cooccurrences(streams, build_vocabulary(streams), {10})));
  const auto ma = manifest_from_json(nlohmann::json::parse(slurp(dir.path / "a.cooc.manifest.json")));
  const auto mb = manifest_from_json(nlohmann::json::parse(slurp(dir.path / "b.cooc.manifest.json")));
  EXPECT_EQ(ma, mb);
  EXPECT_EQ(ma.parameters["window"], 10);
}

TEST(Cli, StoplistRemovingEverythingIsDataError) {
  TempDir dir;
  const auto stop = dir.write("stop.txt", "rose\nis\na\n");
  const auto r = invoke({"build-count", kRose, "--stoplist", stop.string(), "--out", dir.str("m.cooc")});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, Neighbors) {
  TempDir dir;
  ASSERT_EQ(invoke({"build-count", kRose, "--out", dir.str("m.cooc")}).code, 0);
  const auto one = invoke({"neighbors", dir.str("m.cooc"), "rose", "--k", "1"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 1);
  const auto json = invoke({"neighbors", dir.str("m.cooc"), "rose", "--format", "json", "--weighting", "ppmi"});
  ASSERT_EQ(json.code, 0) << json.err;
  EXPECT_EQ(nlohmann::json::parse(json.out)["query"], "rose");
  const auto unknown = invoke({"neighbors", dir.str("m.cooc"), "tulip"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("tulip"), std::string::npos);
  EXPECT_EQ(invoke({"neighbors", dir.str("m.cooc"), "rose", "--metric", "manhattan"}).code, 1);
  EXPECT_EQ(invoke({"neighbors", dir.str("m.cooc"), "rose", "--format", "xml"}).code, 1);
}

TEST(Cli, DiffOfIdenticalModels) {
  TempDir dir;
  const auto corpus = dir.write("tiny.txt", kTinyText);
  ASSERT_EQ(invoke({"build-count", corpus.string(), "--window", "3", "--out", dir.str("m.cooc")}).code, 0);
  const auto r = invoke({"diff", dir.str("m.cooc"), dir.str("m.cooc"), "--k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["aggregates"]["mean_overlap"], 1.0);
  EXPECT_EQ(j["aggregates"]["exact_order_fraction"], 1.0);
  const auto csv = invoke({"diff", dir.str("m.cooc"), dir.str("m.cooc"), "--format", "csv", "--word", "cat"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "word,frequency,overlap,jaccard,exact_order,rank_agreement,displacement");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 2);
}

TEST(Cli, TrainIsSeededAndValidated) {
  TempDir dir;
  const auto corpus = dir.write("tiny.txt", kTinyText);
  const std::vector<std::string> common{"train", corpus.string(), "--dim", "6", "--epochs", "20", "--lr", "0.05",
                                        "--window", "2", "--seed", "9"};
  auto a = common;
  a.insert(a.end(), {"--out", dir.str("a.vec")});
  auto b = common;
  b.insert(b.end(), {"--out", dir.str("b.vec")});
  const auto ra = invoke(a);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(invoke(b).code, 0);
  EXPECT_EQ(slurp(dir.path / "a.vec"), slurp(dir.path / "b.vec"));
  EXPECT_EQ(slurp(dir.path / "a.vec.ckpt"), slurp(dir.path / "b.vec.ckpt"));

  // Logged loss decreases over the run.
  std::istringstream log(ra.out);
  std::string header;
  std::getline(log, header);
  EXPECT_EQ(header, "epoch\tloss");
  std::vector<double> losses;
  std::size_t epoch = 0;
  double loss = 0.0;
  while (log >> epoch >> loss) losses.push_back(loss);
  ASSERT_EQ(losses.size(), 20u);
  EXPECT_LT(losses.back(), losses.front());

  const auto manifest = manifest_from_json(nlohmann::json::parse(slurp(dir.path / "a.vec.manifest.json")));
  EXPECT_EQ(manifest.seed, 9u);

  const auto with = [&](std::vector<std::string> extra) {
    auto args = std::vector<std::string>{"train", corpus.string(), "--out", dir.str("x.vec")};
    args.insert(args.end(), extra.begin(), extra.end());
    return invoke(args).code;
  };
  EXPECT_EQ(with({}), 1);  // no seed
  EXPECT_EQ(with({"--seed", "1", "--epochs", "0"}), 1);
  EXPECT_EQ(with({"--seed", "1", "--lr", "0"}), 1);
  EXPECT_EQ(with({"--seed", "1", "--objective", "neg:0"}), 1);
  EXPECT_EQ(with({"--seed", "1", "--lr", "1e300", "--objective", "softmax", "--dim", "4"}), 3);
}

TEST(Cli, CheckpointAndTextModelsGiveSameNeighbors) {
  TempDir dir;
  const auto corpus = dir.write("tiny.txt", kTinyText);
  ASSERT_EQ(invoke({"train", corpus.string(), "--dim", "5", "--seed", "2", "--out", dir.str("m.vec")}).code, 0);
  const auto text = invoke({"neighbors", dir.str("m.vec"), "cat", "--k", "4"});
  const auto ckpt = invoke({"neighbors", dir.str("m.vec.ckpt"), "cat", "--k", "4"});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_EQ(text.out, ckpt.out);
}

TEST(Cli, RotateAndAlign) {
  TempDir dir;
  const auto corpus = dir.write("tiny.txt", kTinyText);
  ASSERT_EQ(invoke({"train", corpus.string(), "--dim", "5", "--seed", "2", "--out", dir.str("m.vec")}).code, 0);
  EXPECT_EQ(invoke({"rotate", dir.str("m.vec"), "--out", dir.str("r.vec")}).code, 1);  // no seed
  ASSERT_EQ(invoke({"rotate", dir.str("m.vec"), "--seed", "4", "--out", dir.str("r.vec")}).code, 0);
  EXPECT_NE(slurp(dir.path / "m.vec"), slurp(dir.path / "r.vec"));

  const auto d = invoke({"diff", dir.str("m.vec"), dir.str("r.vec"), "--k", "5"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(nlohmann::json::parse(d.out)["aggregates"]["mean_overlap"], 1.0);

  const auto al = invoke({"align", dir.str("r.vec"), dir.str("m.vec"), "--out", dir.str("back.vec")});
  ASSERT_EQ(al.code, 0) << al.err;
  EXPECT_LT(nlohmann::json::parse(al.out)["residual"].get<double>(), 1e-6);

  const auto aligned_diff = invoke({"diff", dir.str("m.vec"), dir.str("r.vec"), "--align"});
  ASSERT_EQ(aligned_diff.code, 0) << aligned_diff.err;
  EXPECT_LT(nlohmann::json::parse(aligned_diff.out)["aggregates"]["mean_displacement"].get<double>(), 1e-6);

  ASSERT_EQ(invoke({"train", corpus.string(), "--dim", "4", "--seed", "2", "--out", dir.str("small.vec")}).code, 0);
  EXPECT_EQ(invoke({"align", dir.str("m.vec"), dir.str("small.vec")}).code, 2);
  ASSERT_EQ(invoke({"build-count", corpus.string(), "--out", dir.str("m.cooc")}).code, 0);
  EXPECT_EQ(invoke({"rotate", dir.str("m.cooc"), "--seed", "1"}).code, 2);
}

TEST(Cli, GraphAndIntersect) {
  TempDir dir;
  ASSERT_EQ(invoke({"build-count", kRose, "--out", dir.str("m.cooc")}).code, 0);
  ASSERT_EQ(invoke({"graph", dir.str("m.cooc"), "--out", dir.str("g.tsv")}).code, 0);
  const auto g = import_edge_list(slurp(dir.path / "g.tsv"));
  EXPECT_EQ(g.edges().size(), 3u);
  ASSERT_EQ(invoke({"intersect", dir.str("g.tsv"), dir.str("g.tsv"), "--out", dir.str("i.tsv")}).code, 0);
  EXPECT_EQ(slurp(dir.path / "i.tsv"), slurp(dir.path / "g.tsv"));
  ASSERT_EQ(invoke({"graph", dir.str("m.cooc"), "--min-weight", "1000000", "--out", dir.str("e.tsv")}).code, 0);
  EXPECT_TRUE(import_edge_list(slurp(dir.path / "e.tsv")).edges().empty());
  const auto path = invoke({"path", dir.str("g.tsv"), "is", "a"});
  EXPECT_EQ(path.out.substr(0, path.out.find('\t')), "is a");
  const auto xml = invoke({"graph", dir.str("m.cooc"), "--format", "graphml"});
  EXPECT_NE(xml.out.find("<graphml"), std::string::npos);
  EXPECT_EQ(invoke({"graph", kRose}).code, 2);  // not a matrix
}

TEST(Cli, ExperimentNeedsCorpora) {
  TempDir dir;
  const auto missing = invoke({"experiment", "stein_hemingway", "--out-dir", dir.str("out")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--base"), std::string::npos);
  EXPECT_NE(missing.err.find("--addition"), std::string::npos);
  const auto absent = invoke({"experiment", "stein_hemingway", "--base", dir.str("nope.txt"), "--addition", kRose,
                           "--out-dir", dir.str("out")});
  EXPECT_EQ(absent.code, 2);
  EXPECT_NE(absent.err.find("nope.txt"), std::string::npos);
  EXPECT_EQ(invoke({"experiment", "unknown", "--out-dir", dir.str("out")}).code, 1);
}

TEST(Cli, CountExperimentBundle) {
  TempDir dir;
  const auto base = dir.write("base.txt", kTinyText);
  const auto addition = dir.write("add.txt", "The waiter poured a glass for the old man at the table.\n");
  const auto r = invoke({"experiment", "stein_hemingway", "--base", base.string(), "--addition", addition.string(),
                      "--out-dir", dir.str("out"), "--k", "3", "--watch", "cat,dog"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto* f : {"base.cooc", "augmented.cooc", "report.json", "report.csv", "summary.json", "manifest.json",
                        "neighbors_cat_before.tsv", "neighbors_dog_after.tsv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path / "out" / f)) << f;
  }
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["base"]["tokens"], 36);
  EXPECT_EQ(summary["watched"].size(), 2u);
  const auto manifest = manifest_from_json(nlohmann::json::parse(slurp(dir.path / "out" / "manifest.json")));
  EXPECT_EQ(manifest.parameters["window"], 10);
  EXPECT_EQ(manifest.input_digests.size(), 2u);
}

TEST(Cli, SeedStabilityExperiment) {
  TempDir dir;
  const auto r = invoke({"experiment", "seed_stability", "--sizes", "1500,3000", "--runs", "2", "--dim", "5",
                      "--epochs", "1", "--out-dir", dir.str("out")});
  EXPECT_EQ(r.code, 1);  // seed is mandatory
  const auto ok = invoke({"experiment", "seed_stability", "--sizes", "1500,3000", "--runs", "2", "--dim", "5",
                       "--epochs", "1", "--seed", "3", "--out-dir", dir.str("out")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(std::count(ok.out.begin(), ok.out.end(), '\n'), 3);
  EXPECT_EQ(slurp(dir.path / "out" / "seed_stability.tsv"), ok.out);
  EXPECT_EQ(invoke({"experiment", "seed_stability", "--sizes", "big", "--seed", "1", "--out-dir", dir.str("o")}).code, 1);
}

TEST(Cli, TrainedAugmentationExperiment) {
  TempDir dir;
  const auto base = dir.write("base.txt", kTinyText);
  const auto addition = dir.write("add.txt", "The waiter poured a glass for the old man at the table.\n");
  const auto r = invoke({"experiment", "wiki_sep_style", "--base", base.string(), "--addition", addition.string(),
                      "--out-dir", dir.str("out"), "--seed", "5", "--dim", "4", "--epochs", "2", "--watch", "cat"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir.path / "out" / "before.vec"));
  EXPECT_TRUE(std::filesystem::exists(dir.path / "out" / "after.vec"));
  EXPECT_EQ(nlohmann::json::parse(r.out)["watched"].size(), 1u);
}
