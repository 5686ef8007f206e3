#include <gtest/gtest.h>

#include <functional>

#include "driftbench/graph.hpp"
#include "oracles.hpp"

using namespace driftbench;

namespace {

CooccurrenceMatrix rose_counts() {
  const auto& s = oracle::rose_streams();
  return count_cooccurrences(s, build_vocabulary(s), {10});
}

SemanticGraph random_graph(Rng& rng, std::size_t nodes, double density) {
  SemanticGraph g;
  for (std::size_t i = 0; i < nodes; ++i) g.add_node("n" + std::to_string(i), rng.below(3));
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = i + 1; j < nodes; ++j) {
      if (rng.uniform() < density) g.set_edge("n" + std::to_string(i), "n" + std::to_string(j), 1 + rng.below(4));
    }
  }
  return g;
}

// Exhaustive search over simple paths: minimum cost, then smallest token sequence.
PathResult brute_force_path(const SemanticGraph& g, const std::string& from, const std::string& to) {
  PathResult best;
  std::vector<std::string> path{from};
  std::function<void(double)> walk = [&](double cost) {
    const std::string here = path.back();
    if (here == to) {
      const bool tie = best.found && std::abs(cost - best.cost) <= 1e-9;
      if (!best.found || (!tie && cost < best.cost) || (tie && path < best.path)) {
        best.found = true;
        best.cost = cost;
        best.path = path;
      }
      return;
    }
    for (const auto& [token, self] : g.nodes()) {
      const auto w = g.edge_weight(here, token);
      if (!w || std::find(path.begin(), path.end(), token) != path.end()) continue;
      path.push_back(token);
      walk(cost + 1.0 / static_cast<double>(*w));
      path.pop_back();
    }
  };
  walk(0.0);
  return best;
}

}  // namespace

TEST(Graph, RoseSentence) {
  const auto g = from_counts(rose_counts());
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.edges().size(), 3u);
  EXPECT_EQ(g.edge_weight("rose", "is"), 12u);
  EXPECT_EQ(g.edge_weight("a", "rose"), 12u);
  EXPECT_EQ(g.edge_weight("is", "a"), 9u);
  EXPECT_EQ(g.self_weight("rose"), 12u);
  EXPECT_EQ(g.self_weight("is"), 6u);
  EXPECT_EQ(g.self_weight("a"), 6u);
  const auto ranking = degree_ranking(g, 10);
  ASSERT_EQ(ranking.size(), 3u);
  EXPECT_EQ(ranking[0], (std::pair<std::string, std::uint64_t>{"rose", 24}));
  EXPECT_EQ(ranking[1], (std::pair<std::string, std::uint64_t>{"a", 21}));
  EXPECT_EQ(ranking[2], (std::pair<std::string, std::uint64_t>{"is", 21}));
  EXPECT_EQ(degree_ranking(g, 1).size(), 1u);
}

TEST(Graph, EdgeRules) {
  SemanticGraph g;
  EXPECT_THROW(g.set_edge("x", "x", 3), DataError);
  EXPECT_THROW(g.set_edge("x", "y", 0), DataError);
  g.set_edge("y", "x", 4);
  EXPECT_TRUE(g.contains("x"));
  EXPECT_EQ(g.edges().begin()->first, (SemanticGraph::Edge{"x", "y"}));
  EXPECT_FALSE(g.edge_weight("x", "z"));
  EXPECT_THROW(g.self_weight("z"), LookupError);
  EXPECT_THROW(from_counts(rose_counts(), 0), ConfigError);
}

TEST(ShortestPath, RoseDirectEdge) {
  const auto g = from_counts(rose_counts());
  const auto p = shortest_path(g, "is", "a");
  ASSERT_TRUE(p.found);
  EXPECT_EQ(p.path, (std::vector<std::string>{"is", "a"}));
  EXPECT_DOUBLE_EQ(p.cost, 1.0 / 9.0);
  const auto back = shortest_path(g, "a", "is");
  EXPECT_EQ(back.cost, p.cost);
  const auto self = shortest_path(g, "a", "a");
  EXPECT_EQ(self.path, std::vector<std::string>{"a"});
  EXPECT_EQ(self.cost, 0.0);
}

TEST(ShortestPath, TiesPreferSmallerTokenSequence) {
  SemanticGraph g;
  g.set_edge("a", "b", 2);
  g.set_edge("b", "d", 2);
  g.set_edge("a", "c", 2);
  g.set_edge("c", "d", 2);
  EXPECT_EQ(shortest_path(g, "a", "d").path, (std::vector<std::string>{"a", "b", "d"}));
  EXPECT_EQ(shortest_path(g, "d", "a").path, (std::vector<std::string>{"d", "b", "a"}));
  // A direct edge of equal cost loses to the detour through "b".
  g.set_edge("a", "d", 1);
  EXPECT_EQ(shortest_path(g, "a", "d").path, (std::vector<std::string>{"a", "b", "d"}));
}

TEST(ShortestPath, DisconnectedAndUnknown) {
  SemanticGraph g;
  g.set_edge("a", "b", 1);
  g.add_node("island");
  EXPECT_FALSE(shortest_path(g, "a", "island").found);
  EXPECT_THROW(shortest_path(g, "a", "nowhere"), LookupError);
}

TEST(ShortestPath, MatchesExhaustiveSearch) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_graph(rng, 2 + rng.below(6), 0.5);
    for (const auto& [from, s1] : g.nodes()) {
      for (const auto& [to, s2] : g.nodes()) {
        const auto got = shortest_path(g, from, to);
        const auto expected = brute_force_path(g, from, to);
        ASSERT_EQ(got.found, expected.found);
        if (!got.found) continue;
        EXPECT_NEAR(got.cost, expected.cost, 1e-12);
        EXPECT_EQ(got.path, expected.path);
        EXPECT_NEAR(shortest_path(g, to, from).cost, got.cost, 1e-12);
      }
    }
  }
}

TEST(EdgeList, Format) {
  EXPECT_EQ(export_edge_list(SemanticGraph{}), "# nodes 0\n");
  const auto text = export_edge_list(from_counts(rose_counts()));
  EXPECT_EQ(text,
            "# nodes 3\n# node\ta\t6\n# node\tis\t6\n# node\trose\t12\n"
            "a\tis\t9\na\trose\t12\nis\trose\t12\n");
}

TEST(EdgeList, RoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 1 + rng.below(10), 0.4);
    EXPECT_EQ(import_edge_list(export_edge_list(g)), g);
  }
  EXPECT_THROW(import_edge_list("a\tb\n"), DataError);
  EXPECT_THROW(import_edge_list("a\tb\tx\n"), DataError);
  EXPECT_THROW(import_edge_list("# node\ta\n"), DataError);
  // Plain edge lists without node lines are accepted.
  EXPECT_EQ(import_edge_list("a\tb\t3\n").edge_weight("b", "a"), 3u);
}

TEST(Conversion, MatrixGraphMatrixIsLossless) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto streams = oracle::random_streams(rng, 3, 80, 10);
    const auto m = count_cooccurrences(streams, build_vocabulary(streams), {1 + rng.below(5)});
    EXPECT_EQ(to_matrix(from_counts(m), m.vocabulary(), m.window()), m);
  }
}

TEST(Conversion, ThresholdAboveMaximumGivesNoEdges) {
  const auto g = from_counts(rose_counts(), 13);
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(from_counts(rose_counts(), 10).edges().size(), 2u);
}

TEST(Intersection, AlgebraicProperties) {
  Rng rng(44);
  const auto subgraph_of = [](const SemanticGraph& s, const SemanticGraph& g) {
    for (const auto& [token, self] : s.nodes()) {
      if (!g.contains(token) || self > g.self_weight(token)) return false;
    }
    for (const auto& [edge, w] : s.edges()) {
      const auto other = g.edge_weight(edge.first, edge.second);
      if (!other || w > *other) return false;
    }
    return true;
  };
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_graph(rng, 6 + rng.below(3), 0.5);
    const auto b = random_graph(rng, 6 + rng.below(3), 0.5);
    const auto c = random_graph(rng, 6 + rng.below(3), 0.5);
    EXPECT_EQ(intersection(a, a), a);
    EXPECT_EQ(intersection(a, b), intersection(b, a));
    EXPECT_EQ(intersection(intersection(a, b), c), intersection(a, intersection(b, c)));
    EXPECT_TRUE(subgraph_of(intersection(a, b), a));
    EXPECT_TRUE(subgraph_of(intersection(a, b), b));
  }
}

TEST(Intersection, SharedSentenceSurvives) {
  const auto a = tokenize_all(std::vector<Document>{{"a", "the old man drank his coffee slowly"}});
  const auto b = tokenize_all(std::vector<Document>{{"b", "a waiter poured the coffee for the old man"}});
  const auto ga = from_counts(count_cooccurrences(a, build_vocabulary(a), {3}));
  const auto gb = from_counts(count_cooccurrences(b, build_vocabulary(b), {3}));
  const auto shared = intersection(ga, gb);
  for (const auto* w : {"the", "old", "man", "coffee"}) EXPECT_TRUE(shared.contains(w)) << w;
  EXPECT_FALSE(shared.contains("waiter"));
  EXPECT_TRUE(shared.edge_weight("old", "man"));
  EXPECT_TRUE(shared.edge_weight("the", "old"));
}

TEST(GraphMl, EscapesAndCounts) {
  SemanticGraph g;
  g.set_edge("a&b", "c<d", 5);
  const auto xml = export_graphml(g);
  EXPECT_NE(xml.find("<node id=\"a&amp;b\">"), std::string::npos);
  EXPECT_NE(xml.find("target=\"c&lt;d\""), std::string::npos);
  EXPECT_NE(xml.find("<data key=\"weight\">5</data>"), std::string::npos);
}
