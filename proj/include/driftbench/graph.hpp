#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "driftbench/count_model.hpp"
#include "driftbench/error.hpp"

namespace driftbench {

/// Undirected weighted co-occurrence network. Nodes are word types; an edge
/// carries the co-occurrence count of its two words. Self co-occurrence is a
/// node attribute, never a loop.
class SemanticGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  void add_node(const std::string& token, std::uint64_t self_weight = 0) {
    if (token.empty()) throw DataError("graph nodes must be non-empty tokens");
    nodes_[token] = self_weight;
  }

  void set_edge(const std::string& a, const std::string& b, std::uint64_t weight) {
    if (a == b) throw DataError("self co-occurrence of '" + a + "' belongs in the node's self weight");
    if (weight == 0) throw DataError("edge weights must be positive");
    if (!nodes_.contains(a)) add_node(a);
    if (!nodes_.contains(b)) add_node(b);
    edges_[key(a, b)] = weight;
  }

  bool contains(std::string_view token) const { return nodes_.find(token) != nodes_.end(); }

  std::uint64_t self_weight(std::string_view token) const {
    const auto it = nodes_.find(token);
    if (it == nodes_.end()) throw LookupError(std::string(token));
    return it->second;
  }

  std::optional<std::uint64_t> edge_weight(const std::string& a, const std::string& b) const {
    const auto it = edges_.find(key(a, b));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, std::uint64_t, std::less<>>& nodes() const noexcept { return nodes_; }
  const std::map<Edge, std::uint64_t>& edges() const noexcept { return edges_; }

  bool operator==(const SemanticGraph&) const = default;

  static Edge key(const std::string& a, const std::string& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

 private:
  std::map<std::string, std::uint64_t, std::less<>> nodes_;
  std::map<Edge, std::uint64_t> edges_;
};

/// Every vocabulary word becomes a node (self weight = diagonal count); an
/// edge joins t and c whenever counts[t][c] >= min_weight.
inline SemanticGraph from_counts(const CooccurrenceMatrix& m, std::uint64_t min_weight = 1) {
  if (min_weight < 1) throw ConfigError("min_weight must be >= 1");
  SemanticGraph g;
  const auto& vocab = m.vocabulary();
  for (std::size_t t = 0; t < m.size(); ++t) g.add_node(vocab.token(t), m.count(t, t));
  for (std::size_t t = 0; t < m.size(); ++t) {
    for (const auto& e : m.row(t)) {
      if (e.context <= t || e.count < min_weight) continue;
      g.set_edge(vocab.token(t), vocab.token(e.context), e.count);
    }
  }
  return g;
}

/// Rebuilds a co-occurrence matrix over `vocab` from edges and self weights.
/// Nodes missing from `vocab` are an error.
inline CooccurrenceMatrix to_matrix(const SemanticGraph& g, const Vocabulary& vocab, WindowConfig window) {
  CooccurrenceMatrix m(vocab, window);
  CooccurrenceMatrix::PairCounts pairs;
  for (const auto& [token, self] : g.nodes()) {
    const auto i = static_cast<std::uint32_t>(vocab.index_of(token));
    if (self > 0) pairs[detail::pair_key(i, i)] = self;
  }
  for (const auto& [edge, weight] : g.edges()) {
    const auto a = static_cast<std::uint32_t>(vocab.index_of(edge.first));
    const auto b = static_cast<std::uint32_t>(vocab.index_of(edge.second));
    pairs[detail::pair_key(a, b)] = weight;
  }
  m.merge(pairs);
  return m;
}

/// Shared nodes and shared edges; a shared edge (or self weight) keeps the
/// smaller of its two weights.
inline SemanticGraph intersection(const SemanticGraph& a, const SemanticGraph& b) {
  SemanticGraph g;
  for (const auto& [token, self] : a.nodes()) {
    if (b.contains(token)) g.add_node(token, std::min(self, b.self_weight(token)));
  }
  for (const auto& [edge, weight] : a.edges()) {
    if (const auto other = b.edge_weight(edge.first, edge.second)) {
      g.set_edge(edge.first, edge.second, std::min(weight, *other));
    }
  }
  return g;
}

/// Nodes by total incident edge weight (self weight excluded), heaviest
/// first, ties in token order.
inline std::vector<std::pair<std::string, std::uint64_t>> degree_ranking(const SemanticGraph& g,
                                                                         std::size_t top) {
  std::map<std::string, std::uint64_t, std::less<>> strength;
  for (const auto& [token, self] : g.nodes()) strength[token] = 0;
  for (const auto& [edge, weight] : g.edges()) {
    strength[edge.first] += weight;
    strength[edge.second] += weight;
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranking(strength.begin(), strength.end());
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  if (ranking.size() > top) ranking.resize(top);
  return ranking;
}

struct PathResult {
  bool found = false;
  std::vector<std::string> path;
  double cost = 0.0;
};

namespace detail {

inline bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace detail

/// Dijkstra under edge cost 1/weight, so strong associations are short.
/// Among routes of equal cost (to 1e-12 relative) the lexicographically
/// smallest token sequence wins. Unreachable targets give found == false.
inline PathResult shortest_path(const SemanticGraph& g, std::string_view from, std::string_view to) {
  if (!g.contains(from)) throw LookupError(std::string(from));
  if (!g.contains(to)) throw LookupError(std::string(to));

  // Node indices follow token order, so comparing index sequences compares
  // token sequences.
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& [token, self] : g.nodes()) {
    index.emplace(token, names.size());
    names.push_back(token);
  }
  const std::size_t n = names.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(n);
  for (const auto& [edge, weight] : g.edges()) {
    const auto a = index.find(edge.first)->second;
    const auto b = index.find(edge.second)->second;
    const double cost = 1.0 / static_cast<double>(weight);
    adjacency[a].emplace_back(b, cost);
    adjacency[b].emplace_back(a, cost);
  }

  const std::size_t source = index.find(from)->second;
  const std::size_t target = index.find(to)->second;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::vector<std::size_t>> best(n);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  best[source] = {source};
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = 1;
    if (u == target) break;
    for (const auto& [v, cost] : adjacency[u]) {
      if (done[v]) continue;
      const double nd = dist[u] + cost;
      if (dist[v] != inf && detail::nearly_equal(nd, dist[v])) {
        auto candidate = best[u];
        candidate.push_back(v);
        if (candidate < best[v]) best[v] = std::move(candidate);
      } else if (nd < dist[v]) {
        dist[v] = nd;
        best[v] = best[u];
        best[v].push_back(v);
        queue.emplace(nd, v);
      }
    }
  }

  PathResult result;
  if (dist[target] == inf) return result;
  result.found = true;
  result.cost = dist[target];
  for (auto i : best[target]) result.path.push_back(names[i]);
  return result;
}

// ---- edge-list TSV ---------------------------------------------------------
//
//   # nodes <n>
//   # node<TAB><token><TAB><self_weight>      (one comment line per node)
//   <tokenA><TAB><tokenB><TAB><weight>        (tokenA < tokenB, sorted)
//
// Tools that skip '#' lines see a plain weighted edge list; the node lines
// make the round trip exact for isolated nodes and self weights.

inline std::string export_edge_list(const SemanticGraph& g) {
  std::ostringstream out;
  out << "# nodes " << g.nodes().size() << '\n';
  for (const auto& [token, self] : g.nodes()) out << "# node\t" << token << '\t' << self << '\n';
  for (const auto& [edge, weight] : g.edges()) out << edge.first << '\t' << edge.second << '\t' << weight << '\n';
  return out.str();
}

inline SemanticGraph import_edge_list(std::string_view text) {
  SemanticGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("# node\t")) {
      const auto f = detail::split(std::string_view(line).substr(7), '\t');
      if (f.size() != 2) throw DataError("line " + std::to_string(line_no) + ": malformed node line");
      g.add_node(std::string(f[0]), detail::parse_number<std::uint64_t>(f[1], line_no));
      continue;
    }
    if (line.starts_with("#")) continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 3) throw DataError("line " + std::to_string(line_no) + ": expected tokenA<TAB>tokenB<TAB>weight");
    g.set_edge(std::string(f[0]), std::string(f[1]), detail::parse_number<std::uint64_t>(f[2], line_no));
  }
  return g;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string export_graphml(const SemanticGraph& g) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"self_weight\" for=\"node\" attr.name=\"self_weight\" attr.type=\"long\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const auto& [token, self] : g.nodes()) {
    out << "    <node id=\"" << detail::xml_escape(token) << "\"><data key=\"self_weight\">" << self
        << "</data></node>\n";
  }
  for (const auto& [edge, weight] : g.edges()) {
    out << "    <edge source=\"" << detail::xml_escape(edge.first) << "\" target=\"" << detail::xml_escape(edge.second)
        << "\"><data key=\"weight\">" << weight << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

}  // namespace driftbench
