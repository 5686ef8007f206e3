#pragma once

// Reference neighbour lists (query first, as published, scores as printed).

#include <string>
#include <utility>
#include <vector>

#include "driftbench/vector_space.hpp"

namespace fixtures {

using Rows = std::vector<std::pair<std::string, double>>;

inline driftbench::NeighborList make_list(const std::string& query, const Rows& rows) {
  driftbench::NeighborList list{query, driftbench::Metric::cosine, {}};
  for (const auto& [token, score] : rows) list.entries.push_back({token, score});
  return list;
}

inline const Rows kKnow{{"know", 1},         {"understand", 0.95231}, {"it", 0.94286},  {"see", 0.93759},
                        {"think", 0.93293},  {"feel", 0.92994},       {"like", 0.91969}, {"i", 0.91810},
                        {"love", 0.91631},   {"say", 0.91139}};

inline const Rows kKnowAugmented{{"know", 1},        {"understand", 0.95284}, {"it", 0.94282},
                                 {"see", 0.93767},   {"think", 0.93301},      {"feel", 0.92995},
                                 {"like", 0.91988},  {"i", 0.91824},          {"love", 0.91621},
                                 {"say", 0.91149}};

inline const Rows kGlass{{"glass", 1},          {"chandeliers", 0.72183}, {"prisms", 0.66340},
                         {"brocade", 0.66189},  {"couches", 0.62936},     {"paintings", 0.61804},
                         {"covered", 0.59258},  {"blue", 0.57989},        {"peasants", 0.56695},
                         {"grace", 0.56356}};

inline const Rows kGlassAugmented{{"glass", 1},       {"saucer", 0.70040}, {"waiter", 0.69522},
                                  {"table", 0.67740}, {"leaves", 0.67237}, {"sun", 0.66906},
                                  {"wind", 0.66725},  {"rain", 0.65831},   {"ground", 0.65248},
                                  {"autumn", 0.64633}};

inline const Rows kAtomism{{"hermeneutics", 0.6264374852}, {"marxian", 0.6201933026},
                           {"literalism", 0.6058064699},   {"teleological", 0.5955067873},
                           {"structuralist", 0.5910843611}, {"hegelian", 0.5891885161},
                           {"dialectics", 0.5875156522},   {"dialectical", 0.5867146254},
                           {"aristotelian", 0.5856689215}, {"dialectic", 0.5851504803}};

inline const Rows kAtomismAugmented{{"hermeneutics", 0.6437253952}, {"literalism", 0.6013854742},
                                    {"dialectical", 0.5974110365},  {"aristotelian", 0.5932770967},
                                    {"common-sense", 0.5932747126}, {"dialectic", 0.592557013},
                                    {"marxian", 0.5904948115},      {"stoics", 0.590367794},
                                    {"metaphysics", 0.590038836},   {"teleological", 0.5898262858}};

inline const Rows kCan{{"could", 0.9070302844},  {"must", 0.8936086297},  {"will", 0.8754156828},
                       {"should", 0.86156708},   {"might", 0.8409249783}, {"would", 0.7724595666},
                       {"shall", 0.7433335781},  {"tends", 0.7155040503}, {"tend", 0.6577498913},
                       {"allows", 0.6565326452}};

inline const Rows kCanAugmented{{"could", 0.9092261791},  {"must", 0.8965392113},  {"will", 0.8733622432},
                                {"should", 0.8621583581}, {"might", 0.8425428271}, {"would", 0.7711693048},
                                {"shall", 0.7456864119},  {"tends", 0.7148002386}, {"allows", 0.6586717963},
                                {"tend", 0.656722188}};

}  // namespace fixtures
