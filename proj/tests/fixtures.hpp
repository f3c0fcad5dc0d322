#ifndef OMNIGRAPH_TESTS_FIXTURES_HPP
#define OMNIGRAPH_TESTS_FIXTURES_HPP

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "omnigraph/graph.hpp"
#include "omnigraph/ingest.hpp"
#include "omnigraph/instance.hpp"

namespace omnigraph::testing {

// --- WL toy pair ------------------------------------------------------
// G has frames A, B, B with one dependency B->A; G' has A, B with B->A.
// Iteration-0 similarity 3, iteration-1 similarity 2, h=1 kernel 5.
inline std::pair<OmniGraph, OmniGraph> wl_toy_pair() {
  OmniGraph g;
  g.sentence_id = "wl-toy-g";
  g.nodes = {{0, NodeKind::FrameName, "A"},
             {1, NodeKind::FrameName, "B"},
             {2, NodeKind::FrameName, "B"}};
  g.edges = {{1, 0, EdgeKind::FrameDependency}};
  OmniGraph h;
  h.sentence_id = "wl-toy-h";
  h.nodes = {{0, NodeKind::FrameName, "A"}, {1, NodeKind::FrameName, "B"}};
  h.edges = {{1, 0, EdgeKind::FrameDependency}};
  return {g, h};
}

// --- NEW toy pair -----------------------------------------------------
// Shared chain DE -FillsRole-> FE -ElementOf-> FN plus one extra frame
// with a different name per graph. With the weights below the basis
// kernels are 1.9, 0.084, 0.04536, 0 for p = 0..3.
inline std::pair<OmniGraph, OmniGraph> new_toy_pair() {
  auto chain = [](const std::string& sid, const std::string& extra_frame) {
    OmniGraph g;
    g.sentence_id = sid;
    g.nodes = {{0, NodeKind::DesignatedEntity, kDesignatedEntityLabel},
               {1, NodeKind::FrameElement, "Convey_importance.Message"},
               {2, NodeKind::FrameName, "Convey_importance"},
               {3, NodeKind::FrameName, extra_frame}};
    g.edges = {{0, 1, EdgeKind::FillsRole}, {1, 2, EdgeKind::ElementOf}};
    return g;
  };
  return {chain("new-toy-g", "Statement"), chain("new-toy-h", "Leadership")};
}

inline WeightConfig new_toy_config() {
  WeightConfig cfg;
  cfg.node_weights[static_cast<int>(NodeKind::FrameName)] = 0.9;
  cfg.node_weights[static_cast<int>(NodeKind::FrameTarget)] = 0.5;
  cfg.node_weights[static_cast<int>(NodeKind::FrameElement)] = 0.7;
  cfg.node_weights[static_cast<int>(NodeKind::DesignatedEntity)] = 0.3;
  cfg.node_weights[static_cast<int>(NodeKind::OtherEntity)] = 0.5;
  cfg.node_weights[static_cast<int>(NodeKind::LexicalItem)] = 0.5;
  cfg.edge_weights[static_cast<int>(EdgeKind::TargetEvokes)] = 0.5;
  cfg.edge_weights[static_cast<int>(EdgeKind::ElementOf)] = 0.6;
  cfg.edge_weights[static_cast<int>(EdgeKind::FillsRole)] = 0.4;
  cfg.edge_weights[static_cast<int>(EdgeKind::FrameDependency)] = 0.5;
  cfg.edge_weights[static_cast<int>(EdgeKind::LexicalFill)] = 0.5;
  cfg.max_depth = 3;
  cfg.alphas = {0.25, 0.25, 0.25, 0.25};
  return cfg;
}

// --- Humana sentence --------------------------------------------------
// "The accreditation renewal underscores the quality of our work with
//  Humana members said Humana's president"
inline std::string humana_conll() {
  return
      "1\tThe\t_\t_\t_\t_\t3\tNMOD\n"
      "2\taccreditation\t_\t_\t_\t_\t3\tNMOD\n"
      "3\trenewal\t_\t_\t_\t_\t4\tSBJ\n"
      "4\tunderscores\t_\t_\t_\t_\t13\tOBJ\n"
      "5\tthe\t_\t_\t_\t_\t6\tNMOD\n"
      "6\tquality\t_\t_\t_\t_\t4\tOBJ\n"
      "7\tof\t_\t_\t_\t_\t6\tNMOD\n"
      "8\tour\t_\t_\t_\t_\t9\tNMOD\n"
      "9\twork\t_\t_\t_\t_\t7\tPMOD\n"
      "10\twith\t_\t_\t_\t_\t9\tNMOD\n"
      "11\tHumana\t_\t_\t_\t_\t12\tNMOD\n"
      "12\tmembers\t_\t_\t_\t_\t10\tPMOD\n"
      "13\tsaid\t_\t_\t_\t_\t0\tROOT\n"
      "14\tHumana's\t_\t_\t_\t_\t15\tNMOD\n"
      "15\tpresident\t_\t_\t_\t_\t13\tSBJ\n";
}

inline std::string humana_frames_json() {
  return R"({"sentence_id":"humana-1","date":"2013-04-01","doc_id":"doc1","frames":[)"
         R"({"name":"Convey_importance","target":[3,3],"elements":[{"name":"Message","span":[4,11]}]},)"
         R"({"name":"Capability","target":[5,5],"elements":[]},)"
         R"({"name":"Statement","target":[12,12],"elements":[{"name":"Message","span":[0,11]},{"name":"Speaker","span":[13,14]}]},)"
         R"({"name":"Leadership","target":[14,14],"elements":[]}]})";
}

inline std::string humana_lexicon_json() {
  return R"({"humana": ["Humana", "Humana's", "Humana Pharmacy Solutions"]})";
}

inline OmniGraph humana_graph(bool* de_present = nullptr) {
  auto parses = parse_conll_text(humana_conll());
  std::vector<int> counts{static_cast<int>(parses[0].tokens.size())};
  auto frames = parse_frames_text(humana_frames_json() + "\n", &counts);
  std::istringstream lex_in(humana_lexicon_json());
  auto lexicon = read_lexicon(lex_in);
  auto mentions = match_entities(parses[0].forms(), lexicon);
  return build_graph(parses[0], frames[0].frames, mentions, "humana",
                     "humana-1", de_present);
}

// --- Random valid graphs ----------------------------------------------
inline OmniGraph random_graph(std::mt19937_64& rng, int max_extra_nodes = 6) {
  static const std::vector<std::string> frame_pool = {"F1", "F2", "F3"};
  static const std::vector<std::string> word_pool = {"w1", "w2", "w3"};
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
  };
  auto coin = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };

  OmniGraph g;
  g.sentence_id = "random";
  int next_id = 0;
  auto add = [&](NodeKind kind, std::string label) {
    g.nodes.push_back({next_id, kind, std::move(label)});
    return next_id++;
  };

  int budget = std::uniform_int_distribution<int>(1, max_extra_nodes)(rng);
  std::vector<int> frames, elements;
  frames.push_back(add(NodeKind::FrameName, pick(frame_pool)));
  --budget;
  while (budget > 0) {
    --budget;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
      case 0:
        frames.push_back(add(NodeKind::FrameName, pick(frame_pool)));
        break;
      case 1: {  // target, evoking a random frame
        int t = add(NodeKind::FrameTarget, pick(word_pool));
        int f = frames[std::uniform_int_distribution<size_t>(
            0, frames.size() - 1)(rng)];
        g.edges.push_back({t, f, EdgeKind::TargetEvokes});
        break;
      }
      case 2: {  // element of a random frame
        int e = add(NodeKind::FrameElement, pick(frame_pool) + ".Role");
        int f = frames[std::uniform_int_distribution<size_t>(
            0, frames.size() - 1)(rng)];
        g.edges.push_back({e, f, EdgeKind::ElementOf});
        elements.push_back(e);
        break;
      }
      case 3:
        if (!elements.empty()) {
          int d = add(coin(0.5) ? NodeKind::DesignatedEntity
                                : NodeKind::OtherEntity,
                      "");
          g.nodes.back().label =
              g.nodes.back().kind == NodeKind::DesignatedEntity
                  ? kDesignatedEntityLabel
                  : kOtherEntityLabel;
          std::set<int> linked;
          for (int e : elements)
            if (coin(0.6) && linked.insert(e).second)
              g.edges.push_back({d, e, EdgeKind::FillsRole});
          if (linked.empty())
            g.edges.push_back({d, elements.front(), EdgeKind::FillsRole});
        }
        break;
      case 4:
        if (!elements.empty()) {
          int li = add(NodeKind::LexicalItem, pick(word_pool));
          int e = elements[std::uniform_int_distribution<size_t>(
              0, elements.size() - 1)(rng)];
          g.edges.push_back({li, e, EdgeKind::LexicalFill});
        }
        break;
      case 5:
        if (frames.size() >= 2) {
          int a = frames[std::uniform_int_distribution<size_t>(
              0, frames.size() - 1)(rng)];
          int b = frames[std::uniform_int_distribution<size_t>(
              0, frames.size() - 1)(rng)];
          if (a != b) {
            bool dup = false;
            for (const auto& e : g.edges)
              dup |= e.from == a && e.to == b &&
                     e.kind == EdgeKind::FrameDependency;
            if (!dup)
              g.edges.push_back({a, b, EdgeKind::FrameDependency});
          }
        }
        break;
    }
  }
  return g;
}

inline Instance random_instance(std::mt19937_64& rng, const std::string& date) {
  Instance inst;
  inst.entity_id = "RND";
  inst.date = date;
  inst.label = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  int n = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n; ++i) inst.graphs.push_back(random_graph(rng));
  return inst;
}

}  // namespace omnigraph::testing

#endif  // OMNIGRAPH_TESTS_FIXTURES_HPP
