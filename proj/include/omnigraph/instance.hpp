#ifndef OMNIGRAPH_INSTANCE_HPP
#define OMNIGRAPH_INSTANCE_HPP

#include <array>
#include <string>
#include <vector>

#include "omnigraph/graph.hpp"

namespace omnigraph {

// Forest of sentence graphs for one (entity, day) pair plus a binary label.
struct Instance {
  std::string entity_id;
  std::string date;  // ISO-8601
  int label = 0;     // -1 or +1
  std::vector<OmniGraph> graphs;
  // Raw token sequences per sentence, retained for the BOW benchmark.
  std::vector<std::vector<std::string>> tokens;

  std::string id() const { return entity_id + ":" + date; }

  // Kernel view: disjoint union of the sentence graphs, ids re-based,
  // nothing merged.
  OmniGraph make_union() const { return disjoint_union(graphs, id()); }
};

// Per-node-kind and per-edge-kind weights, neighborhood depth (h for WL,
// p for NEW) and the interpolation vector over basis kernels.
struct WeightConfig {
  std::array<double, kNodeKindCount> node_weights{1, 1, 1, 1, 1, 1};
  std::array<double, kEdgeKindCount> edge_weights{1, 1, 1, 1, 1};
  int max_depth = 1;
  std::vector<double> alphas{0.5, 0.5};

  double node_weight(NodeKind k) const {
    return node_weights[static_cast<int>(k)];
  }
  double edge_weight(EdgeKind k) const {
    return edge_weights[static_cast<int>(k)];
  }

  // Throws ConfigError on negative weights, bad depth, or alphas that do
  // not form a length max_depth+1 vector summing to 1 within 1e-9.
  void validate() const;
};

WeightConfig uniform_config(int max_depth);

}  // namespace omnigraph

#endif  // OMNIGRAPH_INSTANCE_HPP
