#include "omnigraph/instance.hpp"

#include <cmath>
#include <numeric>

namespace omnigraph {

void WeightConfig::validate() const {
  for (int i = 0; i < kNodeKindCount; ++i)
    if (node_weights[i] < 0)
      throw ConfigError(std::string("negative node weight for ") +
                        to_string(static_cast<NodeKind>(i)));
  for (int i = 0; i < kEdgeKindCount; ++i)
    if (edge_weights[i] < 0)
      throw ConfigError(std::string("negative edge weight for ") +
                        to_string(static_cast<EdgeKind>(i)));
  if (max_depth < 0) throw ConfigError("max_depth must be non-negative");
  if (alphas.size() != static_cast<size_t>(max_depth) + 1)
    throw ConfigError("alphas must have length max_depth+1");
  double sum = 0;
  for (double a : alphas) {
    if (a < 0) throw ConfigError("alphas must be non-negative");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("alphas must sum to 1 (got " + std::to_string(sum) + ")");
}

WeightConfig uniform_config(int max_depth) {
  WeightConfig c;
  c.max_depth = max_depth;
  c.alphas.assign(max_depth + 1, 1.0 / (max_depth + 1));
  // make them sum to exactly 1
  double sum = std::accumulate(c.alphas.begin(), c.alphas.end(), 0.0);
  c.alphas.back() += 1.0 - sum;
  return c;
}

}  // namespace omnigraph
