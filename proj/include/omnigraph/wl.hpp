#ifndef OMNIGRAPH_WL_HPP
#define OMNIGRAPH_WL_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "omnigraph/instance.hpp"
#include "omnigraph/kernel_matrix.hpp"

namespace omnigraph {

// Per-iteration histogram of compressed multiset labels. counts[i] covers
// iteration i; total count at each iteration equals the (weighted) node
// count of the graph.
struct WLFeatureMap {
  std::vector<std::map<int, int>> counts;
};

// Weisfeiler-Lehman relabeler with a dictionary shared across every graph
// it processes. Compression assigns integers in insertion order, so runs
// are reproducible bit-exactly. Iteration-0 label of a node is its
// (kind, label) pair; iteration i appends the lexicographically sorted
// out-neighbor labels of iteration i-1. A node with no out-neighbors
// keeps its previous label.
class WLRelabeler {
 public:
  // node_weights must be 0/1; weight-0 kinds are deleted with their
  // incident edges before relabeling. Throws ConfigError otherwise.
  WLFeatureMap feature_map(const OmniGraph& g, int h,
                           const std::array<double, kNodeKindCount>& node_weights);

  // Human-readable multiset-label string for a compressed label.
  const std::string& uncompressed(int label_id) const {
    return uncompressed_[static_cast<size_t>(label_id)];
  }
  size_t dictionary_size() const { return uncompressed_.size(); }

 private:
  int intern(const std::string& key, std::string uncompressed);
  std::unordered_map<std::string, int> dict_;
  std::vector<std::string> uncompressed_;
};

// Dot product over all iterations; equals the WL kernel when both maps
// come from the same relabeler.
double wl_dot(const WLFeatureMap& a, const WLFeatureMap& b);
// Dot product of iteration i only.
double wl_dot_iteration(const WLFeatureMap& a, const WLFeatureMap& b, int i);

double wl_kernel(const OmniGraph& g1, const OmniGraph& g2, int h,
                 const std::array<double, kNodeKindCount>& node_weights);

KernelMatrix wl_gram(const std::vector<OmniGraph>& union_graphs,
                     const std::vector<std::string>& ids, int h,
                     const std::array<double, kNodeKindCount>& node_weights);

// {"0": {"label string": count, ...}, ...} with uncompressed label strings.
nlohmann::json feature_map_to_json(const WLFeatureMap& map,
                                   const WLRelabeler& relabeler);

inline std::array<double, kNodeKindCount> unit_node_weights() {
  return {1, 1, 1, 1, 1, 1};
}

}  // namespace omnigraph

#endif  // OMNIGRAPH_WL_HPP
