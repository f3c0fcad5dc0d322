#include "omnigraph/new_kernel.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace omnigraph {

double node_kernel(const Node& a, const Node& b, const WeightConfig& weights) {
  if (a.kind != b.kind || a.label != b.label) return 0.0;
  return weights.node_weight(a.kind);
}

double edge_kernel(const OmniGraph& ga, const Edge& a, const OmniGraph& gb,
                   const Edge& b, const WeightConfig& weights) {
  const Node* af = ga.find_node(a.from);
  const Node* at = ga.find_node(a.to);
  const Node* bf = gb.find_node(b.from);
  const Node* bt = gb.find_node(b.to);
  if (!af || !at || !bf || !bt)
    throw std::invalid_argument("edge_kernel: edge endpoint not in graph");
  if (af->kind != bf->kind || at->kind != bt->kind) return 0.0;
  if (a.kind != b.kind) return 0.0;
  return weights.edge_weight(a.kind);
}

namespace {

// Dense-index adjacency view of a graph for the pairwise walk DP.
struct GraphView {
  std::vector<const Node*> nodes;
  std::vector<std::vector<std::pair<int, EdgeKind>>> out;
  std::vector<int> anchors;  // DesignatedEntity node indices

  explicit GraphView(const OmniGraph& g) {
    std::unordered_map<int, int> index_of;
    nodes.reserve(g.nodes.size());
    for (const auto& n : g.nodes) {
      index_of[n.id] = static_cast<int>(nodes.size());
      if (n.kind == NodeKind::DesignatedEntity)
        anchors.push_back(static_cast<int>(nodes.size()));
      nodes.push_back(&n);
    }
    out.resize(nodes.size());
    for (const auto& e : g.edges)
      out[index_of.at(e.from)].push_back({index_of.at(e.to), e.kind});
  }
};

std::vector<double> basis_kernels_views(const GraphView& a, const GraphView& b,
                                        int p_max, const WeightConfig& w) {
  std::vector<double> out(p_max + 1, 0.0);

  // degree 0: group node kernels by (kind, label)
  {
    std::unordered_map<std::string, int> counts;
    for (const Node* n : a.nodes)
      ++counts[std::to_string(static_cast<int>(n->kind)) + ":" + n->label];
    for (const Node* n : b.nodes) {
      auto it = counts.find(std::to_string(static_cast<int>(n->kind)) + ":" +
                            n->label);
      if (it != counts.end()) out[0] += w.node_weight(n->kind) * it->second;
    }
  }
  if (p_max == 0) return out;

  // degrees >= 1: DP over (node in a, node in b) pair states reachable by
  // aligned walks from DesignatedEntity anchor pairs
  const double w_de = w.node_weight(NodeKind::DesignatedEntity);
  std::unordered_map<uint64_t, double> frontier;
  if (w_de > 0.0) {
    for (int u : a.anchors)
      for (int v : b.anchors)
        frontier[static_cast<uint64_t>(u) * b.nodes.size() + v] += w_de;
  }
  for (int t = 1; t <= p_max; ++t) {
    std::unordered_map<uint64_t, double> next;
    for (const auto& [key, val] : frontier) {
      int u = static_cast<int>(key / b.nodes.size());
      int v = static_cast<int>(key % b.nodes.size());
      for (const auto& [u2, k1] : a.out[u]) {
        for (const auto& [v2, k2] : b.out[v]) {
          if (k1 != k2) continue;
          const Node& nu = *a.nodes[u2];
          const Node& nv = *b.nodes[v2];
          if (nu.kind != nv.kind || nu.label != nv.label) continue;
          double contrib = val * w.edge_weight(k1) * w.node_weight(nu.kind);
          if (contrib == 0.0) continue;
          next[static_cast<uint64_t>(u2) * b.nodes.size() + v2] += contrib;
        }
      }
    }
    frontier.swap(next);
    for (const auto& [key, val] : frontier) out[t] += val;
    if (frontier.empty()) break;
  }
  return out;
}

}  // namespace

std::vector<double> basis_kernels(const OmniGraph& g1, const OmniGraph& g2,
                                  int p_max, const WeightConfig& weights) {
  if (p_max < 0) throw ConfigError("p must be non-negative");
  GraphView a(g1), b(g2);
  return basis_kernels_views(a, b, p_max, weights);
}

double basis_kernel(const OmniGraph& g1, const OmniGraph& g2, int p,
                    const WeightConfig& weights) {
  return basis_kernels(g1, g2, p, weights).back();
}

double normalize_basis(double raw, double self1, double self2) {
  double denom = std::max(self1, self2);
  if (denom <= 0.0) return 0.0;
  return raw / denom;
}

BasisKernelReport new_kernel_report(const OmniGraph& g1, const OmniGraph& g2,
                                    const WeightConfig& weights) {
  weights.validate();
  const int p = weights.max_depth;
  auto raw = basis_kernels(g1, g2, p, weights);
  auto self1 = basis_kernels(g1, g1, p, weights);
  auto self2 = basis_kernels(g2, g2, p, weights);
  BasisKernelReport report;
  for (int d = 0; d <= p; ++d) {
    double norm = normalize_basis(raw[d], self1[d], self2[d]);
    report.per_degree.push_back({d, raw[d], self1[d], self2[d], norm});
    report.interpolated += weights.alphas[d] * norm;
  }
  return report;
}

double new_kernel(const OmniGraph& g1, const OmniGraph& g2,
                  const WeightConfig& weights) {
  return new_kernel_report(g1, g2, weights).interpolated;
}

nlohmann::json BasisKernelReport::to_json() const {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& e : per_degree)
    degrees.push_back({{"degree", e.degree},
                       {"raw", e.raw},
                       {"self1", e.self1},
                       {"self2", e.self2},
                       {"normalized", e.normalized}});
  return {{"per_degree", degrees}, {"interpolated", interpolated}};
}

NewBasisGrams::NewBasisGrams(const std::vector<OmniGraph>& union_graphs,
                             const std::vector<std::string>& ids, int p_max,
                             const WeightConfig& weights) {
  const size_t n = union_graphs.size();
  std::vector<GraphView> views;
  views.reserve(n);
  for (const auto& g : union_graphs) views.emplace_back(g);

  std::vector<std::vector<double>> selfs(n);
  for (size_t i = 0; i < n; ++i)
    selfs[i] = basis_kernels_views(views[i], views[i], p_max, weights);

  normalized_.assign(p_max + 1, KernelMatrix(std::vector<std::string>(ids)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      auto raw = i == j ? selfs[i]
                        : basis_kernels_views(views[i], views[j], p_max, weights);
      for (int d = 0; d <= p_max; ++d) {
        double v = normalize_basis(raw[d], selfs[i][d], selfs[j][d]);
        normalized_[d].at(i, j) = v;
        normalized_[d].at(j, i) = v;
      }
    }
  }
}

KernelMatrix NewBasisGrams::mix(const std::vector<double>& alphas) const {
  if (alphas.empty() || alphas.size() > normalized_.size())
    throw ConfigError("alpha vector length exceeds computed degrees");
  KernelMatrix out{std::vector<std::string>(normalized_[0].instance_ids)};
  for (size_t d = 0; d < alphas.size(); ++d) {
    if (alphas[d] == 0.0) continue;
    for (size_t k = 0; k < out.values.size(); ++k)
      out.values[k] += alphas[d] * normalized_[d].values[k];
  }
  return out;
}

KernelMatrix new_gram(const std::vector<OmniGraph>& union_graphs,
                      const std::vector<std::string>& ids,
                      const WeightConfig& weights) {
  weights.validate();
  NewBasisGrams basis(union_graphs, ids, weights.max_depth, weights);
  return basis.mix(weights.alphas);
}

}  // namespace omnigraph
