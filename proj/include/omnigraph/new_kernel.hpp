#ifndef OMNIGRAPH_NEW_KERNEL_HPP
#define OMNIGRAPH_NEW_KERNEL_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "omnigraph/instance.hpp"
#include "omnigraph/kernel_matrix.hpp"

namespace omnigraph {

// Weighted Kronecker delta kernel on nodes: weight of the shared kind if
// kind and label both match, else 0.
double node_kernel(const Node& a, const Node& b, const WeightConfig& weights);

// Delta kernel on edges: matches on ordered endpoint *kinds*, not labels.
double edge_kernel(const OmniGraph& ga, const Edge& a, const OmniGraph& gb,
                   const Edge& b, const WeightConfig& weights);

// Degree-p basis kernel. p=0 sums node kernels over all node pairs.
// For p>=1 the sum runs over pairs of directed walks of length p anchored
// at DesignatedEntity nodes (one walk per graph), multiplying all p+1
// aligned node kernels and all p aligned edge kernels. Evaluated by
// dynamic programming over (node, node) pair states.
double basis_kernel(const OmniGraph& g1, const OmniGraph& g2, int p,
                    const WeightConfig& weights);

// All degrees 0..p_max in one DP pass.
std::vector<double> basis_kernels(const OmniGraph& g1, const OmniGraph& g2,
                                  int p_max, const WeightConfig& weights);

// raw / max(self1, self2); 0 when both self-values are 0 (neither graph
// has matching length-p structure).
double normalize_basis(double raw, double self1, double self2);

// Interpolation of normalized basis kernels: sum_p alpha_p * khat^p.
double new_kernel(const OmniGraph& g1, const OmniGraph& g2,
                  const WeightConfig& weights);

struct BasisKernelReport {
  struct Entry {
    int degree;
    double raw, self1, self2, normalized;
  };
  std::vector<Entry> per_degree;
  double interpolated = 0;
  nlohmann::json to_json() const;
};

BasisKernelReport new_kernel_report(const OmniGraph& g1, const OmniGraph& g2,
                                    const WeightConfig& weights);

KernelMatrix new_gram(const std::vector<OmniGraph>& union_graphs,
                      const std::vector<std::string>& ids,
                      const WeightConfig& weights);

// Precomputes normalized basis grams for every degree up to p_max for one
// weight assignment so alpha vectors can be mixed cheaply afterwards.
class NewBasisGrams {
 public:
  NewBasisGrams(const std::vector<OmniGraph>& union_graphs,
                const std::vector<std::string>& ids, int p_max,
                const WeightConfig& weights);
  const KernelMatrix& normalized(int p) const { return normalized_[p]; }
  KernelMatrix mix(const std::vector<double>& alphas) const;

 private:
  std::vector<KernelMatrix> normalized_;
};

}  // namespace omnigraph

#endif  // OMNIGRAPH_NEW_KERNEL_HPP
