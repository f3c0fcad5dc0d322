#ifndef OMNIGRAPH_LEARN_HPP
#define OMNIGRAPH_LEARN_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "omnigraph/instance.hpp"
#include "omnigraph/kernel_matrix.hpp"
#include "omnigraph/svm.hpp"

namespace omnigraph {

enum class KernelType { WL, NEW };
KernelType kernel_type_from_string(const std::string& s);
const char* to_string(KernelType t);

// Instances with their precomputed union graphs.
struct Corpus {
  std::vector<Instance> instances;
  std::vector<OmniGraph> unions;
  std::vector<int> labels;
  std::vector<std::string> ids;

  static Corpus from_instances(std::vector<Instance> instances);
  size_t size() const { return instances.size(); }
};

struct GridSpec {
  std::vector<int> max_depths{0, 1, 2, 3};
  std::vector<double> node_weight_candidates{0, 1};
  std::vector<double> edge_weight_candidates{1};
  double alpha_step = 0.25;
  std::vector<double> C_candidates{0.1, 1, 10};

  void validate() const;
};

struct GridResult {
  WeightConfig config;
  double C = 1;
  double dev_accuracy = 0;
  size_t configs_evaluated = 0;
  nlohmann::json to_json() const;
};

// Deterministic stratified 80/20 split; returns (train, test) indices.
std::pair<std::vector<size_t>, std::vector<size_t>> split_80_20(
    const std::vector<int>& labels, uint64_t seed);

// LOO-CV over the 80% split for every configuration; ties broken by
// (smaller max_depth, fewer enabled node kinds, lexicographic encoding).
GridResult grid_search(const Corpus& corpus, const GridSpec& spec,
                       KernelType kernel, uint64_t split_seed, int jobs = 1);

struct EvalReport {
  double accuracy = 0;
  double baseline_accuracy = 0;  // majority class of the train split
  double precision_pos = 0, recall_pos = 0;
  double precision_neg = 0, recall_neg = 0;
  int tp = 0, fp = 0, tn = 0, fn = 0;
  int test_size = 0;
  nlohmann::json config;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

EvalReport evaluate(const Corpus& corpus, const WeightConfig& config, double C,
                    KernelType kernel, uint64_t split_seed);

// Gram matrix for the chosen kernel over the whole corpus.
KernelMatrix corpus_gram(const Corpus& corpus, const WeightConfig& config,
                         KernelType kernel);

// 1..n_max gram count vectors over all forest sentences.
using BowVector = std::unordered_map<std::string, double>;
std::vector<BowVector> bow_features(const Corpus& corpus, int n_max = 3);
// Cosine-normalized linear kernel over the n-gram counts.
KernelMatrix bow_gram(const Corpus& corpus, int n_max = 3);

// SVM on the BOW kernel with C selected by LOO-CV on the train split.
EvalReport evaluate_bow(const Corpus& corpus, const std::vector<double>& Cs,
                        uint64_t split_seed);

}  // namespace omnigraph

#endif  // OMNIGRAPH_LEARN_HPP
