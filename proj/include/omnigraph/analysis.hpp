#ifndef OMNIGRAPH_ANALYSIS_HPP
#define OMNIGRAPH_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "omnigraph/learn.hpp"

namespace omnigraph {

// WL multiset-label feature at a fixed iteration with its MI score.
struct RankedFeature {
  std::string feature;  // uncompressed multiset-label string
  int depth = 0;        // WL iteration the feature belongs to
  int support_pos = 0;  // +1 instances containing it
  int support_neg = 0;
  double mi = 0;  // bits
};

// Binary presence per instance of every WL feature seen in the corpus.
struct FeatureTable {
  // (depth, uncompressed string), insertion-ordered per depth
  std::vector<std::pair<int, std::string>> features;
  std::vector<std::vector<uint8_t>> presence;  // [instance][feature]
};

FeatureTable feature_presence(
    const Corpus& corpus, int h,
    const std::array<double, kNodeKindCount>& node_weights);

// Empirical MI in bits from the 2x2 contingency table
// (present&pos, present&neg, absent&pos, absent&neg); 0 log 0 = 0.
double mutual_information(int n_pp, int n_pn, int n_ap, int n_an);
double mutual_information(const std::vector<uint8_t>& presence,
                          const std::vector<int>& labels);

// Descending MI; ties by (lower depth, lexicographic feature string).
// Features occurring in fewer than min_support instances are dropped.
std::vector<RankedFeature> rank_features(
    const Corpus& corpus, int h,
    const std::array<double, kNodeKindCount>& node_weights, size_t top_k,
    int min_support = 2);

// rank, MI, support+, support-, depth, feature string
std::string ranking_to_tsv(const std::vector<RankedFeature>& ranking);

// DOT digraph of the feature's unfolding tree; node shapes by kind.
// Throws ParseError on a malformed feature string.
std::string feature_to_dot(const std::string& feature,
                           const std::string& graph_name = "feature");

}  // namespace omnigraph

#endif  // OMNIGRAPH_ANALYSIS_HPP
