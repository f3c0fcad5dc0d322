#ifndef OMNIGRAPH_SYNTH_HPP
#define OMNIGRAPH_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "omnigraph/instance.hpp"

namespace omnigraph {

// Planted-pattern corpus generator. Every sentence carries a fixed frame
// skeleton (Statement / Convey_importance / Capability with a designated
// entity filling Statement.Speaker). A planted sentence links the frames
// Capability->Convey_importance->Statement and lets the entity fill
// Convey_importance.Message; an unplanted sentence routes the same edge
// budget to random distractor frames so no single distractor feature
// correlates with the label.
struct PlantSpec {
  // per-sentence plant probability given the instance label
  double p_plus = 0.9;
  double p_minus = 0.1;
  double pos_fraction = 0.5;  // exact class prior, applied by counting
  int min_sentences = 4;
  int max_sentences = 7;
  int n_distractor_frames = 40;
  int vocab_size = 50;         // token vocabulary for the BOW sequences
  int tokens_per_sentence = 12;
  uint64_t seed = 0;

  // p_minus may equal p_plus (degenerate, label-independent planting).
  void validate() const;
  nlohmann::json to_json() const;
};

struct SynthResult {
  std::vector<Instance> instances;
  std::string planted_feature;  // uncompressed WL string, ground truth
  int planted_depth = 1;
  nlohmann::json manifest;
};

SynthResult generate(const PlantSpec& spec, int n_instances);

}  // namespace omnigraph

#endif  // OMNIGRAPH_SYNTH_HPP
