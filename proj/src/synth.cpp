#include "omnigraph/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "omnigraph/wl.hpp"

namespace omnigraph {

namespace {

// Nominal FrameNet-style frame names for distractor structure. The first
// three pattern frames are deliberately absent.
const std::vector<std::string>& frame_inventory() {
  static const std::vector<std::string> names = {
      "Leadership",       "Assistance",       "Change_position_on_a_scale",
      "Awareness",        "Becoming",         "Body_movement",
      "Categorization",   "Causation",        "Certainty",
      "Commerce_buy",     "Commerce_sell",    "Communication",
      "Competition",      "Completeness",     "Coming_to_believe",
      "Deciding",         "Desiring",         "Evaluative_comparison",
      "Evidence",         "Expectation",      "Experiencer_focus",
      "Getting",          "Giving",           "Grasp",
      "Importance",       "Judgment",         "Likelihood",
      "Memory",           "Motion",           "Opinion",
      "Perception_active", "Performing_arts", "Possession",
      "Progress",         "Questioning",      "Request",
      "Reasoning",        "Seeking",          "Supply",
      "Undergo_change"};
  return names;
}

struct SentenceBuilder {
  OmniGraph g;
  int next_id = 0;

  int add_node(NodeKind kind, std::string label) {
    g.nodes.push_back({next_id, kind, std::move(label)});
    return next_id++;
  }
  void add_edge(int from, int to, EdgeKind kind) {
    g.edges.push_back({from, to, kind});
  }
};

// The shared skeleton plus either the planted pattern or distractor
// wiring. Returns the sentence graph.
OmniGraph make_sentence(const std::string& sentence_id, bool planted,
                        const std::vector<std::string>& distractors,
                        std::mt19937_64& rng) {
  SentenceBuilder b;
  b.g.sentence_id = sentence_id;

  int stmt = b.add_node(NodeKind::FrameName, "Statement");
  int stmt_ft = b.add_node(NodeKind::FrameTarget, "said");
  int speaker = b.add_node(NodeKind::FrameElement, "Statement.Speaker");
  b.add_edge(stmt_ft, stmt, EdgeKind::TargetEvokes);
  b.add_edge(speaker, stmt, EdgeKind::ElementOf);

  int ci = b.add_node(NodeKind::FrameName, "Convey_importance");
  int ci_ft = b.add_node(NodeKind::FrameTarget, "underscores");
  int message = b.add_node(NodeKind::FrameElement, "Convey_importance.Message");
  b.add_edge(ci_ft, ci, EdgeKind::TargetEvokes);
  b.add_edge(message, ci, EdgeKind::ElementOf);

  int cap = b.add_node(NodeKind::FrameName, "Capability");
  int cap_ft = b.add_node(NodeKind::FrameTarget, "ability");
  b.add_edge(cap_ft, cap, EdgeKind::TargetEvokes);

  int de = b.add_node(NodeKind::DesignatedEntity, kDesignatedEntityLabel);
  b.add_edge(de, speaker, EdgeKind::FillsRole);

  if (planted) {
    b.add_edge(cap, ci, EdgeKind::FrameDependency);
    b.add_edge(ci, stmt, EdgeKind::FrameDependency);
    b.add_edge(de, message, EdgeKind::FillsRole);
  } else {
    std::uniform_int_distribution<size_t> pick(0, distractors.size() - 1);
    // same edge budget, routed to random distractor frames
    int d1 = b.add_node(NodeKind::FrameName, distractors[pick(rng)]);
    b.add_edge(cap, d1, EdgeKind::FrameDependency);
    int d2 = b.add_node(NodeKind::FrameName, distractors[pick(rng)]);
    b.add_edge(ci, d2, EdgeKind::FrameDependency);
    const std::string& d3_name = distractors[pick(rng)];
    int d3 = b.add_node(NodeKind::FrameName, d3_name);
    int d3_fe = b.add_node(NodeKind::FrameElement, d3_name + ".Topic");
    b.add_edge(d3_fe, d3, EdgeKind::ElementOf);
    b.add_edge(de, d3_fe, EdgeKind::FillsRole);
  }
  return b.g;
}

// Ground truth from the relabeler itself: the designated entity's depth-1
// multiset label in a distractor-free planted sentence.
std::pair<std::string, int> planted_feature_string() {
  std::mt19937_64 rng(0);
  OmniGraph g = make_sentence("template", true, frame_inventory(), rng);
  WLRelabeler relabeler;
  WLFeatureMap map = relabeler.feature_map(g, 1, unit_node_weights());
  const std::string prefix = std::string(to_string(NodeKind::DesignatedEntity)) + ":";
  for (const auto& [label, count] : map.counts[1]) {
    const std::string& s = relabeler.uncompressed(label);
    if (s.rfind(prefix, 0) == 0 && s.find("\xE2\x86\x92") != std::string::npos)
      return {s, 1};
  }
  throw ConfigError("planted template produced no designated-entity feature");
}

}  // namespace

void PlantSpec::validate() const {
  if (!(p_minus >= 0 && p_minus <= p_plus && p_plus <= 1))
    throw ConfigError("need 0 <= p_minus <= p_plus <= 1");
  if (pos_fraction < 0 || pos_fraction > 1)
    throw ConfigError("pos_fraction must lie in [0,1]");
  if (min_sentences < 1 || max_sentences < min_sentences)
    throw ConfigError("need 1 <= min_sentences <= max_sentences");
  if (n_distractor_frames < 1 ||
      n_distractor_frames > static_cast<int>(frame_inventory().size()))
    throw ConfigError("n_distractor_frames out of range (max " +
                      std::to_string(frame_inventory().size()) + ")");
  if (vocab_size < 1 || tokens_per_sentence < 0)
    throw ConfigError("bad vocabulary parameters");
}

nlohmann::json PlantSpec::to_json() const {
  return {{"p_plus", p_plus},
          {"p_minus", p_minus},
          {"pos_fraction", pos_fraction},
          {"min_sentences", min_sentences},
          {"max_sentences", max_sentences},
          {"n_distractor_frames", n_distractor_frames},
          {"vocab_size", vocab_size},
          {"tokens_per_sentence", tokens_per_sentence},
          {"seed", seed}};
}

SynthResult generate(const PlantSpec& spec, int n_instances) {
  spec.validate();
  if (n_instances < 1) throw ConfigError("n_instances must be positive");

  std::mt19937_64 rng(spec.seed);
  std::vector<std::string> distractors(
      frame_inventory().begin(),
      frame_inventory().begin() + spec.n_distractor_frames);

  // exact class prior by counting
  int n_pos = static_cast<int>(
      std::llround(spec.pos_fraction * static_cast<double>(n_instances)));
  std::vector<int> labels(n_instances, -1);
  std::fill(labels.begin(), labels.begin() + n_pos, 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::uniform_int_distribution<int> n_sentences_dist(spec.min_sentences,
                                                      spec.max_sentences);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> token_dist(0, spec.vocab_size - 1);

  SynthResult out;
  out.instances.reserve(n_instances);
  char buf[32];
  for (int i = 0; i < n_instances; ++i) {
    Instance inst;
    inst.entity_id = "SYNTH";
    std::snprintf(buf, sizeof(buf), "2020-%02d-%02d", 1 + i / 28, 1 + i % 28);
    inst.date = buf;
    inst.label = labels[i];
    double p_plant = labels[i] == 1 ? spec.p_plus : spec.p_minus;
    int n_sent = n_sentences_dist(rng);
    for (int s = 0; s < n_sent; ++s) {
      bool planted = unit(rng) < p_plant;
      std::string sid = inst.id() + ":s" + std::to_string(s);
      OmniGraph g = make_sentence(sid, planted, distractors, rng);
      auto violations = validate_graph(g);
      if (!violations.empty()) throw ValidationError(std::move(violations));
      inst.graphs.push_back(std::move(g));
      // label-independent token noise for the BOW baseline
      std::vector<std::string> toks;
      toks.reserve(spec.tokens_per_sentence);
      for (int t = 0; t < spec.tokens_per_sentence; ++t)
        toks.push_back("tok" + std::to_string(token_dist(rng)));
      inst.tokens.push_back(std::move(toks));
    }
    out.instances.push_back(std::move(inst));
  }

  auto [feature, depth] = planted_feature_string();
  out.planted_feature = feature;
  out.planted_depth = depth;
  out.manifest = {{"spec", spec.to_json()},
                  {"n_instances", n_instances},
                  {"n_pos", n_pos},
                  {"planted_feature", out.planted_feature},
                  {"planted_depth", out.planted_depth}};
  return out;
}

}  // namespace omnigraph
