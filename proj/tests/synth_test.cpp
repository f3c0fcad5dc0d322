#include <sstream>

#include "doctest.h"
#include "omnigraph/analysis.hpp"
#include "omnigraph/learn.hpp"
#include "omnigraph/serialization.hpp"
#include "omnigraph/synth.hpp"
#include "omnigraph/wl.hpp"

using namespace omnigraph;

TEST_CASE("spec validation") {
  PlantSpec spec;
  spec.validate();
  SUBCASE("probability ordering") {
    spec.p_minus = 0.8;
    spec.p_plus = 0.2;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
  }
  SUBCASE("equal probabilities are allowed") {
    spec.p_minus = spec.p_plus = 0.5;
    spec.validate();
  }
  SUBCASE("sentence range") {
    spec.min_sentences = 5;
    spec.max_sentences = 4;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
  }
  SUBCASE("distractor inventory bound") {
    spec.n_distractor_frames = 10000;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
  }
}

TEST_CASE("generation is byte-identical per seed") {
  PlantSpec spec;
  spec.seed = 77;
  auto a = generate(spec, 30);
  auto b = generate(spec, 30);
  std::ostringstream sa, sb;
  write_corpus(sa, a.instances);
  write_corpus(sb, b.instances);
  CHECK(sa.str() == sb.str());
  CHECK(a.manifest == b.manifest);

  spec.seed = 78;
  auto c = generate(spec, 30);
  std::ostringstream sc;
  write_corpus(sc, c.instances);
  CHECK(sa.str() != sc.str());
}

TEST_CASE("class priors are exact and graphs valid") {
  PlantSpec spec;
  spec.seed = 5;
  spec.pos_fraction = 0.3;
  auto result = generate(spec, 50);
  int pos = 0;
  for (const auto& inst : result.instances) {
    pos += inst.label == 1;
    CHECK(inst.graphs.size() >= 4);
    CHECK(inst.graphs.size() <= 7);
    CHECK(inst.tokens.size() == inst.graphs.size());
    for (const auto& g : inst.graphs) CHECK(validate_graph(g).empty());
  }
  CHECK(pos == 15);
  CHECK(result.manifest["n_pos"] == 15);
  CHECK(result.manifest["planted_feature"] == result.planted_feature);
}

TEST_CASE("p_plus=1, p_minus=0 separates the classes perfectly") {
  PlantSpec spec;
  spec.seed = 9;
  spec.p_plus = 1.0;
  spec.p_minus = 0.0;
  SynthResult result = generate(spec, 40);
  Corpus corpus = Corpus::from_instances(result.instances);
  FeatureTable table = feature_presence(corpus, result.planted_depth,
                                        unit_node_weights());
  size_t column = table.features.size();
  for (size_t f = 0; f < table.features.size(); ++f)
    if (table.features[f].second == result.planted_feature &&
        table.features[f].first == result.planted_depth)
      column = f;
  REQUIRE(column < table.features.size());
  for (size_t i = 0; i < corpus.size(); ++i)
    CHECK(static_cast<int>(table.presence[i][column]) ==
          (corpus.labels[i] == 1 ? 1 : 0));
}

TEST_CASE("p_plus == p_minus makes the planted feature uninformative") {
  // MI should sit at sampling-noise level across seeds; with presence
  // independent of the label, E[MI] ~ 1/(2 n ln 2) per df. Use 3 sigma
  // over 20 seeds on the mean.
  const int n = 40;
  double total = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    PlantSpec spec;
    spec.seed = seed;
    spec.p_plus = spec.p_minus = 0.5;
    SynthResult result = generate(spec, n);
    Corpus corpus = Corpus::from_instances(result.instances);
    FeatureTable table = feature_presence(corpus, result.planted_depth,
                                          unit_node_weights());
    for (size_t f = 0; f < table.features.size(); ++f)
      if (table.features[f].second == result.planted_feature) {
        std::vector<uint8_t> col(corpus.size());
        for (size_t i = 0; i < corpus.size(); ++i)
          col[i] = table.presence[i][f];
        total += mutual_information(col, corpus.labels);
      }
  }
  // chi-square approximation: MI*2n ln2 ~ chi2(1); mean over 20 seeds of
  // n=40 instances stays well under 0.1 bits
  CHECK(total / 20.0 < 0.1);
}

TEST_CASE("sentences mix planted and distractor structure") {
  PlantSpec spec;
  spec.seed = 11;
  auto result = generate(spec, 20);
  bool saw_distractor = false, saw_planted = false;
  for (const auto& inst : result.instances)
    for (const auto& g : inst.graphs) {
      int frame_nodes = 0;
      for (const auto& n : g.nodes) frame_nodes += n.kind == NodeKind::FrameName;
      if (frame_nodes > 3) saw_distractor = true;
      if (frame_nodes == 3) saw_planted = true;
    }
  CHECK(saw_distractor);
  CHECK(saw_planted);
}

TEST_CASE("argument validation") {
  PlantSpec spec;
  CHECK_THROWS_AS(generate(spec, 0), ConfigError);
}
