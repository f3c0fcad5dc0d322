#ifndef OMNIGRAPH_INGEST_HPP
#define OMNIGRAPH_INGEST_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omnigraph/instance.hpp"
#include "omnigraph/serialization.hpp"

namespace omnigraph {

struct DepToken {
  int index = 0;  // 1-based
  std::string form;
  int head = 0;  // 0 = root
  std::string relation;
};

struct DependencyParse {
  std::vector<DepToken> tokens;
  // true when the sentence does not have exactly one root
  bool flagged_roots = false;

  std::vector<std::string> forms() const;
};

struct FrameElementSpan {
  std::string name;
  int start = 0, end = 0;  // 0-based token indices, inclusive
};

struct FrameAnnotation {
  std::string frame_name;
  int target_start = 0, target_end = 0;
  std::vector<FrameElementSpan> elements;
};

struct SentenceFrames {
  std::string sentence_id;
  std::vector<FrameAnnotation> frames;
  // carried by sentence records for corpus grouping
  std::string date;
  std::string doc_id;
};

// entity_id -> case-insensitive literal surface-form variants
using EntityLexicon = std::map<std::string, std::vector<std::string>>;

struct PricePoint {
  std::string date;  // ISO-8601 trading date
  double close = 0;
};

struct PriceSeries {
  std::string entity_id;
  std::vector<PricePoint> points;  // dates strictly increasing
};

struct EntityMention {
  std::string entity_id;
  int start = 0, end = 0;  // token span, inclusive
};

// CoNLL-X style TSV: index, form, lemma, cpos, pos, feats, head, deprel;
// only index/form/head/deprel are read. Blank line separates sentences.
std::vector<DependencyParse> parse_conll(std::istream& in);
std::vector<DependencyParse> parse_conll_text(const std::string& text);

// JSON Lines, one sentence per line:
// {"sentence_id": s, "frames": [{"name": n, "target": [a,b],
//   "elements": [{"name": e, "span": [a,b]}]}], "date": d?, "doc_id": i?}
// token_counts, when given, validates spans per line (by order).
std::vector<SentenceFrames> parse_frames(
    std::istream& in, const std::vector<int>* token_counts = nullptr);
std::vector<SentenceFrames> parse_frames_text(
    const std::string& text, const std::vector<int>* token_counts = nullptr);

EntityLexicon read_lexicon(std::istream& in);
PriceSeries read_prices_csv(std::istream& in, const std::string& entity_id);

// Maximal non-overlapping case-insensitive matches; the longest pattern
// wins at a position, scanning left to right.
std::vector<EntityMention> match_entities(const std::vector<std::string>& tokens,
                                          const EntityLexicon& lexicon);

// Four-step OmniGraph construction for one sentence. If the designated
// entity is not mentioned, the graph is built without a DE node and
// *de_present is set to false.
OmniGraph build_graph(const DependencyParse& dep,
                      const std::vector<FrameAnnotation>& frames,
                      const std::vector<EntityMention>& mentions,
                      const std::string& designated_entity_id,
                      const std::string& sentence_id,
                      bool* de_present = nullptr);

struct LabelResult {
  std::optional<int> label;  // empty means excluded
  std::string reason;        // set when excluded
};

// Next-trading-day return vs. threshold: +1 if r >= t, -1 if r <= -t,
// excluded when |r| < t or a date is missing.
LabelResult label_instance(const PriceSeries& prices, const std::string& date,
                           double threshold = 0.02);

struct BuildLog {
  int sentences_total = 0;
  int sentences_with_mention = 0;
  int days_total = 0;
  int days_excluded = 0;
  std::vector<std::string> exclusions;  // "date: reason"
};

// One Instance per (entity, day) with at least one mention and a
// non-excluded label; forest ordered by (date, doc_id, input index).
std::vector<Instance> build_corpus(const std::vector<DependencyParse>& parses,
                                   const std::vector<SentenceFrames>& frames,
                                   const EntityLexicon& lexicon,
                                   const PriceSeries& prices,
                                   const std::string& entity_id,
                                   BuildLog* log = nullptr);

}  // namespace omnigraph

#endif  // OMNIGRAPH_INGEST_HPP
