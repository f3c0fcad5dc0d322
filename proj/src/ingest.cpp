#include "omnigraph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace omnigraph {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_tabs_or_ws(const std::string& line) {
  if (line.find('\t') != std::string::npos) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) out.push_back(field);
    return out;
  }
  return split_ws(line);
}

[[noreturn]] void fail_line(size_t lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

int parse_int_field(const std::string& s, size_t lineno, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_line(lineno, std::string("non-integer ") + what + " '" + s + "'");
  }
}

void finish_sentence(std::vector<DepToken>& tokens, size_t lineno,
                     std::vector<DependencyParse>& out) {
  if (tokens.empty()) return;
  int roots = 0;
  const int n = static_cast<int>(tokens.size());
  for (const auto& t : tokens) {
    if (t.head < 0 || t.head > n)
      fail_line(lineno, "head " + std::to_string(t.head) +
                            " out of range for a " + std::to_string(n) +
                            "-token sentence");
    if (t.head == 0) ++roots;
  }
  DependencyParse parse;
  parse.tokens = std::move(tokens);
  parse.flagged_roots = roots != 1;
  out.push_back(std::move(parse));
  tokens.clear();
}

}  // namespace

std::vector<std::string> DependencyParse::forms() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.form);
  return out;
}

std::vector<DependencyParse> parse_conll(std::istream& in) {
  std::vector<DependencyParse> out;
  std::vector<DepToken> tokens;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      finish_sentence(tokens, lineno, out);
      continue;
    }
    auto fields = split_tabs_or_ws(line);
    if (fields.size() < 8)
      fail_line(lineno, "expected at least 8 CoNLL columns, got " +
                            std::to_string(fields.size()));
    DepToken tok;
    tok.index = parse_int_field(fields[0], lineno, "token index");
    tok.form = fields[1];
    tok.head = parse_int_field(fields[6], lineno, "head");
    tok.relation = fields[7];
    if (tok.index != static_cast<int>(tokens.size()) + 1)
      fail_line(lineno, "token index gap: expected " +
                            std::to_string(tokens.size() + 1) + ", got " +
                            std::to_string(tok.index));
    if (tok.head == tok.index)
      fail_line(lineno, "token " + std::to_string(tok.index) +
                            " depends on itself");
    tokens.push_back(std::move(tok));
  }
  finish_sentence(tokens, lineno + 1, out);
  return out;
}

std::vector<DependencyParse> parse_conll_text(const std::string& text) {
  std::istringstream in(text);
  return parse_conll(in);
}

namespace {

void check_span(int start, int end, std::optional<int> n_tokens,
                const std::string& frame, const char* what, size_t lineno) {
  if (start < 0 || end < start)
    fail_line(lineno, "frame '" + frame + "': malformed " + what + " span [" +
                          std::to_string(start) + "," + std::to_string(end) +
                          "]");
  if (n_tokens && end >= *n_tokens)
    fail_line(lineno, "frame '" + frame + "': " + what + " span [" +
                          std::to_string(start) + "," + std::to_string(end) +
                          "] exceeds the " + std::to_string(*n_tokens) +
                          "-token sentence");
}

}  // namespace

std::vector<SentenceFrames> parse_frames(std::istream& in,
                                         const std::vector<int>* token_counts) {
  std::vector<SentenceFrames> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      fail_line(lineno, std::string("bad JSON: ") + e.what());
    }
    SentenceFrames sf;
    sf.sentence_id = j.at("sentence_id").get<std::string>();
    sf.date = j.value("date", "");
    sf.doc_id = j.value("doc_id", "");
    std::optional<int> n_tokens;
    if (token_counts && out.size() < token_counts->size())
      n_tokens = (*token_counts)[out.size()];
    for (const auto& jf : j.at("frames")) {
      FrameAnnotation f;
      f.frame_name = jf.at("name").get<std::string>();
      auto target = jf.at("target");
      f.target_start = target.at(0).get<int>();
      f.target_end = target.at(1).get<int>();
      check_span(f.target_start, f.target_end, n_tokens, f.frame_name,
                 "target", lineno);
      for (const auto& je : jf.value("elements", nlohmann::json::array())) {
        FrameElementSpan el;
        el.name = je.at("name").get<std::string>();
        el.start = je.at("span").at(0).get<int>();
        el.end = je.at("span").at(1).get<int>();
        check_span(el.start, el.end, n_tokens, f.frame_name, "element",
                   lineno);
        f.elements.push_back(std::move(el));
      }
      sf.frames.push_back(std::move(f));
    }
    out.push_back(std::move(sf));
  }
  return out;
}

std::vector<SentenceFrames> parse_frames_text(const std::string& text,
                                              const std::vector<int>* counts) {
  std::istringstream in(text);
  return parse_frames(in, counts);
}

EntityLexicon read_lexicon(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  EntityLexicon lex;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto patterns = it.value().get<std::vector<std::string>>();
    if (patterns.empty())
      throw ParseError("entity '" + it.key() + "' has no patterns");
    for (const auto& p : patterns)
      if (split_ws(p).empty())
        throw ParseError("entity '" + it.key() + "' has an empty pattern");
    lex[it.key()] = std::move(patterns);
  }
  return lex;
}

PriceSeries read_prices_csv(std::istream& in, const std::string& entity_id) {
  PriceSeries series;
  series.entity_id = entity_id;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("date", 0) == 0) continue;  // header
    auto comma = line.find(',');
    if (comma == std::string::npos) fail_line(lineno, "expected 'date,close'");
    PricePoint p;
    p.date = line.substr(0, comma);
    try {
      p.close = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      fail_line(lineno, "non-numeric close price");
    }
    if (p.close <= 0) fail_line(lineno, "close price must be positive");
    if (!series.points.empty() && series.points.back().date >= p.date)
      fail_line(lineno, "dates must be strictly increasing");
    series.points.push_back(std::move(p));
  }
  return series;
}

std::vector<EntityMention> match_entities(const std::vector<std::string>& tokens,
                                          const EntityLexicon& lexicon) {
  // pre-tokenize and lowercase all patterns
  struct Pattern {
    std::string entity_id;
    std::vector<std::string> tokens;
  };
  std::vector<Pattern> patterns;
  for (const auto& [entity, variants] : lexicon)
    for (const auto& v : variants) {
      Pattern p{entity, {}};
      for (auto& t : split_ws(v)) p.tokens.push_back(lowercase(t));
      patterns.push_back(std::move(p));
    }

  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const auto& t : tokens) lowered.push_back(lowercase(t));

  std::vector<EntityMention> out;
  size_t pos = 0;
  while (pos < tokens.size()) {
    const Pattern* best = nullptr;
    for (const auto& p : patterns) {
      if (p.tokens.size() > tokens.size() - pos) continue;
      if (best && p.tokens.size() <= best->tokens.size()) continue;
      bool match = true;
      for (size_t k = 0; k < p.tokens.size(); ++k)
        if (lowered[pos + k] != p.tokens[k]) {
          match = false;
          break;
        }
      if (match) best = &p;
    }
    if (best) {
      out.push_back({best->entity_id, static_cast<int>(pos),
                     static_cast<int>(pos + best->tokens.size()) - 1});
      pos += best->tokens.size();
    } else {
      ++pos;
    }
  }
  return out;
}

namespace {

bool spans_overlap(int a0, int a1, int b0, int b1) {
  return a0 <= b1 && b0 <= a1;
}

// Token inside the span whose head lies outside it (the span's syntactic
// head); falls back to the first span token.
int span_head_token(const DependencyParse& dep, int start, int end) {
  for (int i = start; i <= end; ++i) {
    int head = dep.tokens[i].head;           // 1-based, 0 = root
    int head0 = head - 1;                    // 0-based
    if (head == 0 || head0 < start || head0 > end) return i;
  }
  return start;
}

}  // namespace

OmniGraph build_graph(const DependencyParse& dep,
                      const std::vector<FrameAnnotation>& frames,
                      const std::vector<EntityMention>& mentions,
                      const std::string& designated_entity_id,
                      const std::string& sentence_id, bool* de_present) {
  const int n_tokens = static_cast<int>(dep.tokens.size());
  OmniGraph g;
  g.sentence_id = sentence_id;
  int next_id = 0;
  auto add_node = [&](NodeKind kind, std::string label) {
    g.nodes.push_back({next_id, kind, std::move(label)});
    return next_id++;
  };

  // Step 1: one subgraph per frame.
  std::vector<int> frame_node(frames.size());
  std::vector<int> frame_head_token(frames.size());  // 0-based
  std::vector<std::vector<int>> element_nodes(frames.size());
  for (size_t f = 0; f < frames.size(); ++f) {
    const auto& fr = frames[f];
    if (fr.target_end >= n_tokens)
      throw ParseError("frame '" + fr.frame_name +
                       "': target span exceeds sentence");
    frame_node[f] = add_node(NodeKind::FrameName, fr.frame_name);
    int head_tok = span_head_token(dep, fr.target_start, fr.target_end);
    frame_head_token[f] = head_tok;
    int target_node =
        add_node(NodeKind::FrameTarget, lowercase(dep.tokens[head_tok].form));
    g.edges.push_back({target_node, frame_node[f], EdgeKind::TargetEvokes});
    for (const auto& el : fr.elements) {
      if (el.end >= n_tokens)
        throw ParseError("frame '" + fr.frame_name + "': element '" + el.name +
                         "' span exceeds sentence");
      int el_node = add_node(NodeKind::FrameElement,
                             fr.frame_name + "." + el.name);
      g.edges.push_back({el_node, frame_node[f], EdgeKind::ElementOf});
      element_nodes[f].push_back(el_node);
    }
  }

  // Step 2: dependency relations among frame targets; a dependent frame
  // points to the frame whose target is its target's direct head.
  std::set<std::pair<int, int>> dep_edges;
  for (size_t f1 = 0; f1 < frames.size(); ++f1) {
    int head = dep.tokens[frame_head_token[f1]].head;  // 1-based
    if (head == 0) continue;
    for (size_t f2 = 0; f2 < frames.size(); ++f2) {
      if (f1 == f2) continue;
      if (frame_head_token[f2] == head - 1 &&
          frame_node[f1] != frame_node[f2] &&
          dep_edges.emplace(frame_node[f1], frame_node[f2]).second)
        g.edges.push_back(
            {frame_node[f1], frame_node[f2], EdgeKind::FrameDependency});
    }
  }

  // Step 3: entities fill (or partly fill) frame elements.
  std::vector<EntityMention> designated, others;
  for (const auto& m : mentions)
    (m.entity_id == designated_entity_id ? designated : others).push_back(m);

  auto link_entity = [&](int entity_node,
                         const std::vector<EntityMention>& spans) {
    std::set<int> linked;
    for (size_t f = 0; f < frames.size(); ++f)
      for (size_t e = 0; e < frames[f].elements.size(); ++e) {
        const auto& el = frames[f].elements[e];
        for (const auto& m : spans)
          if (spans_overlap(el.start, el.end, m.start, m.end)) {
            if (linked.insert(element_nodes[f][e]).second)
              g.edges.push_back(
                  {entity_node, element_nodes[f][e], EdgeKind::FillsRole});
            break;
          }
      }
  };

  if (!designated.empty()) {
    int de_node = add_node(NodeKind::DesignatedEntity, kDesignatedEntityLabel);
    link_entity(de_node, designated);
  }
  if (de_present) *de_present = !designated.empty();

  std::map<std::string, std::vector<EntityMention>> other_by_id;
  for (const auto& m : others) other_by_id[m.entity_id].push_back(m);
  for (const auto& [id, spans] : other_by_id) {
    int oe_node = add_node(NodeKind::OtherEntity, kOtherEntityLabel);
    link_entity(oe_node, spans);
  }

  // Step 4: lexical items inside element spans that are neither entity
  // mentions nor frame targets, deduplicated per (form, element).
  std::vector<bool> in_mention(n_tokens, false), in_target(n_tokens, false);
  for (const auto& m : mentions)
    for (int i = m.start; i <= m.end && i < n_tokens; ++i) in_mention[i] = true;
  for (const auto& fr : frames)
    for (int i = fr.target_start; i <= fr.target_end && i < n_tokens; ++i)
      in_target[i] = true;

  for (size_t f = 0; f < frames.size(); ++f)
    for (size_t e = 0; e < frames[f].elements.size(); ++e) {
      const auto& el = frames[f].elements[e];
      std::set<std::string> seen;
      for (int i = el.start; i <= el.end && i < n_tokens; ++i) {
        if (in_mention[i] || in_target[i]) continue;
        std::string form = lowercase(dep.tokens[i].form);
        if (!seen.insert(form).second) continue;
        int li = add_node(NodeKind::LexicalItem, form);
        g.edges.push_back({li, element_nodes[f][e], EdgeKind::LexicalFill});
      }
    }

  return g;
}

LabelResult label_instance(const PriceSeries& prices, const std::string& date,
                           double threshold) {
  const auto& pts = prices.points;
  auto it = std::find_if(pts.begin(), pts.end(),
                         [&](const PricePoint& p) { return p.date == date; });
  if (it == pts.end()) return {std::nullopt, "no price for " + date};
  auto next = std::next(it);
  if (next == pts.end())
    return {std::nullopt, "no next trading day after " + date};
  double r = (next->close - it->close) / it->close;
  if (r >= threshold) return {1, ""};
  if (r <= -threshold) return {-1, ""};
  return {std::nullopt, "|return| " + std::to_string(std::abs(r)) +
                            " below threshold"};
}

std::vector<Instance> build_corpus(const std::vector<DependencyParse>& parses,
                                   const std::vector<SentenceFrames>& frames,
                                   const EntityLexicon& lexicon,
                                   const PriceSeries& prices,
                                   const std::string& entity_id,
                                   BuildLog* log) {
  if (parses.size() != frames.size())
    throw ParseError("dependency and frame files disagree on sentence count (" +
                     std::to_string(parses.size()) + " vs " +
                     std::to_string(frames.size()) + ")");
  BuildLog local;
  BuildLog& bl = log ? *log : local;
  bl.sentences_total = static_cast<int>(parses.size());

  struct SentenceRecord {
    size_t input_index;
    std::string doc_id;
    OmniGraph graph;
    std::vector<std::string> tokens;
  };
  std::map<std::string, std::vector<SentenceRecord>> by_date;

  for (size_t s = 0; s < parses.size(); ++s) {
    const auto& sf = frames[s];
    if (sf.date.empty())
      throw ParseError("sentence '" + sf.sentence_id +
                       "' has no date; corpus grouping needs one");
    auto tokens = parses[s].forms();
    auto mentions = match_entities(tokens, lexicon);
    bool mentioned = std::any_of(
        mentions.begin(), mentions.end(),
        [&](const EntityMention& m) { return m.entity_id == entity_id; });
    if (!mentioned) continue;
    ++bl.sentences_with_mention;
    bool de_present = false;
    OmniGraph g = build_graph(parses[s], sf.frames, mentions, entity_id,
                              sf.sentence_id, &de_present);
    by_date[sf.date].push_back({s, sf.doc_id, std::move(g), std::move(tokens)});
  }

  std::vector<Instance> out;
  for (auto& [date, records] : by_date) {
    ++bl.days_total;
    LabelResult label = label_instance(prices, date);
    if (!label.label) {
      ++bl.days_excluded;
      bl.exclusions.push_back(date + ": " + label.reason);
      continue;
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const SentenceRecord& a, const SentenceRecord& b) {
                       return a.doc_id != b.doc_id ? a.doc_id < b.doc_id
                                                   : a.input_index < b.input_index;
                     });
    Instance inst;
    inst.entity_id = entity_id;
    inst.date = date;
    inst.label = *label.label;
    for (auto& r : records) {
      inst.graphs.push_back(std::move(r.graph));
      inst.tokens.push_back(std::move(r.tokens));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace omnigraph
