#include "omnigraph/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "omnigraph/serialization.hpp"
#include "omnigraph/wl.hpp"

namespace omnigraph {

namespace {
constexpr const char* kArrow = "\xE2\x86\x92";  // U+2192
}

FeatureTable feature_presence(
    const Corpus& corpus, int h,
    const std::array<double, kNodeKindCount>& node_weights) {
  WLRelabeler relabeler;
  std::vector<WLFeatureMap> maps;
  maps.reserve(corpus.size());
  for (const auto& g : corpus.unions)
    maps.push_back(relabeler.feature_map(g, h, node_weights));

  FeatureTable table;
  // column index per (depth, compressed id), insertion-ordered per depth
  std::vector<std::map<int, size_t>> column(h + 1);
  for (int d = 0; d <= h; ++d) {
    std::set<int> seen;
    for (const auto& m : maps)
      for (const auto& [label, count] : m.counts[d]) seen.insert(label);
    for (int label : seen) {
      column[d][label] = table.features.size();
      table.features.emplace_back(d, relabeler.uncompressed(label));
    }
  }

  table.presence.assign(corpus.size(),
                        std::vector<uint8_t>(table.features.size(), 0));
  for (size_t i = 0; i < maps.size(); ++i)
    for (int d = 0; d <= h; ++d)
      for (const auto& [label, count] : maps[i].counts[d])
        table.presence[i][column[d][label]] = 1;
  return table;
}

double mutual_information(int n_pp, int n_pn, int n_ap, int n_an) {
  const double n = n_pp + n_pn + n_ap + n_an;
  if (n <= 0) return 0.0;
  const double cells[2][2] = {{double(n_pp), double(n_pn)},
                              {double(n_ap), double(n_an)}};
  const double row[2] = {cells[0][0] + cells[0][1], cells[1][0] + cells[1][1]};
  const double col[2] = {cells[0][0] + cells[1][0], cells[0][1] + cells[1][1]};
  double mi = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double joint = cells[r][c] / n;
      if (joint <= 0) continue;  // 0 log 0 = 0
      mi += joint * std::log2(joint * n * n / (row[r] * col[c]));
    }
  return std::max(mi, 0.0);
}

double mutual_information(const std::vector<uint8_t>& presence,
                          const std::vector<int>& labels) {
  if (presence.size() != labels.size())
    throw ConfigError("presence column and labels differ in length");
  int n_pp = 0, n_pn = 0, n_ap = 0, n_an = 0;
  for (size_t i = 0; i < presence.size(); ++i) {
    if (presence[i])
      (labels[i] == 1 ? n_pp : n_pn)++;
    else
      (labels[i] == 1 ? n_ap : n_an)++;
  }
  return mutual_information(n_pp, n_pn, n_ap, n_an);
}

std::vector<RankedFeature> rank_features(
    const Corpus& corpus, int h,
    const std::array<double, kNodeKindCount>& node_weights, size_t top_k,
    int min_support) {
  FeatureTable table = feature_presence(corpus, h, node_weights);
  const size_t n = corpus.size();

  std::vector<RankedFeature> ranked;
  for (size_t f = 0; f < table.features.size(); ++f) {
    RankedFeature rf;
    rf.depth = table.features[f].first;
    rf.feature = table.features[f].second;
    for (size_t i = 0; i < n; ++i)
      if (table.presence[i][f])
        (corpus.labels[i] == 1 ? rf.support_pos : rf.support_neg)++;
    if (rf.support_pos + rf.support_neg < min_support) continue;
    int pos = 0;
    for (int l : corpus.labels)
      if (l == 1) ++pos;
    rf.mi = mutual_information(rf.support_pos, rf.support_neg,
                               pos - rf.support_pos,
                               static_cast<int>(n) - pos - rf.support_neg);
    ranked.push_back(std::move(rf));
  }

  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedFeature& a, const RankedFeature& b) {
                     if (a.mi != b.mi) return a.mi > b.mi;
                     if (a.depth != b.depth) return a.depth < b.depth;
                     return a.feature < b.feature;
                   });
  if (ranked.size() > top_k) ranked.resize(top_k);
  return ranked;
}

std::string ranking_to_tsv(const std::vector<RankedFeature>& ranking) {
  std::ostringstream out;
  out << "rank\tmi\tsupport_pos\tsupport_neg\tdepth\tfeature\n";
  char mi[32];
  for (size_t i = 0; i < ranking.size(); ++i) {
    std::snprintf(mi, sizeof(mi), "%.6f", ranking[i].mi);
    out << (i + 1) << "\t" << mi << "\t" << ranking[i].support_pos << "\t"
        << ranking[i].support_neg << "\t" << ranking[i].depth << "\t"
        << ranking[i].feature << "\n";
  }
  return out.str();
}

namespace {

// Unfolding tree parsed back out of an uncompressed multiset-label string:
// node := base (ARROW '{' node (',' node)* '}')*
struct FeatureNode {
  std::string base;  // "Kind:Label"
  std::vector<FeatureNode> children;  // from the final arrow group
};

struct FeatureParser {
  const std::string& s;
  size_t pos = 0;

  explicit FeatureParser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed feature string at byte " +
                     std::to_string(pos) + ": " + what);
  }

  bool at_arrow() const {
    return s.compare(pos, 3, kArrow) == 0;
  }

  FeatureNode parse_node() {
    FeatureNode node;
    size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != '}' && !at_arrow())
      ++pos;
    node.base = s.substr(start, pos - start);
    if (node.base.empty()) fail("empty node label");
    while (at_arrow()) {
      pos += 3;
      if (pos >= s.size() || s[pos] != '{') fail("expected '{' after arrow");
      ++pos;
      std::vector<FeatureNode> group;
      group.push_back(parse_node());
      while (pos < s.size() && s[pos] == ',') {
        ++pos;
        group.push_back(parse_node());
      }
      if (pos >= s.size() || s[pos] != '}') fail("expected '}'");
      ++pos;
      // earlier groups are lower-iteration history already implied by the
      // children of the final group
      node.children = std::move(group);
    }
    return node;
  }
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string shape_attrs(const std::string& base) {
  auto colon = base.find(':');
  std::string kind_name = colon == std::string::npos ? base
                                                     : base.substr(0, colon);
  auto kind = node_kind_from_string(kind_name);
  if (!kind) throw ParseError("unknown node kind '" + kind_name + "'");
  switch (*kind) {
    case NodeKind::FrameName:
      return "shape=box";
    case NodeKind::FrameElement:
      return "shape=diamond";
    case NodeKind::DesignatedEntity:
    case NodeKind::OtherEntity:
      return "shape=ellipse";
    case NodeKind::FrameTarget:
      return "shape=box, style=rounded";
    case NodeKind::LexicalItem:
      return "shape=box, style=dashed";
  }
  throw ParseError("unknown node kind '" + kind_name + "'");
}

int emit_node(std::ostringstream& out, const FeatureNode& node, int& next_id) {
  int id = next_id++;
  out << "  n" << id << " [label=\"" << dot_escape(node.base) << "\", "
      << shape_attrs(node.base) << "];\n";
  for (const auto& child : node.children) {
    int cid = emit_node(out, child, next_id);
    out << "  n" << id << " -> n" << cid << ";\n";
  }
  return id;
}

}  // namespace

std::string feature_to_dot(const std::string& feature,
                           const std::string& graph_name) {
  FeatureParser parser(feature);
  FeatureNode root = parser.parse_node();
  if (parser.pos != feature.size()) parser.fail("trailing characters");

  std::ostringstream out;
  out << "digraph \"" << dot_escape(graph_name) << "\" {\n";
  int next_id = 0;
  emit_node(out, root, next_id);
  out << "}\n";
  return out.str();
}

}  // namespace omnigraph
