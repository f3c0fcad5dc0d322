#include "omnigraph/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace omnigraph {

namespace {
constexpr std::array<const char*, kNodeKindCount> kNodeKindNames = {
    "FrameName",       "FrameTarget", "FrameElement",
    "DesignatedEntity", "OtherEntity", "LexicalItem"};
constexpr std::array<const char*, kEdgeKindCount> kEdgeKindNames = {
    "TargetEvokes", "ElementOf", "FillsRole", "FrameDependency", "LexicalFill"};
}  // namespace

const char* to_string(NodeKind k) { return kNodeKindNames[static_cast<int>(k)]; }
const char* to_string(EdgeKind k) { return kEdgeKindNames[static_cast<int>(k)]; }

std::optional<NodeKind> node_kind_from_string(const std::string& s) {
  for (int i = 0; i < kNodeKindCount; ++i)
    if (s == kNodeKindNames[i]) return static_cast<NodeKind>(i);
  return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from_string(const std::string& s) {
  for (int i = 0; i < kEdgeKindCount; ++i)
    if (s == kEdgeKindNames[i]) return static_cast<EdgeKind>(i);
  return std::nullopt;
}

bool edge_kind_allows(EdgeKind kind, NodeKind from, NodeKind to) {
  switch (kind) {
    case EdgeKind::TargetEvokes:
      return from == NodeKind::FrameTarget && to == NodeKind::FrameName;
    case EdgeKind::ElementOf:
      return from == NodeKind::FrameElement && to == NodeKind::FrameName;
    case EdgeKind::FillsRole:
      return (from == NodeKind::DesignatedEntity ||
              from == NodeKind::OtherEntity) &&
             to == NodeKind::FrameElement;
    case EdgeKind::FrameDependency:
      return from == NodeKind::FrameName && to == NodeKind::FrameName;
    case EdgeKind::LexicalFill:
      return from == NodeKind::LexicalItem && to == NodeKind::FrameElement;
  }
  return false;
}

std::optional<EdgeKind> edge_kind_for(NodeKind from, NodeKind to) {
  for (int i = 0; i < kEdgeKindCount; ++i) {
    auto kind = static_cast<EdgeKind>(i);
    if (edge_kind_allows(kind, from, to)) return kind;
  }
  return std::nullopt;
}

const Node* OmniGraph::find_node(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("graph failed validation (" +
                         std::to_string(violations.size()) + " violations)"),
      report(std::move(violations)) {}

std::vector<std::string> validate_graph(const OmniGraph& g) {
  std::vector<std::string> out;
  std::unordered_map<int, const Node*> by_id;
  for (const auto& n : g.nodes) {
    if (!by_id.emplace(n.id, &n).second)
      out.push_back("duplicate node id " + std::to_string(n.id));
    if (n.label.empty())
      out.push_back("node " + std::to_string(n.id) + " has empty label");
    if (n.kind == NodeKind::DesignatedEntity && n.label != kDesignatedEntityLabel)
      out.push_back("node " + std::to_string(n.id) +
                    " is DesignatedEntity but labeled '" + n.label + "'");
    if (n.kind == NodeKind::OtherEntity && n.label != kOtherEntityLabel)
      out.push_back("node " + std::to_string(n.id) +
                    " is OtherEntity but labeled '" + n.label + "'");
  }

  std::set<std::tuple<int, int, int>> seen_edges;
  std::unordered_map<int, int> target_evokes_out, element_of_out;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    const std::string tag = "edge #" + std::to_string(i) + " (" +
                            std::to_string(e.from) + "->" +
                            std::to_string(e.to) + " " + to_string(e.kind) + ")";
    auto from_it = by_id.find(e.from);
    auto to_it = by_id.find(e.to);
    if (from_it == by_id.end()) out.push_back(tag + ": unknown source node");
    if (to_it == by_id.end()) out.push_back(tag + ": unknown target node");
    if (from_it == by_id.end() || to_it == by_id.end()) continue;
    if (e.from == e.to) out.push_back(tag + ": self-loop");
    if (!edge_kind_allows(e.kind, from_it->second->kind, to_it->second->kind))
      out.push_back(tag + ": kind pair " +
                    std::string(to_string(from_it->second->kind)) + "->" +
                    to_string(to_it->second->kind) + " not allowed for " +
                    to_string(e.kind));
    if (!seen_edges.emplace(e.from, e.to, static_cast<int>(e.kind)).second)
      out.push_back(tag + ": duplicate edge");
    if (e.kind == EdgeKind::TargetEvokes) ++target_evokes_out[e.from];
    if (e.kind == EdgeKind::ElementOf) ++element_of_out[e.from];
  }

  for (const auto& n : g.nodes) {
    if (n.kind == NodeKind::FrameTarget && target_evokes_out[n.id] != 1)
      out.push_back("FrameTarget node " + std::to_string(n.id) + " has " +
                    std::to_string(target_evokes_out[n.id]) +
                    " TargetEvokes out-edges (want 1)");
    if (n.kind == NodeKind::FrameElement && element_of_out[n.id] != 1)
      out.push_back("FrameElement node " + std::to_string(n.id) + " has " +
                    std::to_string(element_of_out[n.id]) +
                    " ElementOf out-edges (want 1)");
  }
  return out;
}

OmniGraph disjoint_union(const std::vector<OmniGraph>& graphs,
                         const std::string& sentence_id) {
  OmniGraph u;
  u.sentence_id = sentence_id;
  int next_id = 0;
  for (const auto& g : graphs) {
    auto report = validate_graph(g);
    if (!report.empty()) throw ValidationError(std::move(report));
    std::unordered_map<int, int> remap;
    for (const auto& n : g.nodes) {
      remap[n.id] = next_id;
      u.nodes.push_back({next_id, n.kind, n.label});
      ++next_id;
    }
    for (const auto& e : g.edges)
      u.edges.push_back({remap.at(e.from), remap.at(e.to), e.kind});
  }
  return u;
}

}  // namespace omnigraph
