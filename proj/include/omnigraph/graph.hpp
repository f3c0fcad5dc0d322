#ifndef OMNIGRAPH_GRAPH_HPP
#define OMNIGRAPH_GRAPH_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace omnigraph {

enum class NodeKind {
  FrameName = 0,
  FrameTarget,
  FrameElement,
  DesignatedEntity,
  OtherEntity,
  LexicalItem,
};
inline constexpr int kNodeKindCount = 6;

enum class EdgeKind {
  TargetEvokes = 0,   // FrameTarget -> FrameName
  ElementOf,          // FrameElement -> FrameName
  FillsRole,          // DesignatedEntity|OtherEntity -> FrameElement
  FrameDependency,    // FrameName -> FrameName
  LexicalFill,        // LexicalItem -> FrameElement
};
inline constexpr int kEdgeKindCount = 5;

const char* to_string(NodeKind k);
const char* to_string(EdgeKind k);
std::optional<NodeKind> node_kind_from_string(const std::string& s);
std::optional<EdgeKind> edge_kind_from_string(const std::string& s);

// Entity labels are normalized to fixed sentinels so features transfer
// across entities.
inline const char* kDesignatedEntityLabel = "Designated_Entity";
inline const char* kOtherEntityLabel = "Other_Entity";

// Legal (source kind, target kind) pairs per edge kind. FillsRole admits
// both entity kinds as source.
bool edge_kind_allows(EdgeKind kind, NodeKind from, NodeKind to);
std::optional<EdgeKind> edge_kind_for(NodeKind from, NodeKind to);

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::FrameName;
  std::string label;
};

struct Edge {
  int from = 0;
  int to = 0;
  EdgeKind kind = EdgeKind::TargetEvokes;
};

struct OmniGraph {
  std::string sentence_id;
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  const Node* find_node(int id) const;
};

struct ValidationError : std::runtime_error {
  std::vector<std::string> report;
  explicit ValidationError(std::vector<std::string> violations);
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empty report iff the graph satisfies all structural invariants.
// Violations are data, not failures; each names the offending ids.
std::vector<std::string> validate_graph(const OmniGraph& g);

// Node ids re-based, no cross-sentence edges. Throws ValidationError if
// any input graph is invalid.
OmniGraph disjoint_union(const std::vector<OmniGraph>& graphs,
                         const std::string& sentence_id = "union");

}  // namespace omnigraph

#endif  // OMNIGRAPH_GRAPH_HPP
