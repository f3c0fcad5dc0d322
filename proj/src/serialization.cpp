#include "omnigraph/serialization.hpp"

#include <fstream>
#include <sstream>

namespace omnigraph {

using nlohmann::json;

json graph_to_json(const OmniGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"label", n.label}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  return {{"sentence_id", g.sentence_id}, {"nodes", nodes}, {"edges", edges}};
}

OmniGraph graph_from_json(const json& j) {
  OmniGraph g;
  g.sentence_id = j.at("sentence_id").get<std::string>();
  for (const auto& jn : j.at("nodes")) {
    Node n;
    n.id = jn.at("id").get<int>();
    auto kind = node_kind_from_string(jn.at("kind").get<std::string>());
    if (!kind)
      throw ParseError("unknown node kind '" +
                       jn.at("kind").get<std::string>() + "'");
    n.kind = *kind;
    n.label = jn.at("label").get<std::string>();
    g.nodes.push_back(std::move(n));
  }
  for (const auto& je : j.at("edges")) {
    Edge e;
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    auto kind = edge_kind_from_string(je.at("kind").get<std::string>());
    if (!kind)
      throw ParseError("unknown edge kind '" +
                       je.at("kind").get<std::string>() + "'");
    e.kind = *kind;
    g.edges.push_back(e);
  }
  return g;
}

json instance_to_json(const Instance& inst) {
  json graphs = json::array();
  for (const auto& g : inst.graphs) graphs.push_back(graph_to_json(g));
  json out = {{"entity_id", inst.entity_id},
              {"date", inst.date},
              {"label", inst.label},
              {"graphs", graphs}};
  if (!inst.tokens.empty()) out["tokens"] = inst.tokens;
  return out;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.entity_id = j.at("entity_id").get<std::string>();
  inst.date = j.at("date").get<std::string>();
  inst.label = j.at("label").get<int>();
  if (inst.label != 1 && inst.label != -1)
    throw ParseError("instance label must be -1 or +1");
  for (const auto& jg : j.at("graphs"))
    inst.graphs.push_back(graph_from_json(jg));
  if (inst.graphs.empty()) throw ParseError("instance forest is empty");
  if (j.contains("tokens"))
    inst.tokens = j.at("tokens").get<std::vector<std::vector<std::string>>>();
  return inst;
}

void write_corpus(std::ostream& out, const std::vector<Instance>& instances) {
  for (const auto& inst : instances)
    out << instance_to_json(inst).dump() << "\n";
}

void write_corpus_file(const std::string& path,
                       const std::vector<Instance>& instances) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_corpus(f, instances);
}

std::vector<Instance> read_corpus(std::istream& in) {
  std::vector<Instance> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(instance_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError("corpus line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return out;
}

std::vector<Instance> read_corpus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_corpus(f);
}

}  // namespace omnigraph
