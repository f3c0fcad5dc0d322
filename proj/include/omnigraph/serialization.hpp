#ifndef OMNIGRAPH_SERIALIZATION_HPP
#define OMNIGRAPH_SERIALIZATION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "omnigraph/instance.hpp"

namespace omnigraph {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json graph_to_json(const OmniGraph& g);
OmniGraph graph_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Corpus files are JSON Lines, one instance per line.
void write_corpus(std::ostream& out, const std::vector<Instance>& instances);
void write_corpus_file(const std::string& path,
                       const std::vector<Instance>& instances);
std::vector<Instance> read_corpus(std::istream& in);
std::vector<Instance> read_corpus_file(const std::string& path);

}  // namespace omnigraph

#endif  // OMNIGRAPH_SERIALIZATION_HPP
