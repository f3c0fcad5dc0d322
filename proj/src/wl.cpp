#include "omnigraph/wl.hpp"

#include <algorithm>
#include <sstream>

namespace omnigraph {

int WLRelabeler::intern(const std::string& key, std::string uncompressed) {
  auto it = dict_.find(key);
  if (it != dict_.end()) return it->second;
  int id = static_cast<int>(uncompressed_.size());
  dict_.emplace(key, id);
  uncompressed_.push_back(std::move(uncompressed));
  return id;
}

WLFeatureMap WLRelabeler::feature_map(
    const OmniGraph& g, int h,
    const std::array<double, kNodeKindCount>& node_weights) {
  for (double w : node_weights)
    if (w != 0.0 && w != 1.0)
      throw ConfigError(
          "WL supports node weights in {0,1} only; use the NEW kernel for "
          "fractional weights");
  if (h < 0) throw ConfigError("h must be non-negative");

  // Delete weight-0 nodes and their incident edges.
  std::unordered_map<int, int> index_of;  // node id -> dense index
  std::vector<const Node*> kept;
  for (const auto& n : g.nodes) {
    if (node_weights[static_cast<int>(n.kind)] == 0.0) continue;
    index_of[n.id] = static_cast<int>(kept.size());
    kept.push_back(&n);
  }
  std::vector<std::vector<int>> out_neighbors(kept.size());
  for (const auto& e : g.edges) {
    auto fi = index_of.find(e.from);
    auto ti = index_of.find(e.to);
    if (fi == index_of.end() || ti == index_of.end()) continue;
    out_neighbors[fi->second].push_back(ti->second);
  }

  WLFeatureMap map;
  map.counts.resize(h + 1);

  std::vector<int> cur(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    const Node& n = *kept[i];
    std::string base = std::string(to_string(n.kind)) + ":" + n.label;
    cur[i] = intern("B:" + base, base);
    ++map.counts[0][cur[i]];
  }

  for (int iter = 1; iter <= h; ++iter) {
    std::vector<int> next(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) {
      if (out_neighbors[i].empty()) {
        next[i] = cur[i];  // empty neighbor set: label unchanged
      } else {
        std::vector<int> nb;
        nb.reserve(out_neighbors[i].size());
        for (int j : out_neighbors[i]) nb.push_back(cur[j]);
        std::sort(nb.begin(), nb.end(), [this](int a, int b) {
          const std::string& sa = uncompressed_[a];
          const std::string& sb = uncompressed_[b];
          return sa != sb ? sa < sb : a < b;
        });
        std::ostringstream key;
        key << "C:" << cur[i] << "|";
        std::ostringstream pretty;
        pretty << uncompressed_[cur[i]] << "\xE2\x86\x92{";  // U+2192 arrow
        for (size_t k = 0; k < nb.size(); ++k) {
          if (k) {
            key << ",";
            pretty << ",";
          }
          key << nb[k];
          pretty << uncompressed_[nb[k]];
        }
        pretty << "}";
        next[i] = intern(key.str(), pretty.str());
      }
      ++map.counts[iter][next[i]];
    }
    cur.swap(next);
  }
  return map;
}

double wl_dot_iteration(const WLFeatureMap& a, const WLFeatureMap& b, int i) {
  if (i >= static_cast<int>(a.counts.size()) ||
      i >= static_cast<int>(b.counts.size()))
    return 0.0;
  const auto& ma = a.counts[i];
  const auto& mb = b.counts[i];
  const auto& small = ma.size() <= mb.size() ? ma : mb;
  const auto& large = ma.size() <= mb.size() ? mb : ma;
  double sum = 0;
  for (const auto& [label, count] : small) {
    auto it = large.find(label);
    if (it != large.end()) sum += static_cast<double>(count) * it->second;
  }
  return sum;
}

double wl_dot(const WLFeatureMap& a, const WLFeatureMap& b) {
  double sum = 0;
  int iters = static_cast<int>(std::min(a.counts.size(), b.counts.size()));
  for (int i = 0; i < iters; ++i) sum += wl_dot_iteration(a, b, i);
  return sum;
}

double wl_kernel(const OmniGraph& g1, const OmniGraph& g2, int h,
                 const std::array<double, kNodeKindCount>& node_weights) {
  WLRelabeler relabeler;
  WLFeatureMap m1 = relabeler.feature_map(g1, h, node_weights);
  WLFeatureMap m2 = relabeler.feature_map(g2, h, node_weights);
  return wl_dot(m1, m2);
}

KernelMatrix wl_gram(const std::vector<OmniGraph>& union_graphs,
                     const std::vector<std::string>& ids, int h,
                     const std::array<double, kNodeKindCount>& node_weights) {
  WLRelabeler relabeler;
  std::vector<WLFeatureMap> maps;
  maps.reserve(union_graphs.size());
  for (const auto& g : union_graphs)
    maps.push_back(relabeler.feature_map(g, h, node_weights));

  KernelMatrix gram{std::vector<std::string>(ids)};
  for (size_t i = 0; i < maps.size(); ++i)
    for (size_t j = i; j < maps.size(); ++j) {
      double v = wl_dot(maps[i], maps[j]);
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
  return gram;
}

nlohmann::json feature_map_to_json(const WLFeatureMap& map,
                                   const WLRelabeler& relabeler) {
  nlohmann::json out = nlohmann::json::object();
  for (size_t i = 0; i < map.counts.size(); ++i) {
    nlohmann::json iter = nlohmann::json::object();
    for (const auto& [label, count] : map.counts[i])
      iter[relabeler.uncompressed(label)] = count;
    out[std::to_string(i)] = std::move(iter);
  }
  return out;
}

}  // namespace omnigraph
