#include "omnigraph/learn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "omnigraph/new_kernel.hpp"
#include "omnigraph/wl.hpp"

namespace omnigraph {

KernelType kernel_type_from_string(const std::string& s) {
  if (s == "wl") return KernelType::WL;
  if (s == "new") return KernelType::NEW;
  throw ConfigError("unknown kernel '" + s + "' (expected wl or new)");
}

const char* to_string(KernelType t) {
  return t == KernelType::WL ? "wl" : "new";
}

Corpus Corpus::from_instances(std::vector<Instance> instances) {
  Corpus c;
  c.instances = std::move(instances);
  c.unions.reserve(c.instances.size());
  std::unordered_map<std::string, int> seen;
  for (const auto& inst : c.instances) {
    c.unions.push_back(inst.make_union());
    c.labels.push_back(inst.label);
    std::string id = inst.id();
    if (int n = seen[id]++; n > 0) id += "#" + std::to_string(n);
    c.ids.push_back(std::move(id));
  }
  return c;
}

void GridSpec::validate() const {
  if (max_depths.empty() || node_weight_candidates.empty() ||
      edge_weight_candidates.empty() || C_candidates.empty())
    throw ConfigError("grid candidate sets must be non-empty");
  if (alpha_step <= 0 || alpha_step > 1)
    throw ConfigError("alpha_step must lie in (0, 1]");
  bool has_one = std::any_of(node_weight_candidates.begin(),
                             node_weight_candidates.end(),
                             [](double w) { return w == 1.0; });
  if (!has_one)
    throw ConfigError("node weight candidates must include 1");
}

std::pair<std::vector<size_t>, std::vector<size_t>> split_80_20(
    const std::vector<int>& labels, uint64_t seed) {
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? pos : neg).push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<size_t> train, test;
  for (auto* cls : {&pos, &neg}) {
    std::shuffle(cls->begin(), cls->end(), rng);
    size_t n_test = static_cast<size_t>(
        std::llround(0.2 * static_cast<double>(cls->size())));
    for (size_t k = 0; k < cls->size(); ++k)
      (k < n_test ? test : train).push_back((*cls)[k]);
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

namespace {

// All weight vectors over the six node kinds with at least one kind at 1.
std::vector<std::array<double, kNodeKindCount>> node_combos(
    const std::vector<double>& candidates) {
  std::vector<std::array<double, kNodeKindCount>> out;
  std::array<double, kNodeKindCount> cur{};
  auto rec = [&](auto&& self, int kind) -> void {
    if (kind == kNodeKindCount) {
      if (std::any_of(cur.begin(), cur.end(), [](double w) { return w == 1.0; }))
        out.push_back(cur);
      return;
    }
    for (double w : candidates) {
      cur[kind] = w;
      self(self, kind + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Lattice points of the probability simplex with the given step.
std::vector<std::vector<double>> alpha_grid(int length, double step) {
  int units = static_cast<int>(std::llround(1.0 / step));
  std::vector<std::vector<double>> out;
  std::vector<int> cur(length, 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == length - 1) {
      cur[pos] = remaining;
      std::vector<double> a(length);
      for (int i = 0; i < length; ++i) a[i] = static_cast<double>(cur[i]) / units;
      // remove lattice round-off so validate() sees an exact sum
      double sum = std::accumulate(a.begin(), a.end(), 0.0);
      a.back() += 1.0 - sum;
      out.push_back(std::move(a));
      return;
    }
    for (int u = remaining; u >= 0; --u) {
      cur[pos] = u;
      self(self, pos + 1, remaining - u);
    }
  };
  rec(rec, 0, units);
  return out;
}

struct Candidate {
  WeightConfig config;
  double C = 1;
  double accuracy = -1;
  std::string tie_key;
};

std::string encode_tie_key(const WeightConfig& w, double C) {
  std::ostringstream os;
  for (double v : w.node_weights) os << v << ";";
  for (double v : w.edge_weights) os << v << ";";
  os << "|";
  for (double a : w.alphas) os << a << ";";
  os << "|" << C;
  return os.str();
}

int enabled_kinds(const WeightConfig& w) {
  int n = 0;
  for (double v : w.node_weights)
    if (v > 0) ++n;
  return n;
}

// accuracy desc, then max_depth asc, fewer enabled kinds, lexicographic key
bool better(const Candidate& a, const Candidate& b) {
  if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
  if (a.config.max_depth != b.config.max_depth)
    return a.config.max_depth < b.config.max_depth;
  int ea = enabled_kinds(a.config), eb = enabled_kinds(b.config);
  if (ea != eb) return ea < eb;
  return a.tie_key < b.tie_key;
}

}  // namespace

GridResult grid_search(const Corpus& corpus, const GridSpec& spec,
                       KernelType kernel, uint64_t split_seed, int jobs) {
  spec.validate();
  if (corpus.size() < 10)
    throw ConfigError("grid search needs at least 10 instances");
  auto [train_idx, test_idx] = split_80_20(corpus.labels, split_seed);
  (void)test_idx;

  std::vector<OmniGraph> train_unions;
  std::vector<std::string> train_ids;
  std::vector<int> train_labels;
  for (size_t i : train_idx) {
    train_unions.push_back(corpus.unions[i]);
    train_ids.push_back(corpus.ids[i]);
    train_labels.push_back(corpus.labels[i]);
  }
  std::vector<size_t> all_train(train_idx.size());
  std::iota(all_train.begin(), all_train.end(), 0);

  const int depth_max =
      *std::max_element(spec.max_depths.begin(), spec.max_depths.end());
  auto combos = node_combos(spec.node_weight_candidates);

  std::vector<std::vector<Candidate>> per_combo(combos.size());
  std::atomic<size_t> next_combo{0};

  auto run_combo = [&](size_t ci) {
    const auto& nw = combos[ci];
    std::vector<Candidate>& results = per_combo[ci];

    auto eval_gram = [&](const KernelMatrix& gram, WeightConfig cfg) {
      for (double C : spec.C_candidates) {
        Candidate cand;
        cand.config = cfg;
        cand.C = C;
        cand.accuracy = loo_cv(gram, train_labels, C, false);
        cand.tie_key = encode_tie_key(cfg, C);
        results.push_back(std::move(cand));
      }
    };

    if (kernel == KernelType::WL) {
      bool binary = std::all_of(nw.begin(), nw.end(),
                                [](double w) { return w == 0.0 || w == 1.0; });
      if (!binary) return;  // WL only supports 0/1 node weights
      WLRelabeler rel;
      std::vector<WLFeatureMap> maps;
      maps.reserve(train_unions.size());
      for (const auto& g : train_unions)
        maps.push_back(rel.feature_map(g, depth_max, nw));
      const size_t n = maps.size();
      // per-iteration gram increments, then prefix sums per depth
      std::vector<KernelMatrix> inc(depth_max + 1,
                                    KernelMatrix(std::vector<std::string>(train_ids)));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
          for (int d = 0; d <= depth_max; ++d) {
            double v = wl_dot_iteration(maps[i], maps[j], d);
            inc[d].at(i, j) = v;
            inc[d].at(j, i) = v;
          }
      KernelMatrix cum{std::vector<std::string>(train_ids)};
      for (int h = 0; h <= depth_max; ++h) {
        for (size_t k = 0; k < cum.values.size(); ++k)
          cum.values[k] += inc[h].values[k];
        if (std::find(spec.max_depths.begin(), spec.max_depths.end(), h) ==
            spec.max_depths.end())
          continue;
        WeightConfig cfg = uniform_config(h);
        cfg.node_weights = nw;
        eval_gram(cum, cfg);
      }
    } else {
      for (double ew : spec.edge_weight_candidates) {
        WeightConfig base;
        base.node_weights = nw;
        base.edge_weights.fill(ew);
        NewBasisGrams basis(train_unions, train_ids, depth_max, base);
        // degrees whose normalized basis gram is identically zero
        // contribute nothing to the mix; alpha mass on them is inert
        std::vector<bool> degenerate(depth_max + 1, false);
        for (int p = 0; p <= depth_max; ++p) {
          const auto& v = basis.normalized(p).values;
          degenerate[p] =
              std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
        }
        // LOO accuracy per effective gram: keyed by the alpha components
        // that actually reach a non-degenerate basis gram, plus C
        std::unordered_map<std::string, double> loo_cache;
        for (int p : spec.max_depths) {
          for (const auto& alphas : alpha_grid(p + 1, spec.alpha_step)) {
            WeightConfig cfg = base;
            cfg.max_depth = p;
            cfg.alphas = alphas;
            std::string gram_key;
            for (int d = 0; d <= p; ++d)
              if (alphas[d] > 0 && !degenerate[d]) {
                char part[48];
                std::snprintf(part, sizeof(part), "%d:%.17g;", d, alphas[d]);
                gram_key += part;
              }
            KernelMatrix gram;  // mixed lazily, only on a cache miss
            for (double C : spec.C_candidates) {
              char ckey[32];
              std::snprintf(ckey, sizeof(ckey), "C%.17g", C);
              auto [it, inserted] = loo_cache.try_emplace(gram_key + ckey, 0.0);
              if (inserted) {
                if (gram.size() == 0) gram = basis.mix(alphas);
                it->second = loo_cv(gram, train_labels, C, false);
              }
              Candidate cand;
              cand.config = cfg;
              cand.C = C;
              cand.accuracy = it->second;
              cand.tie_key = encode_tie_key(cfg, C);
              results.push_back(std::move(cand));
            }
          }
        }
      }
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (size_t ci = 0; ci < combos.size(); ++ci) run_combo(ci);
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t)
      workers.emplace_back([&] {
        for (size_t ci = next_combo.fetch_add(1); ci < combos.size();
             ci = next_combo.fetch_add(1))
          run_combo(ci);
      });
    for (auto& w : workers) w.join();
  }

  const Candidate* best = nullptr;
  size_t evaluated = 0;
  for (const auto& results : per_combo)
    for (const auto& cand : results) {
      ++evaluated;
      if (!best || better(cand, *best)) best = &cand;
    }
  if (!best) throw ConfigError("empty grid");

  GridResult out;
  out.config = best->config;
  out.C = best->C;
  out.dev_accuracy = best->accuracy;
  out.configs_evaluated = evaluated;
  return out;
}

KernelMatrix corpus_gram(const Corpus& corpus, const WeightConfig& config,
                         KernelType kernel) {
  if (kernel == KernelType::WL)
    return wl_gram(corpus.unions, corpus.ids, config.max_depth,
                   config.node_weights);
  return new_gram(corpus.unions, corpus.ids, config);
}

namespace {

EvalReport score_predictions(const std::vector<int>& truth,
                             const std::vector<int>& predicted,
                             int train_majority) {
  EvalReport r;
  r.test_size = static_cast<int>(truth.size());
  int baseline_correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == train_majority) ++baseline_correct;
    if (predicted[i] == 1 && truth[i] == 1) ++r.tp;
    if (predicted[i] == 1 && truth[i] == -1) ++r.fp;
    if (predicted[i] == -1 && truth[i] == -1) ++r.tn;
    if (predicted[i] == -1 && truth[i] == 1) ++r.fn;
  }
  auto ratio = [](int a, int b) { return b > 0 ? static_cast<double>(a) / b : 0.0; };
  r.accuracy = ratio(r.tp + r.tn, r.test_size);
  r.baseline_accuracy = ratio(baseline_correct, r.test_size);
  r.precision_pos = ratio(r.tp, r.tp + r.fp);
  r.recall_pos = ratio(r.tp, r.tp + r.fn);
  r.precision_neg = ratio(r.tn, r.tn + r.fn);
  r.recall_neg = ratio(r.tn, r.tn + r.fp);
  return r;
}

EvalReport evaluate_gram(const KernelMatrix& gram,
                         const std::vector<int>& labels, double C,
                         uint64_t split_seed) {
  auto [train_idx, test_idx] = split_80_20(labels, split_seed);
  SvmModel model = train_svm_subset(gram, labels, train_idx, C);

  int pos = 0, neg = 0;
  for (size_t i : train_idx) (labels[i] == 1 ? pos : neg)++;
  int majority = pos >= neg ? 1 : -1;

  std::vector<int> truth, predicted;
  std::vector<double> row(train_idx.size());
  for (size_t i : test_idx) {
    for (size_t t = 0; t < train_idx.size(); ++t)
      row[t] = gram.at(i, train_idx[t]);
    truth.push_back(labels[i]);
    predicted.push_back(predict(model, row).label);
  }
  return score_predictions(truth, predicted, majority);
}

}  // namespace

EvalReport evaluate(const Corpus& corpus, const WeightConfig& config, double C,
                    KernelType kernel, uint64_t split_seed) {
  KernelMatrix gram = corpus_gram(corpus, config, kernel);
  EvalReport report = evaluate_gram(gram, corpus.labels, C, split_seed);
  report.config = {{"kernel", to_string(kernel)}, {"C", C}};
  return report;
}

std::vector<BowVector> bow_features(const Corpus& corpus, int n_max) {
  std::vector<BowVector> out;
  out.reserve(corpus.size());
  for (const auto& inst : corpus.instances) {
    BowVector v;
    for (const auto& sentence : inst.tokens) {
      for (int n = 1; n <= n_max; ++n) {
        if (static_cast<int>(sentence.size()) < n) break;
        for (size_t i = 0; i + n <= sentence.size(); ++i) {
          std::string gram = sentence[i];
          for (int k = 1; k < n; ++k) gram += " " + sentence[i + k];
          v[gram] += 1.0;
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

KernelMatrix bow_gram(const Corpus& corpus, int n_max) {
  auto features = bow_features(corpus, n_max);
  std::vector<double> norms(features.size(), 0.0);
  for (size_t i = 0; i < features.size(); ++i) {
    for (const auto& [g, c] : features[i]) norms[i] += c * c;
    norms[i] = std::sqrt(norms[i]);
  }
  KernelMatrix gram{std::vector<std::string>(corpus.ids)};
  for (size_t i = 0; i < features.size(); ++i)
    for (size_t j = i; j < features.size(); ++j) {
      double dot = 0;
      const auto& a = features[i].size() <= features[j].size() ? features[i]
                                                               : features[j];
      const auto& b = features[i].size() <= features[j].size() ? features[j]
                                                               : features[i];
      for (const auto& [g, c] : a) {
        auto it = b.find(g);
        if (it != b.end()) dot += c * it->second;
      }
      double denom = norms[i] * norms[j];
      double v = denom > 0 ? dot / denom : 0.0;
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
  return gram;
}

EvalReport evaluate_bow(const Corpus& corpus, const std::vector<double>& Cs,
                        uint64_t split_seed) {
  KernelMatrix gram = bow_gram(corpus);
  auto [train_idx, test_idx] = split_80_20(corpus.labels, split_seed);
  (void)test_idx;
  KernelMatrix train_gram = gram.minor(train_idx);
  std::vector<int> train_labels;
  for (size_t i : train_idx) train_labels.push_back(corpus.labels[i]);

  double best_C = Cs.front(), best_acc = -1;
  for (double C : Cs) {
    double acc = loo_cv(train_gram, train_labels, C, false);
    if (acc > best_acc) {
      best_acc = acc;
      best_C = C;
    }
  }
  EvalReport report = evaluate_gram(gram, corpus.labels, best_C, split_seed);
  report.config = {{"kernel", "bow"}, {"C", best_C}, {"dev_accuracy", best_acc}};
  return report;
}

nlohmann::json GridResult::to_json() const {
  return {{"node_weights", config.node_weights},
          {"edge_weights", config.edge_weights},
          {"max_depth", config.max_depth},
          {"alphas", config.alphas},
          {"C", C},
          {"dev_accuracy", dev_accuracy},
          {"configs_evaluated", configs_evaluated}};
}

nlohmann::json EvalReport::to_json() const {
  return {{"accuracy", accuracy},
          {"baseline_accuracy", baseline_accuracy},
          {"precision_pos", precision_pos},
          {"recall_pos", recall_pos},
          {"precision_neg", precision_neg},
          {"recall_neg", recall_neg},
          {"confusion", {{"tp", tp}, {"fp", fp}, {"tn", tn}, {"fn", fn}}},
          {"test_size", test_size},
          {"config", config}};
}

std::string EvalReport::to_table() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%-16s %8s\n"
                "%-16s %8.4f\n"
                "%-16s %8.4f\n"
                "%-16s %8.4f %8.4f\n"
                "%-16s %8.4f %8.4f\n"
                "%-16s %4d %4d %4d %4d\n",
                "metric", "value", "accuracy", accuracy, "baseline",
                baseline_accuracy, "precision +/-", precision_pos,
                precision_neg, "recall    +/-", recall_pos, recall_neg,
                "tp fp tn fn", tp, fp, tn, fn);
  return buf;
}

}  // namespace omnigraph
