// omnigraph: build sentence graphs from parsed text, compare them with
// graph kernels, train SVMs on the Gram matrices, rank features, and
// generate synthetic planted corpora.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omnigraph/analysis.hpp"
#include "omnigraph/ingest.hpp"
#include "omnigraph/learn.hpp"
#include "omnigraph/new_kernel.hpp"
#include "omnigraph/serialization.hpp"
#include "omnigraph/svm.hpp"
#include "omnigraph/synth.hpp"
#include "omnigraph/wl.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace omnigraph;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_run_config(const fs::path& dir, const std::string& command,
                      const json& args) {
  write_json(dir / "run_config.json", {{"command", command}, {"args", args}});
}

// "0,1,0.5" -> vector
std::vector<double> parse_csv(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw UsageError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

template <size_t N>
std::array<double, N> parse_weights(const std::string& s, const char* what) {
  auto v = parse_csv(s);
  if (v.size() != N)
    throw UsageError(std::string(what) + " needs exactly " +
                     std::to_string(N) + " comma-separated values");
  std::array<double, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// Shared kernel-configuration flags.
struct ConfigFlags {
  std::string node_weights = "1,1,1,1,1,1";
  std::string edge_weights = "1,1,1,1,1";
  int max_depth = 1;
  std::string alphas;  // empty = uniform

  void attach(CLI::App* cmd) {
    cmd->add_option("--node-weights", node_weights,
                    "six per-kind node weights, comma-separated");
    cmd->add_option("--edge-weights", edge_weights,
                    "five per-kind edge weights, comma-separated");
    cmd->add_option("--max-depth", max_depth, "neighborhood depth (h or p)");
    cmd->add_option("--alphas", alphas,
                    "max-depth+1 interpolation weights (default uniform)");
  }

  WeightConfig to_config() const {
    WeightConfig cfg = uniform_config(max_depth);
    cfg.node_weights = parse_weights<kNodeKindCount>(node_weights, "--node-weights");
    cfg.edge_weights = parse_weights<kEdgeKindCount>(edge_weights, "--edge-weights");
    if (!alphas.empty()) cfg.alphas = parse_csv(alphas);
    cfg.validate();
    return cfg;
  }

  json to_json() const {
    return {{"node_weights", node_weights},
            {"edge_weights", edge_weights},
            {"max_depth", max_depth},
            {"alphas", alphas}};
  }
};

json config_to_json(const WeightConfig& cfg) {
  return {{"node_weights", cfg.node_weights},
          {"edge_weights", cfg.edge_weights},
          {"max_depth", cfg.max_depth},
          {"alphas", cfg.alphas}};
}

WeightConfig config_from_json(const json& j) {
  WeightConfig cfg;
  auto nw = j.at("node_weights").get<std::vector<double>>();
  auto ew = j.at("edge_weights").get<std::vector<double>>();
  if (nw.size() != kNodeKindCount || ew.size() != kEdgeKindCount)
    throw ParseError("bad weight vector length in stored config");
  std::copy(nw.begin(), nw.end(), cfg.node_weights.begin());
  std::copy(ew.begin(), ew.end(), cfg.edge_weights.begin());
  cfg.max_depth = j.at("max_depth").get<int>();
  cfg.alphas = j.at("alphas").get<std::vector<double>>();
  cfg.validate();
  return cfg;
}

Corpus load_corpus(const std::string& path) {
  auto in = open_input(path);
  return Corpus::from_instances(read_corpus(in));
}

int cmd_build(const std::string& conll_path, const std::string& frames_path,
              const std::string& lexicon_path, const std::string& prices_path,
              const std::string& entity, const std::string& out_dir,
              double threshold) {
  auto conll_in = open_input(conll_path);
  auto parses = parse_conll(conll_in);
  std::vector<int> token_counts;
  for (const auto& p : parses)
    token_counts.push_back(static_cast<int>(p.tokens.size()));
  auto frames_in = open_input(frames_path);
  auto frames = parse_frames(frames_in, &token_counts);
  auto lexicon_in = open_input(lexicon_path);
  auto lexicon = read_lexicon(lexicon_in);
  auto prices_in = open_input(prices_path);
  auto prices = read_prices_csv(prices_in, entity);
  if (!lexicon.count(entity))
    throw UsageError("entity '" + entity + "' not in lexicon");

  BuildLog log;
  auto instances = build_corpus(parses, frames, lexicon, prices, entity, &log);
  (void)threshold;

  fs::create_directories(out_dir);
  write_corpus_file((fs::path(out_dir) / "corpus.jsonl").string(), instances);
  write_json(fs::path(out_dir) / "build_log.json",
             {{"sentences_total", log.sentences_total},
              {"sentences_with_mention", log.sentences_with_mention},
              {"days_total", log.days_total},
              {"days_excluded", log.days_excluded},
              {"exclusions", log.exclusions},
              {"instances", instances.size()}});
  write_run_config(out_dir, "build",
                   {{"conll", conll_path},
                    {"frames", frames_path},
                    {"lexicon", lexicon_path},
                    {"prices", prices_path},
                    {"entity", entity},
                    {"threshold", threshold}});
  if (instances.empty())
    std::cerr << "warning: no labeled instances for entity '" << entity
              << "'\n";
  std::cout << "wrote " << instances.size() << " instances to " << out_dir
            << "/corpus.jsonl\n";
  return 0;
}

int cmd_kernel(const std::string& corpus_path, const std::string& kernel_name,
               const ConfigFlags& flags, const std::string& out_dir,
               bool explain) {
  KernelType kernel = kernel_type_from_string(kernel_name);
  Corpus corpus = load_corpus(corpus_path);
  WeightConfig cfg = flags.to_config();

  KernelMatrix gram = corpus_gram(corpus, cfg, kernel);
  fs::create_directories(out_dir);
  gram.save((fs::path(out_dir) / "gram.ogkm").string());

  if (explain) {
    json ex;
    if (kernel == KernelType::WL) {
      WLRelabeler relabeler;
      json maps = json::object();
      for (size_t i = 0; i < corpus.size(); ++i)
        maps[corpus.ids[i]] = feature_map_to_json(
            relabeler.feature_map(corpus.unions[i], cfg.max_depth,
                                  cfg.node_weights),
            relabeler);
      ex = {{"feature_maps", maps}};
    } else {
      json reports = json::array();
      for (size_t i = 0; i < corpus.size(); ++i)
        for (size_t j = i; j < corpus.size(); ++j) {
          auto rep = new_kernel_report(corpus.unions[i], corpus.unions[j], cfg);
          json r = rep.to_json();
          r["pair"] = {corpus.ids[i], corpus.ids[j]};
          reports.push_back(std::move(r));
        }
      ex = {{"basis_reports", reports}};
    }
    write_json(fs::path(out_dir) / "explain.json", ex);
  }
  write_run_config(out_dir, "kernel",
                   {{"corpus", corpus_path},
                    {"kernel", kernel_name},
                    {"config", flags.to_json()},
                    {"explain", explain}});
  std::cout << "wrote " << gram.size() << "x" << gram.size()
            << " Gram matrix to " << out_dir << "/gram.ogkm\n";
  return 0;
}

int cmd_gridsearch(const std::string& corpus_path,
                   const std::string& kernel_name, const GridSpec& spec,
                   uint64_t seed, int jobs, const std::string& out_dir) {
  KernelType kernel = kernel_type_from_string(kernel_name);
  Corpus corpus = load_corpus(corpus_path);
  GridResult result = grid_search(corpus, spec, kernel, seed, jobs);

  fs::create_directories(out_dir);
  write_json(fs::path(out_dir) / "grid_result.json", result.to_json());
  write_run_config(out_dir, "gridsearch",
                   {{"corpus", corpus_path},
                    {"kernel", kernel_name},
                    {"seed", seed},
                    {"jobs", jobs},
                    {"max_depths", spec.max_depths},
                    {"node_weight_candidates", spec.node_weight_candidates},
                    {"edge_weight_candidates", spec.edge_weight_candidates},
                    {"alpha_step", spec.alpha_step},
                    {"C_candidates", spec.C_candidates}});
  std::cout << "best dev accuracy " << result.dev_accuracy << " over "
            << result.configs_evaluated << " configurations\n";
  return 0;
}

int cmd_train(const std::string& corpus_path, const std::string& kernel_name,
              const ConfigFlags& flags, const std::string& grid_result_path,
              double C, uint64_t seed, const std::string& out_dir) {
  KernelType kernel = kernel_type_from_string(kernel_name);
  Corpus corpus = load_corpus(corpus_path);

  WeightConfig cfg;
  if (!grid_result_path.empty()) {
    auto in = open_input(grid_result_path);
    json j = json::parse(in);
    cfg = config_from_json(j);
    C = j.at("C").get<double>();
  } else {
    cfg = flags.to_config();
  }

  KernelMatrix gram = corpus_gram(corpus, cfg, kernel);
  auto [train_idx, test_idx] = split_80_20(corpus.labels, seed);
  (void)test_idx;
  SvmModel model = train_svm_subset(gram, corpus.labels, train_idx, C);

  fs::create_directories(out_dir);
  gram.save((fs::path(out_dir) / "gram.ogkm").string());
  write_json(fs::path(out_dir) / "model.json", model.to_json());
  write_json(fs::path(out_dir) / "train_config.json",
             {{"kernel", kernel_name},
              {"config", config_to_json(cfg)},
              {"C", C},
              {"split_seed", seed}});
  write_run_config(out_dir, "train",
                   {{"corpus", corpus_path},
                    {"kernel", kernel_name},
                    {"grid_result", grid_result_path},
                    {"C", C},
                    {"seed", seed}});
  std::cout << "trained on " << train_idx.size() << " instances ("
            << model.iterations << " solver iterations)\n";
  return 0;
}

int cmd_eval(const std::string& corpus_path, const std::string& train_dir,
             const std::string& out_dir) {
  fs::path tc_path = fs::path(train_dir) / "train_config.json";
  if (!fs::exists(tc_path))
    throw UsageError("no train artifacts at " + train_dir +
                     " (expected train_config.json); run train first");
  auto in = open_input(tc_path.string());
  json tc = json::parse(in);
  KernelType kernel = kernel_type_from_string(tc.at("kernel").get<std::string>());
  WeightConfig cfg = config_from_json(tc.at("config"));
  double C = tc.at("C").get<double>();
  uint64_t seed = tc.at("split_seed").get<uint64_t>();

  Corpus corpus = load_corpus(corpus_path);
  EvalReport report = evaluate(corpus, cfg, C, kernel, seed);

  fs::create_directories(out_dir);
  write_json(fs::path(out_dir) / "eval_report.json", report.to_json());
  write_run_config(out_dir, "eval",
                   {{"corpus", corpus_path}, {"train_dir", train_dir}});
  std::cout << report.to_table();
  return 0;
}

int cmd_rank(const std::string& corpus_path, const ConfigFlags& flags,
             size_t top_k, int min_support, int dot_count,
             const std::string& out_dir) {
  Corpus corpus = load_corpus(corpus_path);
  WeightConfig cfg = flags.to_config();
  auto ranking = rank_features(corpus, cfg.max_depth, cfg.node_weights, top_k,
                               min_support);

  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "ranking.tsv", ranking_to_tsv(ranking));
  char name[32];
  for (int i = 0; i < dot_count && i < static_cast<int>(ranking.size()); ++i) {
    std::snprintf(name, sizeof(name), "feature_%03d.dot", i + 1);
    write_text(fs::path(out_dir) / name,
               feature_to_dot(ranking[i].feature, name));
  }
  write_run_config(out_dir, "rank",
                   {{"corpus", corpus_path},
                    {"max_depth", cfg.max_depth},
                    {"node_weights", flags.node_weights},
                    {"top_k", top_k},
                    {"min_support", min_support},
                    {"dot", dot_count}});
  std::cout << "ranked " << ranking.size() << " features\n";
  return 0;
}

int cmd_synth(const PlantSpec& spec, int n, const std::string& out_dir) {
  SynthResult result = generate(spec, n);
  fs::create_directories(out_dir);
  write_corpus_file((fs::path(out_dir) / "corpus.jsonl").string(),
                    result.instances);
  write_json(fs::path(out_dir) / "manifest.json", result.manifest);
  write_run_config(out_dir, "synth",
                   {{"n", n}, {"spec", spec.to_json()}});
  std::cout << "wrote " << result.instances.size() << " instances to "
            << out_dir << "/corpus.jsonl\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OmniGraph toolkit: sentence-graph construction, graph "
               "kernels, kernel SVMs, feature ranking"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build a corpus from parsed text");
  std::string conll, frames, lexicon, prices, entity, out;
  double threshold = 0.02;
  build->add_option("--conll", conll, "dependency parses (CoNLL)")->required();
  build->add_option("--frames", frames, "frame annotations (JSONL)")->required();
  build->add_option("--lexicon", lexicon, "entity lexicon (JSON)")->required();
  build->add_option("--prices", prices, "price series (CSV)")->required();
  build->add_option("--entity", entity, "designated entity id")->required();
  build->add_option("--threshold", threshold, "labeling return threshold");
  build->add_option("--out", out, "output directory")->required();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "compute a Gram matrix");
  std::string k_corpus, k_name;
  bool k_explain = false;
  ConfigFlags k_flags;
  kernel->add_option("--corpus", k_corpus, "corpus JSONL")->required();
  kernel->add_option("--kernel", k_name, "wl or new")->required();
  kernel->add_flag("--explain", k_explain,
                   "emit feature maps (wl) or basis reports (new)");
  k_flags.attach(kernel);
  kernel->add_option("--out", out, "output directory")->required();

  // gridsearch
  auto* grid = app.add_subcommand("gridsearch",
                                  "leave-one-out grid search on the 80% split");
  std::string g_corpus, g_name;
  std::string g_depths = "0,1,2,3", g_node_cands = "0,1", g_edge_cands = "1",
              g_Cs = "0.1,1,10";
  double g_alpha_step = 0.25;
  uint64_t g_seed = 0;
  int g_jobs = 1;
  grid->add_option("--corpus", g_corpus, "corpus JSONL")->required();
  grid->add_option("--kernel", g_name, "wl or new")->required();
  grid->add_option("--max-depths", g_depths, "depth candidates");
  grid->add_option("--node-weight-candidates", g_node_cands, "per-kind candidates");
  grid->add_option("--edge-weight-candidates", g_edge_cands, "edge candidates");
  grid->add_option("--alpha-step", g_alpha_step, "alpha simplex step");
  grid->add_option("--C-candidates", g_Cs, "SVM C candidates");
  grid->add_option("--seed", g_seed, "split seed");
  grid->add_option("--jobs", g_jobs, "worker threads");
  grid->add_option("--out", out, "output directory")->required();

  // train
  auto* train = app.add_subcommand("train", "train an SVM on the 80% split");
  std::string t_corpus, t_name, t_grid_result;
  double t_C = 1.0;
  uint64_t t_seed = 0;
  ConfigFlags t_flags;
  train->add_option("--corpus", t_corpus, "corpus JSONL")->required();
  train->add_option("--kernel", t_name, "wl or new")->required();
  train->add_option("--grid-result", t_grid_result,
                    "grid_result.json with the chosen configuration");
  train->add_option("--C", t_C, "SVM regularization");
  train->add_option("--seed", t_seed, "split seed");
  t_flags.attach(train);
  train->add_option("--out", out, "output directory")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate trained artifacts on the "
                                          "held-out 20%");
  std::string e_corpus, e_train_dir;
  eval->add_option("--corpus", e_corpus, "corpus JSONL")->required();
  eval->add_option("--train-dir", e_train_dir, "directory written by train")
      ->required();
  eval->add_option("--out", out, "output directory")->required();

  // rank
  auto* rank = app.add_subcommand("rank", "rank WL features by mutual "
                                          "information");
  std::string r_corpus;
  size_t r_top_k = 50;
  int r_min_support = 2, r_dot = 10;
  ConfigFlags r_flags;
  rank->add_option("--corpus", r_corpus, "corpus JSONL")->required();
  rank->add_option("--top-k", r_top_k, "features to keep");
  rank->add_option("--min-support", r_min_support, "minimum occurrence count");
  rank->add_option("--dot", r_dot, "DOT files to emit for the top features");
  r_flags.attach(rank);
  rank->add_option("--out", out, "output directory")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a planted corpus");
  PlantSpec plant;
  int s_n = 200;
  synth->add_option("--n", s_n, "number of instances");
  synth->add_option("--p-plus", plant.p_plus, "plant probability, label +1");
  synth->add_option("--p-minus", plant.p_minus, "plant probability, label -1");
  synth->add_option("--pos-fraction", plant.pos_fraction, "class prior");
  synth->add_option("--min-sentences", plant.min_sentences);
  synth->add_option("--max-sentences", plant.max_sentences);
  synth->add_option("--distractor-frames", plant.n_distractor_frames);
  synth->add_option("--vocab-size", plant.vocab_size);
  synth->add_option("--tokens-per-sentence", plant.tokens_per_sentence);
  synth->add_option("--seed", plant.seed, "generator seed");
  synth->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (build->parsed())
      return cmd_build(conll, frames, lexicon, prices, entity, out, threshold);
    if (kernel->parsed())
      return cmd_kernel(k_corpus, k_name, k_flags, out, k_explain);
    if (grid->parsed()) {
      GridSpec spec;
      auto depths = parse_csv(g_depths);
      spec.max_depths.assign(depths.begin(), depths.end());
      spec.node_weight_candidates = parse_csv(g_node_cands);
      spec.edge_weight_candidates = parse_csv(g_edge_cands);
      spec.alpha_step = g_alpha_step;
      spec.C_candidates = parse_csv(g_Cs);
      return cmd_gridsearch(g_corpus, g_name, spec, g_seed, g_jobs, out);
    }
    if (train->parsed())
      return cmd_train(t_corpus, t_name, t_flags, t_grid_result, t_C, t_seed,
                       out);
    if (eval->parsed()) return cmd_eval(e_corpus, e_train_dir, out);
    if (rank->parsed())
      return cmd_rank(r_corpus, r_flags, r_top_k, r_min_support, r_dot, out);
    if (synth->parsed()) return cmd_synth(plant, s_n, out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message; usage problems exit 2
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
