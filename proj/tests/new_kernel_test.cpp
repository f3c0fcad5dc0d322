#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "omnigraph/new_kernel.hpp"
#include "oracles.hpp"

using namespace omnigraph;
using omnigraph::testing::basis_kernel_bruteforce;
using omnigraph::testing::new_toy_config;
using omnigraph::testing::new_toy_pair;
using omnigraph::testing::random_graph;

TEST_CASE("node kernel is a weighted delta on kind and label") {
  WeightConfig w = new_toy_config();
  Node de1{0, NodeKind::DesignatedEntity, kDesignatedEntityLabel};
  Node de2{5, NodeKind::DesignatedEntity, kDesignatedEntityLabel};
  CHECK(node_kernel(de1, de2, w) == doctest::Approx(0.3).epsilon(1e-15));
  Node f1{1, NodeKind::FrameName, "Statement"};
  Node f2{2, NodeKind::FrameName, "Leadership"};
  CHECK(node_kernel(f1, f2, w) == 0.0);  // same kind, different label
  Node li{3, NodeKind::LexicalItem, "Statement"};
  CHECK(node_kernel(f1, li, w) == 0.0);  // same label, different kind
}

TEST_CASE("edge kernel matches on ordered endpoint kinds") {
  WeightConfig w = new_toy_config();
  auto [g, h] = new_toy_pair();
  const Edge& fills_g = g.edges[0];
  const Edge& fills_h = h.edges[0];
  const Edge& elem_g = g.edges[1];
  CHECK(edge_kernel(g, fills_g, h, fills_h, w) ==
        doctest::Approx(0.4).epsilon(1e-15));
  CHECK(edge_kernel(g, fills_g, g, elem_g, w) == 0.0);  // different pair
}

TEST_CASE("toy pair basis kernels match the published values") {
  auto [g, h] = new_toy_pair();
  WeightConfig w = new_toy_config();
  CHECK(std::abs(basis_kernel(g, h, 0, w) - 1.9) < 1e-12);
  CHECK(std::abs(basis_kernel(g, h, 1, w) - 0.084) < 1e-12);
  CHECK(std::abs(basis_kernel(g, h, 2, w) - 0.04536) < 1e-12);
  CHECK(std::abs(basis_kernel(g, h, 3, w) - 0.0) < 1e-12);
  auto all = basis_kernels(g, h, 3, w);
  REQUIRE(all.size() == 4);
  for (int p = 0; p <= 3; ++p) CHECK(all[p] == basis_kernel(g, h, p, w));
}

TEST_CASE("normalization") {
  CHECK(normalize_basis(2.0, 4.0, 2.0) == 0.5);
  CHECK(normalize_basis(0.0, 0.0, 0.0) == 0.0);
  // self-normalization gives exactly 1 for positive self values
  auto [g, h] = new_toy_pair();
  WeightConfig w = new_toy_config();
  double self0 = basis_kernel(g, g, 0, w);
  CHECK(self0 > 0);
  CHECK(normalize_basis(self0, self0, self0) == 1.0);
}

TEST_CASE("DP equals brute-force walk enumeration on random pairs") {
  std::mt19937_64 rng(11);
  WeightConfig w = new_toy_config();
  for (int t = 0; t < 150; ++t) {
    OmniGraph g = random_graph(rng);
    OmniGraph h = random_graph(rng);
    for (int p = 0; p <= 3; ++p) {
      double dp = basis_kernel(g, h, p, w);
      double brute = basis_kernel_bruteforce(g, h, p, w);
      CAPTURE(t);
      CAPTURE(p);
      CHECK(std::abs(dp - brute) < 1e-9);
    }
  }
}

TEST_CASE("zero node weight equals deleting the kind") {
  std::mt19937_64 rng(12);
  WeightConfig w = new_toy_config();
  w.node_weights[static_cast<int>(NodeKind::LexicalItem)] = 0;
  for (int t = 0; t < 30; ++t) {
    OmniGraph g = random_graph(rng);
    OmniGraph h = random_graph(rng);
    OmniGraph g2 = g;
    g2.nodes.erase(std::remove_if(g2.nodes.begin(), g2.nodes.end(),
                                  [](const Node& n) {
                                    return n.kind == NodeKind::LexicalItem;
                                  }),
                   g2.nodes.end());
    g2.edges.erase(std::remove_if(g2.edges.begin(), g2.edges.end(),
                                  [&](const Edge& e) {
                                    return !g2.find_node(e.from) ||
                                           !g2.find_node(e.to);
                                  }),
                   g2.edges.end());
    for (int p = 0; p <= 2; ++p)
      CHECK(std::abs(basis_kernel(g, h, p, w) - basis_kernel(g2, h, p, w)) <
            1e-12);
  }
}

TEST_CASE("interpolated kernel respects the alpha vector") {
  auto [g, h] = new_toy_pair();
  WeightConfig w = new_toy_config();
  w.max_depth = 1;
  w.alphas = {0.75, 0.25};
  double k0 = normalize_basis(basis_kernel(g, h, 0, w),
                              basis_kernel(g, g, 0, w),
                              basis_kernel(h, h, 0, w));
  double k1 = normalize_basis(basis_kernel(g, h, 1, w),
                              basis_kernel(g, g, 1, w),
                              basis_kernel(h, h, 1, w));
  CHECK(new_kernel(g, h, w) == doctest::Approx(0.75 * k0 + 0.25 * k1).epsilon(1e-12));

  SUBCASE("alphas must sum to 1") {
    w.alphas = {0.8, 0.3};
    CHECK_THROWS_AS(w.validate(), ConfigError);
    CHECK_THROWS_AS(new_kernel(g, h, w), ConfigError);
  }
  SUBCASE("alpha length must be max_depth+1") {
    w.alphas = {1.0};
    w.max_depth = 1;
    CHECK_THROWS_AS(w.validate(), ConfigError);
  }
}

TEST_CASE("report carries raw, self and normalized values") {
  auto [g, h] = new_toy_pair();
  WeightConfig w = new_toy_config();
  auto report = new_kernel_report(g, h, w);
  REQUIRE(report.per_degree.size() == 4);
  for (const auto& e : report.per_degree) {
    CHECK(e.normalized >= 0);
    CHECK(e.normalized <= 1.0 + 1e-12);
    CHECK(e.normalized ==
          doctest::Approx(normalize_basis(e.raw, e.self1, e.self2))
              .epsilon(1e-15));
  }
  CHECK(report.per_degree[0].raw == doctest::Approx(1.9).epsilon(1e-12));
  CHECK(report.interpolated == doctest::Approx(new_kernel(g, h, w)).epsilon(1e-12));
  auto j = report.to_json();
  CHECK(j.contains("per_degree"));
  CHECK(j.contains("interpolated"));
}

TEST_CASE("gram diagonal is 1 when self-basis values are positive") {
  std::mt19937_64 rng(13);
  WeightConfig w = new_toy_config();
  w.max_depth = 1;
  w.alphas = {0.5, 0.5};
  std::vector<OmniGraph> graphs;
  std::vector<std::string> ids;
  for (int i = 0; i < 6; ++i) {
    graphs.push_back(random_graph(rng));
    ids.push_back("g" + std::to_string(i));
  }
  auto gram = new_gram(graphs, ids, w);
  CHECK(gram.is_symmetric());
  for (size_t i = 0; i < graphs.size(); ++i) {
    bool all_positive = true;
    for (int p = 0; p <= w.max_depth; ++p)
      all_positive &= basis_kernel(graphs[i], graphs[i], p, w) > 0;
    if (all_positive)
      CHECK(gram.at(i, i) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("precomputed basis grams mix to the direct gram") {
  std::mt19937_64 rng(14);
  WeightConfig w = new_toy_config();
  w.max_depth = 2;
  w.alphas = {0.5, 0.25, 0.25};
  std::vector<OmniGraph> graphs;
  std::vector<std::string> ids;
  for (int i = 0; i < 5; ++i) {
    graphs.push_back(random_graph(rng));
    ids.push_back("g" + std::to_string(i));
  }
  NewBasisGrams basis(graphs, ids, 2, w);
  auto mixed = basis.mix(w.alphas);
  auto direct = new_gram(graphs, ids, w);
  for (size_t k = 0; k < mixed.values.size(); ++k)
    CHECK(mixed.values[k] == doctest::Approx(direct.values[k]).epsilon(1e-12));
}
