#include <numeric>

#include "doctest.h"
#include "error.hpp"
#include "support.hpp"
#include "walker.hpp"

using namespace netvec;
using testsupport::data_path;
using testsupport::random_graph;

TEST_SUITE_BEGIN("walker");

TEST_CASE("p=q=1 on an unweighted graph is uniform over neighbors") {
  auto g = parse_edge_list("a b\nb c\nb d\na c\n", false, "mem");
  WalkConfig cfg;
  auto dist = transition_distribution(g, g.id_of("a"), g.id_of("b"), cfg);
  REQUIRE(dist.size() == 3);
  for (double p : dist) CHECK(p == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("path a-b-c with p=2 q=0.5 gives P(a)=0.2 P(c)=0.8") {
  // direct evaluation: unnormalized {1/p, 1/q} = {0.5, 2}, Z = 2.5
  auto g = parse_edge_list("a b\nb c\n", false, "mem");
  WalkConfig cfg;
  cfg.p = 2.0;
  cfg.q = 0.5;
  auto dist = transition_distribution(g, g.id_of("a"), g.id_of("b"), cfg);
  auto nb = g.neighbors(g.id_of("b"));
  REQUIRE(dist.size() == 2);
  for (size_t j = 0; j < 2; ++j) {
    if (nb.ids[j] == g.id_of("a"))
      CHECK(dist[j] == doctest::Approx(0.2));
    else
      CHECK(dist[j] == doctest::Approx(0.8));
  }
}

TEST_CASE("triangle: the non-return candidate is at distance 1") {
  auto g = parse_edge_list("a b\nb c\na c\n", false, "mem");
  for (double p : {0.3, 1.0, 4.0}) {
    for (double q : {0.25, 1.0, 2.0}) {
      WalkConfig cfg;
      cfg.p = p;
      cfg.q = q;
      auto dist = transition_distribution(g, g.id_of("a"), g.id_of("b"), cfg);
      double z = 1.0 / p + 1.0;
      auto nb = g.neighbors(g.id_of("b"));
      for (size_t j = 0; j < dist.size(); ++j) {
        if (nb.ids[j] == g.id_of("a"))
          CHECK(dist[j] == doctest::Approx((1.0 / p) / z));
        else
          CHECK(dist[j] == doctest::Approx(1.0 / z));
      }
    }
  }
}

TEST_CASE("transition distributions sum to one") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto g = random_graph(seed, 12, 0.3, false, true);
    WalkConfig cfg;
    cfg.p = 0.5;
    cfg.q = 2.0;
    for (uint32_t prev = 0; prev < g.node_count(); ++prev) {
      for (uint32_t cur : g.neighbors(prev).ids) {
        auto dist = transition_distribution(g, prev, cur, cfg);
        if (dist.empty()) continue;
        double sum = std::accumulate(dist.begin(), dist.end(), 0.0);
        CHECK(std::fabs(sum - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("with p=q=1 the second-order kernel equals the first-order kernel") {
  for (uint64_t seed = 5; seed < 10; ++seed) {
    auto g = random_graph(seed, 10, 0.35, false, true);
    WalkConfig cfg;  // p = q = 1
    for (uint32_t prev = 0; prev < g.node_count(); ++prev) {
      for (uint32_t cur : g.neighbors(prev).ids) {
        if (g.out_degree(cur) == 0) continue;
        auto second = transition_distribution(g, prev, cur, cfg);
        auto first = first_step_distribution(g, cur);
        REQUIRE(second.size() == first.size());
        for (size_t j = 0; j < first.size(); ++j)
          CHECK(std::fabs(second[j] - first[j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("transition requires a real edge") {
  auto g = parse_edge_list("a b\nc d\n", false, "mem");
  WalkConfig cfg;
  CHECK_THROWS_AS(transition_distribution(g, g.id_of("a"), g.id_of("c"), cfg), Error);
}

TEST_CASE("first step follows edge weights") {
  auto g = parse_edge_list("hub x 1\nhub y 3\n", false, "mem");
  auto dist = first_step_distribution(g, g.id_of("hub"));
  auto nb = g.neighbors(g.id_of("hub"));
  for (size_t j = 0; j < dist.size(); ++j)
    CHECK(dist[j] == doctest::Approx(nb.ids[j] == g.id_of("x") ? 0.25 : 0.75));
}

TEST_CASE("first step from a karate node is uniform at 1/degree") {
  auto g = load_edge_list(data_path("karate.edgelist"), false);
  uint32_t one = g.id_of("1");
  auto dist = first_step_distribution(g, one);
  REQUIRE(dist.size() == 16);
  for (double p : dist) CHECK(p == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("star center first step is uniform over leaves") {
  auto g = parse_edge_list("s a\ns b\ns c\ns d\n", false, "mem");
  auto dist = first_step_distribution(g, g.id_of("s"));
  for (double p : dist) CHECK(p == doctest::Approx(0.25));
}

TEST_CASE("dead ends produce empty distributions") {
  auto g = parse_edge_list("a b\n", true, "mem");  // b has no out-neighbors
  WalkConfig cfg;
  CHECK(transition_distribution(g, g.id_of("a"), g.id_of("b"), cfg).empty());
  CHECK(first_step_distribution(g, g.id_of("b")).empty());
}

TEST_CASE("precompute stores one table per directed edge pair") {
  auto karate = load_edge_list(data_path("karate.edgelist"), false);
  WalkConfig cfg;
  TransitionTables tables(karate, cfg);
  CHECK(tables.edge_table_count() == karate.directed_pair_count());
  CHECK(tables.edge_table_count() == 2 * karate.edge_count());

  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto g = random_graph(seed, 12, 0.3);
    TransitionTables t(g, cfg);
    CHECK(t.edge_table_count() == g.directed_pair_count());
  }
}

TEST_CASE("an isolated node yields r walks of length 1") {
  auto g = parse_edge_list("lonely\n", false, "mem");
  WalkConfig cfg;
  cfg.walks_per_node = 10;
  auto corpus = generate_corpus(g, cfg);
  REQUIRE(corpus.walks.size() == 10);
  for (const auto& w : corpus.walks) {
    CHECK(w.nodes.size() == 1);
    CHECK(corpus.vocab[w.nodes[0]] == "lonely");
  }
}

TEST_CASE("karate with r=10 gives exactly 340 walks of length 80") {
  auto g = load_edge_list(data_path("karate.edgelist"), false);
  WalkConfig cfg;  // defaults r=10, l=80
  auto corpus = generate_corpus(g, cfg);
  CHECK(corpus.walks.size() == 340);
  for (const auto& w : corpus.walks) CHECK(w.nodes.size() == 80);
  CHECK(corpus.total_occurrences() == 340 * 80);
  uint64_t counted = 0;
  for (uint64_t c : corpus.node_counts) counted += c;
  CHECK(counted == corpus.total_occurrences());
}

TEST_CASE("a two-node path forces alternating walks") {
  auto g = parse_edge_list("a b\n", false, "mem");
  WalkConfig cfg;
  cfg.walk_length = 5;
  cfg.walks_per_node = 2;
  auto corpus = generate_corpus(g, cfg);
  for (const auto& w : corpus.walks) {
    REQUIRE(w.nodes.size() == 5);
    for (size_t i = 1; i < w.nodes.size(); ++i) CHECK(w.nodes[i] != w.nodes[i - 1]);
  }
}

TEST_CASE("every walk is a valid path in its graph") {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto g = random_graph(seed, 15, 0.25, seed == 2, true);
    WalkConfig cfg;
    cfg.walk_length = 12;
    cfg.walks_per_node = 3;
    cfg.seed = seed;
    cfg.p = 0.5;
    cfg.q = 2.0;
    auto corpus = generate_corpus(g, cfg);
    CHECK(corpus.walks.size() == g.node_count() * 3);
    for (const auto& w : corpus.walks) {
      for (size_t i = 1; i < w.nodes.size(); ++i) {
        uint32_t u = g.id_of(corpus.vocab[w.nodes[i - 1]]);
        uint32_t v = g.id_of(corpus.vocab[w.nodes[i]]);
        CHECK(g.has_edge(u, v));
      }
    }
  }
}

TEST_CASE("same seed and config give byte-identical corpora") {
  auto g = load_edge_list(data_path("karate.edgelist"), false);
  WalkConfig cfg;
  cfg.walk_length = 20;
  cfg.walks_per_node = 3;
  cfg.seed = 77;
  testsupport::TempDir tmp("corpus_det");
  auto c1 = generate_corpus(g, cfg);
  auto c2 = generate_corpus(g, cfg);
  save_corpus(c1, tmp.file("c1.walks"));
  save_corpus(c2, tmp.file("c2.walks"));
  CHECK(testsupport::read_file(tmp.file("c1.walks")) ==
        testsupport::read_file(tmp.file("c2.walks")));
}

TEST_CASE("corpus is identical for any worker count") {
  auto g = load_edge_list(data_path("karate.edgelist"), false);
  WalkConfig cfg;
  cfg.walk_length = 15;
  cfg.walks_per_node = 2;
  cfg.seed = 5;
  testsupport::TempDir tmp("corpus_workers");
  save_corpus(generate_corpus(g, cfg, 1), tmp.file("w1.walks"));
  save_corpus(generate_corpus(g, cfg, 4), tmp.file("w4.walks"));
  CHECK(testsupport::read_file(tmp.file("w1.walks")) ==
        testsupport::read_file(tmp.file("w4.walks")));
}

TEST_CASE("precompute on and off sample identical corpora") {
  auto g = random_graph(3, 12, 0.3, false, true);
  WalkConfig cfg;
  cfg.walk_length = 10;
  cfg.walks_per_node = 2;
  cfg.seed = 9;
  cfg.p = 0.7;
  cfg.q = 1.4;
  cfg.precompute = true;
  auto on = generate_corpus(g, cfg);
  cfg.precompute = false;
  auto off = generate_corpus(g, cfg);
  REQUIRE(on.walks.size() == off.walks.size());
  for (size_t i = 0; i < on.walks.size(); ++i) CHECK(on.walks[i].nodes == off.walks[i].nodes);
}

TEST_CASE("corpus file round trip preserves walks") {
  auto g = random_graph(8, 10, 0.3);
  WalkConfig cfg;
  cfg.walk_length = 8;
  cfg.walks_per_node = 2;
  testsupport::TempDir tmp("corpus_io");
  auto corpus = generate_corpus(g, cfg);
  save_corpus(corpus, tmp.file("c.walks"));
  auto loaded = load_corpus(tmp.file("c.walks"));
  REQUIRE(loaded.walks.size() == corpus.walks.size());
  CHECK(loaded.graph_count == corpus.graph_count);
  for (size_t i = 0; i < corpus.walks.size(); ++i) {
    REQUIRE(loaded.walks[i].nodes.size() == corpus.walks[i].nodes.size());
    CHECK(loaded.walks[i].graph == corpus.walks[i].graph);
    for (size_t j = 0; j < corpus.walks[i].nodes.size(); ++j)
      CHECK(loaded.vocab[loaded.walks[i].nodes[j]] == corpus.vocab[corpus.walks[i].nodes[j]]);
  }
  uint64_t counted = 0;
  for (uint64_t c : loaded.node_counts) counted += c;
  CHECK(counted == loaded.total_occurrences());
}

TEST_CASE("multi-graph corpora share the vocabulary by label") {
  auto g1 = parse_edge_list("a b\nb c\n", false, "mem");
  auto g2 = parse_edge_list("b c\nc d\n", false, "mem");
  WalkConfig cfg;
  cfg.walk_length = 4;
  cfg.walks_per_node = 2;
  auto corpus = generate_corpus({&g1, &g2}, cfg);
  CHECK(corpus.graph_count == 2);
  CHECK(corpus.vocab.size() == 4);  // a b c d shared
  CHECK(corpus.walks.size() == 2 * 3 + 2 * 3);
}

TEST_CASE("config validation rejects bad parameters") {
  auto g = parse_edge_list("a b\n", false, "mem");
  WalkConfig cfg;
  cfg.p = 0;
  CHECK_THROWS_AS(generate_corpus(g, cfg), Error);
  cfg = WalkConfig{};
  cfg.walk_length = 1;
  CHECK_THROWS_AS(generate_corpus(g, cfg), Error);
  cfg = WalkConfig{};
  cfg.walks_per_node = 0;
  CHECK_THROWS_AS(generate_corpus(g, cfg), Error);
  Graph empty;
  CHECK_THROWS_AS(generate_corpus(empty, WalkConfig{}), Error);
}

TEST_SUITE_END();
