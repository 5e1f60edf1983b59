#include "walker.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace netvec {

void WalkConfig::validate() const {
  if (!(p > 0) || !(q > 0)) throw_validation("walk parameters p and q must be positive");
  if (walk_length < 2) throw_validation("walk length must be at least 2");
  if (walks_per_node < 1) throw_validation("walks per node must be at least 1");
}

std::vector<double> transition_distribution(const Graph& g, uint32_t prev, uint32_t cur,
                                            const WalkConfig& cfg) {
  if (prev >= g.node_count() || cur >= g.node_count()) throw_lookup("transition node out of range");
  if (!g.has_edge(prev, cur)) throw_validation("(prev, cur) is not an edge");

  auto nb = g.neighbors(cur);
  std::vector<double> dist(nb.size());
  double z = 0;
  for (size_t j = 0; j < nb.size(); ++j) {
    uint32_t c = nb.ids[j];
    // d(prev, c) by membership: 0 when returning, 1 when c is adjacent to
    // prev, 2 otherwise; candidates are neighbors of cur, so never further.
    double bias;
    if (c == prev)
      bias = 1.0 / cfg.p;
    else if (g.has_edge(prev, c))
      bias = 1.0;
    else
      bias = 1.0 / cfg.q;
    dist[j] = bias * nb.weights[j];
    z += dist[j];
  }
  for (auto& v : dist) v /= z;
  return dist;
}

std::vector<double> first_step_distribution(const Graph& g, uint32_t root) {
  if (root >= g.node_count()) throw_lookup("root node out of range");
  auto nb = g.neighbors(root);
  std::vector<double> dist(nb.size());
  double z = 0;
  for (size_t j = 0; j < nb.size(); ++j) z += nb.weights[j];
  for (size_t j = 0; j < nb.size(); ++j) dist[j] = nb.weights[j] / z;
  return dist;
}

TransitionTables::TransitionTables(const Graph& g, const WalkConfig& cfg) : g_(g) {
  size_t n = g.node_count();
  node_tables_.resize(n);
  node_live_.assign(n, 0);
  for (uint32_t v = 0; v < n; ++v) {
    if (g.out_degree(v) == 0) continue;
    auto dist = first_step_distribution(g, v);
    node_tables_[v] = AliasTable::build(dist, g.neighbors(v).ids);
    node_live_[v] = 1;
  }

  edge_tables_.resize(g.directed_pair_count());
  edge_live_flags_.assign(g.directed_pair_count(), 0);
  size_t pos = 0;
  for (uint32_t prev = 0; prev < n; ++prev) {
    auto nb = g.neighbors(prev);
    for (size_t j = 0; j < nb.size(); ++j, ++pos) {
      uint32_t cur = nb.ids[j];
      if (g.out_degree(cur) == 0) continue;  // walk dies there anyway
      auto dist = transition_distribution(g, prev, cur, cfg);
      edge_tables_[pos] = AliasTable::build(dist, g.neighbors(cur).ids);
      edge_live_flags_[pos] = 1;
      ++edge_live_;
    }
  }
}

const AliasTable* TransitionTables::first_step(uint32_t root) const {
  return node_live_[root] ? &node_tables_[root] : nullptr;
}

const AliasTable* TransitionTables::step(uint32_t prev, uint32_t cur) const {
  size_t index = g_.edge_position(prev, cur);
  if (index == Graph::npos) return nullptr;
  return edge_live_flags_[index] ? &edge_tables_[index] : nullptr;
}

namespace {

std::vector<uint32_t> simulate_walk(const Graph& g, uint32_t root, const WalkConfig& cfg,
                                    const TransitionTables* tables, Rng& rng) {
  std::vector<uint32_t> walk;
  walk.reserve(cfg.walk_length);
  walk.push_back(root);
  if (g.out_degree(root) == 0 || cfg.walk_length < 2) return walk;

  auto draw = [&](const AliasTable* cached, auto&& make_dist, uint32_t over) -> uint32_t {
    if (cached) return cached->sample(rng);
    auto dist = make_dist();
    AliasTable t = AliasTable::build(dist, g.neighbors(over).ids);
    return t.sample(rng);
  };

  uint32_t first = draw(tables ? tables->first_step(root) : nullptr,
                        [&] { return first_step_distribution(g, root); }, root);
  walk.push_back(first);

  while (walk.size() < cfg.walk_length) {
    uint32_t prev = walk[walk.size() - 2], cur = walk.back();
    if (g.out_degree(cur) == 0) break;  // dead end terminates the walk
    uint32_t next = draw(tables ? tables->step(prev, cur) : nullptr,
                         [&] { return transition_distribution(g, prev, cur, cfg); }, cur);
    walk.push_back(next);
  }
  return walk;
}

// Deterministic Fisher-Yates so the corpus does not depend on the standard
// library's shuffle implementation.
template <typename T>
void seeded_shuffle(std::vector<T>& v, uint64_t seed) {
  Rng rng(seed);
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

uint64_t WalkCorpus::total_occurrences() const {
  uint64_t total = 0;
  for (const auto& w : walks) total += w.nodes.size();
  return total;
}

WalkCorpus generate_corpus(const std::vector<const Graph*>& graphs, const WalkConfig& cfg,
                           uint32_t workers) {
  cfg.validate();
  if (graphs.empty()) throw_validation("no graphs to walk");
  for (const Graph* g : graphs)
    if (g == nullptr || g->node_count() == 0) throw_validation("cannot walk an empty graph");

  WalkCorpus corpus;
  corpus.graph_count = static_cast<uint32_t>(graphs.size());

  // Shared vocabulary over external labels, first seen in graph order.
  std::vector<std::vector<uint32_t>> to_vocab(graphs.size());
  for (size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = *graphs[gi];
    to_vocab[gi].resize(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
      const std::string& label = g.label(v);
      auto it = corpus.vocab_index.find(label);
      if (it == corpus.vocab_index.end()) {
        uint32_t id = static_cast<uint32_t>(corpus.vocab.size());
        corpus.vocab.push_back(label);
        corpus.vocab_index.emplace(label, id);
        to_vocab[gi][v] = id;
      } else {
        to_vocab[gi][v] = it->second;
      }
    }
  }

  std::vector<std::unique_ptr<TransitionTables>> tables(graphs.size());
  if (cfg.precompute)
    for (size_t gi = 0; gi < graphs.size(); ++gi)
      tables[gi] = std::make_unique<TransitionTables>(*graphs[gi], cfg);

  // Repetition-outer, graph-major, root-minor task order; every task draws
  // from its own derived seed so the result is identical for any worker count.
  struct Task {
    uint32_t rep, graph, root;
  };
  std::vector<Task> tasks;
  for (uint32_t rep = 0; rep < cfg.walks_per_node; ++rep)
    for (uint32_t gi = 0; gi < graphs.size(); ++gi)
      for (uint32_t v = 0; v < graphs[gi]->node_count(); ++v) tasks.push_back({rep, gi, v});

  corpus.walks.resize(tasks.size());
  auto run_range = [&](size_t lo, size_t hi) {
    for (size_t t = lo; t < hi; ++t) {
      const Task& task = tasks[t];
      Rng rng(mix_seed(cfg.seed, task.root, task.graph, task.rep));
      auto walk = simulate_walk(*graphs[task.graph], task.root, cfg,
                                cfg.precompute ? tables[task.graph].get() : nullptr, rng);
      auto& out = corpus.walks[t];
      out.graph = task.graph;
      out.nodes.resize(walk.size());
      const auto& remap = to_vocab[task.graph];
      for (size_t i = 0; i < walk.size(); ++i) out.nodes[i] = remap[walk[i]];
    }
  };

  if (workers <= 1) {
    run_range(0, tasks.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (tasks.size() + workers - 1) / workers;
    for (uint32_t w = 0; w < workers; ++w) {
      size_t lo = std::min(tasks.size(), static_cast<size_t>(w) * chunk);
      size_t hi = std::min(tasks.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  seeded_shuffle(corpus.walks, mix_seed(cfg.seed, 0x53484646ULL));

  corpus.node_counts.assign(corpus.vocab.size(), 0);
  for (const auto& w : corpus.walks)
    for (uint32_t v : w.nodes) ++corpus.node_counts[v];
  return corpus;
}

WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg, uint32_t workers) {
  return generate_corpus(std::vector<const Graph*>{&g}, cfg, workers);
}

void save_corpus(const WalkCorpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write corpus '" + path + "'");
  for (const auto& w : corpus.walks) {
    out << w.graph << '\t';
    for (size_t i = 0; i < w.nodes.size(); ++i) {
      if (i) out << ' ';
      out << corpus.vocab[w.nodes[i]];
    }
    out << '\n';
  }
  if (!out) throw_io("failed writing corpus '" + path + "'");
}

WalkCorpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open corpus '" + path + "'");

  WalkCorpus corpus;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw_parse(path + ":" + std::to_string(lineno) + ": expected 'graphId<TAB>nodes...'");
    uint32_t gid = 0;
    try {
      gid = static_cast<uint32_t>(std::stoul(line.substr(0, tab)));
    } catch (const std::exception&) {
      throw_parse(path + ":" + std::to_string(lineno) + ": bad graph id");
    }
    WalkCorpus::Walk w;
    w.graph = gid;
    corpus.graph_count = std::max(corpus.graph_count, gid + 1);
    std::istringstream rest(line.substr(tab + 1));
    std::string tok;
    while (rest >> tok) {
      auto it = corpus.vocab_index.find(tok);
      uint32_t id;
      if (it == corpus.vocab_index.end()) {
        id = static_cast<uint32_t>(corpus.vocab.size());
        corpus.vocab.push_back(tok);
        corpus.vocab_index.emplace(tok, id);
      } else {
        id = it->second;
      }
      w.nodes.push_back(id);
    }
    if (w.nodes.empty())
      throw_parse(path + ":" + std::to_string(lineno) + ": walk with no nodes");
    corpus.walks.push_back(std::move(w));
  }
  corpus.node_counts.assign(corpus.vocab.size(), 0);
  for (const auto& w : corpus.walks)
    for (uint32_t v : w.nodes) ++corpus.node_counts[v];
  return corpus;
}

}  // namespace netvec
