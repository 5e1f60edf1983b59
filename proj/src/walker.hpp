#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "alias.hpp"
#include "graph.hpp"

namespace netvec {

struct WalkConfig {
  double p = 1.0;                 // return parameter
  double q = 1.0;                 // in-out parameter
  uint32_t walk_length = 80;      // nodes per walk, including the root
  uint32_t walks_per_node = 10;   // repetitions per root
  uint64_t seed = 1;
  bool precompute = true;         // cache one alias table per directed edge pair

  void validate() const;
};

// Second-order transition distribution over neighbors(cur), aligned with the
// adjacency order. Empty result signals a dead end (cur has no out-neighbors).
std::vector<double> transition_distribution(const Graph& g, uint32_t prev, uint32_t cur,
                                            const WalkConfig& cfg);

// First-order distribution over neighbors(root), proportional to edge weights.
std::vector<double> first_step_distribution(const Graph& g, uint32_t root);

// Precomputed alias tables: one per node for the first step, one per directed
// edge pair (prev -> cur) for subsequent steps.
class TransitionTables {
 public:
  TransitionTables(const Graph& g, const WalkConfig& cfg);

  const AliasTable* first_step(uint32_t root) const;
  const AliasTable* step(uint32_t prev, uint32_t cur) const;
  size_t edge_table_count() const { return edge_live_; }

 private:
  const Graph& g_;
  std::vector<AliasTable> node_tables_;
  std::vector<AliasTable> edge_tables_;  // indexed by CSR position of (prev -> cur)
  std::vector<uint8_t> node_live_, edge_live_flags_;
  size_t edge_live_ = 0;
};

// Ordered node sequences over a shared vocabulary assembled from the input
// graphs' external labels.
struct WalkCorpus {
  struct Walk {
    uint32_t graph = 0;
    std::vector<uint32_t> nodes;  // vocabulary ids
  };

  std::vector<std::string> vocab;
  std::unordered_map<std::string, uint32_t> vocab_index;
  std::vector<Walk> walks;
  std::vector<uint64_t> node_counts;
  uint32_t graph_count = 0;

  uint64_t total_occurrences() const;
};

WalkCorpus generate_corpus(const std::vector<const Graph*>& graphs, const WalkConfig& cfg,
                           uint32_t workers = 1);
WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg, uint32_t workers = 1);

// One walk per line: "graphId<TAB>node1 node2 ... nodek" with external labels.
void save_corpus(const WalkCorpus& corpus, const std::string& path);
WalkCorpus load_corpus(const std::string& path);

}  // namespace netvec
