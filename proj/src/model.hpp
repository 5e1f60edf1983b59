#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netvec {

// One training window. For the forward architecture the context positions are
// 1..n-1 with n-1 adjacent to the target; for the inverse architecture they
// are signed offsets in [-n, -1] or [1, n].
struct WindowSample {
  uint32_t graph = 0;
  uint32_t target = 0;
  std::vector<std::pair<int, uint32_t>> context;  // (position, node)
};

// All trainable parameters: node vectors v_i (shared between target and
// context roles), per-graph global vectors v_G, and the position weight
// vectors c_i of both architectures.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  // Node and graph vectors uniform in [-0.5/d, +0.5/d]; position weights start
  // at all-ones. Deterministic under seed.
  static EmbeddingModel init(size_t node_count, size_t graph_count, uint32_t dim, uint32_t window,
                             uint64_t seed);

  uint32_t dim() const { return dim_; }
  uint32_t window() const { return window_; }
  size_t node_count() const { return node_count_; }
  size_t graph_count() const { return graph_count_; }

  std::span<double> node_vec(uint32_t i);
  std::span<const double> node_vec(uint32_t i) const;
  std::span<double> graph_vec(uint32_t g);
  std::span<const double> graph_vec(uint32_t g) const;
  // Forward-architecture weight for position 1..window-1.
  std::span<double> dm_weight(int position);
  std::span<const double> dm_weight(int position) const;
  // Inverse-architecture weight for signed offset in [-window, -1] or [1, window].
  std::span<double> sg_weight(int offset);
  std::span<const double> sg_weight(int offset) const;

  // Whole parameter blocks, used by serialization and gradient checks.
  std::span<double> node_block() { return nodes_; }
  std::span<double> graph_block() { return graphs_; }
  std::span<double> dm_block() { return dm_ctx_; }
  std::span<double> sg_block() { return sg_ctx_; }
  std::span<const double> node_block() const { return nodes_; }
  std::span<const double> graph_block() const { return graphs_; }

  bool operator==(const EmbeddingModel& other) const = default;

 private:
  uint32_t dim_ = 0, window_ = 0;
  size_t node_count_ = 0, graph_count_ = 0;
  std::vector<double> nodes_, graphs_, dm_ctx_, sg_ctx_;
};

// v_hat = v_G + sum_i c_i (*) v_i over the context positions present.
std::vector<double> predicted_representation(const EmbeddingModel& m, const WindowSample& s);

// v_hat . v_candidate, the negated window energy.
double dm_score(const EmbeddingModel& m, const WindowSample& s, uint32_t candidate);

struct InverseScores {
  double graph_term = 0;                // v_G . v_t
  std::vector<double> context_terms;    // v_t . (c_i (*) v_i) per context entry
};

InverseScores inverse_scores(const EmbeddingModel& m, uint32_t graph, uint32_t target,
                             const std::vector<std::pair<int, uint32_t>>& context);

// Text embedding file: header "count dim", then "id v1 ... vd" per line.
void save_embeddings(const std::vector<std::string>& ids, const std::vector<double>& vectors,
                     uint32_t dim, const std::string& path);

}  // namespace netvec
