#include "model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "error.hpp"
#include "rng.hpp"

namespace netvec {

EmbeddingModel EmbeddingModel::init(size_t node_count, size_t graph_count, uint32_t dim,
                                    uint32_t window, uint64_t seed) {
  if (node_count == 0 || graph_count == 0) throw_validation("model needs nodes and graphs");
  if (dim == 0) throw_validation("embedding dimension must be positive");
  if (window < 1) throw_validation("window must be at least 1");

  EmbeddingModel m;
  m.dim_ = dim;
  m.window_ = window;
  m.node_count_ = node_count;
  m.graph_count_ = graph_count;

  double half = 0.5 / static_cast<double>(dim);
  Rng rng(seed);
  m.nodes_.resize(node_count * dim);
  for (auto& v : m.nodes_) v = rng.next_uniform(-half, half);
  m.graphs_.resize(graph_count * dim);
  for (auto& v : m.graphs_) v = rng.next_uniform(-half, half);
  m.dm_ctx_.assign(static_cast<size_t>(window - 1) * dim, 1.0);
  m.sg_ctx_.assign(static_cast<size_t>(2 * window) * dim, 1.0);
  return m;
}

std::span<double> EmbeddingModel::node_vec(uint32_t i) {
  if (i >= node_count_) throw_lookup("node vector index out of range");
  return {nodes_.data() + static_cast<size_t>(i) * dim_, dim_};
}
std::span<const double> EmbeddingModel::node_vec(uint32_t i) const {
  if (i >= node_count_) throw_lookup("node vector index out of range");
  return {nodes_.data() + static_cast<size_t>(i) * dim_, dim_};
}
std::span<double> EmbeddingModel::graph_vec(uint32_t g) {
  if (g >= graph_count_) throw_lookup("graph vector index out of range");
  return {graphs_.data() + static_cast<size_t>(g) * dim_, dim_};
}
std::span<const double> EmbeddingModel::graph_vec(uint32_t g) const {
  if (g >= graph_count_) throw_lookup("graph vector index out of range");
  return {graphs_.data() + static_cast<size_t>(g) * dim_, dim_};
}

std::span<double> EmbeddingModel::dm_weight(int position) {
  if (position < 1 || position > static_cast<int>(window_) - 1)
    throw_lookup("forward context position out of range");
  return {dm_ctx_.data() + static_cast<size_t>(position - 1) * dim_, dim_};
}
std::span<const double> EmbeddingModel::dm_weight(int position) const {
  return const_cast<EmbeddingModel*>(this)->dm_weight(position);
}

std::span<double> EmbeddingModel::sg_weight(int offset) {
  int n = static_cast<int>(window_);
  if (offset == 0 || offset < -n || offset > n) throw_lookup("context offset out of range");
  size_t row = offset < 0 ? static_cast<size_t>(offset + n) : static_cast<size_t>(offset + n - 1);
  return {sg_ctx_.data() + row * dim_, dim_};
}
std::span<const double> EmbeddingModel::sg_weight(int offset) const {
  return const_cast<EmbeddingModel*>(this)->sg_weight(offset);
}

std::vector<double> predicted_representation(const EmbeddingModel& m, const WindowSample& s) {
  if (s.context.empty()) throw_validation("window has no context");
  auto vg = m.graph_vec(s.graph);
  std::vector<double> vhat(vg.begin(), vg.end());
  for (const auto& [pos, node] : s.context) {
    auto c = m.dm_weight(pos);
    auto v = m.node_vec(node);
    for (uint32_t k = 0; k < m.dim(); ++k) vhat[k] += c[k] * v[k];
  }
  return vhat;
}

double dm_score(const EmbeddingModel& m, const WindowSample& s, uint32_t candidate) {
  auto vhat = predicted_representation(m, s);
  auto v = m.node_vec(candidate);
  double score = 0;
  for (uint32_t k = 0; k < m.dim(); ++k) score += vhat[k] * v[k];
  return score;
}

InverseScores inverse_scores(const EmbeddingModel& m, uint32_t graph, uint32_t target,
                             const std::vector<std::pair<int, uint32_t>>& context) {
  InverseScores out;
  auto vg = m.graph_vec(graph);
  auto vt = m.node_vec(target);
  for (uint32_t k = 0; k < m.dim(); ++k) out.graph_term += vg[k] * vt[k];
  out.context_terms.reserve(context.size());
  for (const auto& [offset, node] : context) {
    auto c = m.sg_weight(offset);
    auto v = m.node_vec(node);
    double term = 0;
    for (uint32_t k = 0; k < m.dim(); ++k) term += vt[k] * c[k] * v[k];
    out.context_terms.push_back(term);
  }
  return out;
}

void save_embeddings(const std::vector<std::string>& ids, const std::vector<double>& vectors,
                     uint32_t dim, const std::string& path) {
  if (ids.size() * dim != vectors.size()) throw_validation("embedding matrix shape mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write embeddings '" + path + "'");
  out << ids.size() << ' ' << dim << '\n';
  char num[64];
  for (size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (uint32_t k = 0; k < dim; ++k) {
      std::snprintf(num, sizeof(num), "%.17g", vectors[i * dim + k]);
      out << ' ' << num;
    }
    out << '\n';
  }
  if (!out) throw_io("failed writing embeddings '" + path + "'");
}

}  // namespace netvec
