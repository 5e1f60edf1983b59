#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "trainer.hpp"
#include "walker.hpp"

namespace netvec {

// Frozen id -> vector collection read back from an embedding file; dense
// indices follow file order.
struct EmbeddingSet {
  std::vector<std::string> ids;
  std::map<std::string, uint32_t> index;
  std::vector<double> data;
  uint32_t dim = 0;

  static EmbeddingSet load(const std::string& path);
  static EmbeddingSet from_rows(std::vector<std::string> row_ids, std::vector<double> rows,
                                uint32_t dim);
  void save(const std::string& path) const;

  size_t count() const { return ids.size(); }
  std::span<const double> vec(uint32_t i) const { return {data.data() + size_t(i) * dim, dim}; }
  bool contains(const std::string& id) const { return index.count(id) != 0; }
  uint32_t id_of(const std::string& id) const;
};

// node id -> sorted label set; labels of every entry must exist in the
// embedding vocabulary of the task at hand.
using EvalLabeling = std::map<std::string, std::vector<std::string>>;

EvalLabeling load_labels(const std::string& path);
void validate_labeling(const EvalLabeling& labels, const EmbeddingSet& embeddings);

double cosine(std::span<const double> u, std::span<const double> v);

// Fraction of the top-k labeled nodes (excluding the query, cosine descending,
// ties by ascending index) sharing at least one label with the query.
double precision_at_k(const EmbeddingSet& e, uint32_t query, const EvalLabeling& labels,
                      uint32_t k);
// Mean precision at each cut-off over all labeled nodes.
std::vector<double> mean_precision_at(const EmbeddingSet& e, const EvalLabeling& labels,
                                      std::span<const uint32_t> ks);

struct AnalogyTuple {
  std::string a, b, c, d;
};
std::vector<AnalogyTuple> load_tuples(const std::string& path, const EmbeddingSet& e);

// All nodes except {a, b, c} ranked by cosine to v_b - v_a + v_c.
std::vector<uint32_t> analogy_query(const EmbeddingSet& e, uint32_t a, uint32_t b, uint32_t c);
// Hit rate of the true d within the top k, per cut-off.
std::vector<double> analogy_hit_rates(const EmbeddingSet& e,
                                      const std::vector<AnalogyTuple>& tuples,
                                      std::span<const uint32_t> ks);

// One-vs-rest logistic regression with L2 regularization, full-batch gradient
// descent with backtracking line search.
struct OvrLogReg {
  std::vector<std::string> labels;
  std::vector<double> weights;  // label-major, dim per label
  std::vector<double> bias;
  std::vector<uint8_t> no_positives;  // flagged labels that always predict negative
  uint32_t dim = 0;

  double probability(size_t label_idx, std::span<const double> x) const;
};

OvrLogReg train_ovr_logreg(const EmbeddingSet& features, const EvalLabeling& labels, double l2,
                           const std::vector<std::string>& train_ids);

// Mean regularized logistic loss and its gradient, exposed for checks.
double logreg_loss(std::span<const double> xs, std::span<const double> ys, uint32_t dim,
                   std::span<const double> w, double b, double l2);
void logreg_gradient(std::span<const double> xs, std::span<const double> ys, uint32_t dim,
                     std::span<const double> w, double b, double l2, std::span<double> grad_w,
                     double* grad_b);

// Full-batch descent with backtracking line search until the gradient norm
// drops under 1e-6 or 1000 iterations; the returned loss trace is monotone.
std::vector<double> fit_binary_logreg(std::span<const double> xs, std::span<const double> ys,
                                      uint32_t dim, double l2, std::span<double> w_out,
                                      double* b_out);

struct F1Scores {
  double macro = 0;
  double micro = 0;
};

// Threshold 0.5 with a top-1 fallback so no prediction set is empty; macro
// averages per-label F1 over the labels present in the test gold or in the
// predictions, micro pools all decisions.
F1Scores multilabel_f1(const OvrLogReg& clf, const EmbeddingSet& features,
                       const std::vector<std::string>& test_ids, const EvalLabeling& labels);

double top1_accuracy(const OvrLogReg& clf, const EmbeddingSet& features,
                     const std::vector<std::string>& ids, const EvalLabeling& labels);

// Repeated seeded stratified splits (by first label); returns mean scores.
F1Scores classify_protocol(const EmbeddingSet& features, const EvalLabeling& labels,
                           double train_fraction, uint32_t repeats, double l2, uint64_t seed);

struct RolePipelineResult {
  std::vector<std::pair<uint32_t, double>> precision;  // (k, mean p@k)
  EmbeddingSet graph_vectors;                          // keyed by center label
};

// Ego-network extraction for every center, joint training over the M ego
// networks with a shared node vocabulary, then precision@k on the per-graph
// global vectors.
RolePipelineResult role_discovery_pipeline(const Graph& g, const std::vector<std::string>& centers,
                                           const EvalLabeling& labels, const WalkConfig& wcfg,
                                           const TrainConfig& tcfg, uint32_t dim,
                                           std::span<const uint32_t> ks);

// Plot-ready dump of a 2-d embedding set: "id,x,y,tag" per line.
void write_projection(const EmbeddingSet& e, const EvalLabeling* tags, const std::string& path);

}  // namespace netvec
