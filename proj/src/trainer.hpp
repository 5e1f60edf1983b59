#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "alias.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "walker.hpp"

namespace netvec {

enum class Architecture { Dm, Inverse };

struct TrainConfig {
  Architecture architecture = Architecture::Inverse;
  uint32_t window = 10;        // n
  uint32_t negatives = 5;      // k
  uint32_t epochs = 1;
  double lr0 = 0.025;
  double lr_min = 0;           // 0 means lr0 * 1e-4
  double noise_exponent = 0.0; // alpha in count^alpha; uniform noise by default
  uint64_t seed = 1;
  uint32_t workers = 1;

  double effective_lr_min() const { return lr_min > 0 ? lr_min : lr0 * 1e-4; }
  void validate() const;
};

// Unigram noise distribution P_n(v) proportional to count(v)^alpha, with an
// alias table over the nodes that actually occur.
struct NoiseDistribution {
  std::vector<uint32_t> ids;   // support, ascending
  std::vector<double> probs;   // sums to 1
  AliasTable table;

  static NoiseDistribution build(const WalkCorpus& corpus, double alpha);
  uint32_t sample(Rng& rng) const { return table.sample(rng); }
};

// log sigma(positive) + sum_m log sigma(-negative_m), logits clamped to +-30.
double ns_objective(double positive_score, std::span<const double> negative_scores);

// Negatives fixed ahead of the update so the same window objective can be
// re-evaluated under perturbed parameters.
struct DmNegatives {
  std::vector<uint32_t> nodes;  // up to k entries; collisions with the target are redrawn
};
struct InverseNegatives {
  std::vector<uint32_t> graph_term;
  std::vector<std::vector<uint32_t>> context_terms;  // parallel to sample.context
};

// Reusable per-worker buffers so the training loop stays allocation-free.
struct StepScratch {
  std::vector<uint32_t> candidates;
  std::vector<double> coef;
  std::vector<double> vhat, e, vg_orig, vt_orig, d_vg, d_vt;
  std::vector<double> ctx_weight_delta, ctx_node_delta;
  std::vector<long> pending_term;
};

double dm_window_objective(const EmbeddingModel& m, const WindowSample& s, const DmNegatives& negs);
double dm_window_update(EmbeddingModel& m, const WindowSample& s, const DmNegatives& negs,
                        double lr);
double dm_window_update(EmbeddingModel& m, const WindowSample& s, const DmNegatives& negs,
                        double lr, StepScratch& scratch);

double inverse_window_objective(const EmbeddingModel& m, const WindowSample& s,
                                const InverseNegatives& negs);
double inverse_window_update(EmbeddingModel& m, const WindowSample& s,
                             const InverseNegatives& negs, double lr);
double inverse_window_update(EmbeddingModel& m, const WindowSample& s,
                             const InverseNegatives& negs, double lr, StepScratch& scratch);

DmNegatives draw_dm_negatives(const NoiseDistribution& noise, Rng& rng, uint32_t target,
                              uint32_t k);
InverseNegatives draw_inverse_negatives(const NoiseDistribution& noise, Rng& rng,
                                        const WindowSample& s, uint32_t k);
void draw_negatives_into(const NoiseDistribution& noise, Rng& rng, uint32_t positive, uint32_t k,
                         std::vector<uint32_t>& out);

// One stochastic gradient-ascent step on a sampled window; returns the
// pre-update objective.
double dm_step(EmbeddingModel& m, const WindowSample& s, const NoiseDistribution& noise, Rng& rng,
               const TrainConfig& cfg, double lr);
double inverse_step(EmbeddingModel& m, const WindowSample& s, const NoiseDistribution& noise,
                    Rng& rng, const TrainConfig& cfg, double lr);

// Window enumeration. The forward architecture slides full length-n windows
// and predicts the last position; walks shorter than n yield one truncated
// window. The inverse architecture centers every position with symmetric
// context clipped at the walk ends.
size_t count_windows(std::span<const uint32_t> walk, Architecture arch, uint32_t n);
template <typename F>
void for_each_window(std::span<const uint32_t> walk, uint32_t graph, Architecture arch, uint32_t n,
                     WindowSample& scratch, F&& fn);

struct TrainReport {
  std::vector<double> epoch_mean;        // mean window objective per epoch
  std::array<double, 10> decile_mean{};  // mean objective per tenth of all scheduled samples
  uint64_t samples = 0;
};

TrainReport train(EmbeddingModel& m, const WalkCorpus& corpus, const TrainConfig& cfg);

// --- template definition ---

template <typename F>
void for_each_window(std::span<const uint32_t> walk, uint32_t graph, Architecture arch, uint32_t n,
                     WindowSample& s, F&& fn) {
  size_t len = walk.size();
  s.graph = graph;
  if (arch == Architecture::Dm) {
    if (len < 2) return;
    int in = static_cast<int>(n);
    auto emit = [&](size_t begin, size_t target) {
      s.context.clear();
      for (size_t j = begin; j < target; ++j) {
        int distance = static_cast<int>(target - j);
        s.context.emplace_back(in - distance, walk[j]);
      }
      s.target = walk[target];
      fn(s);
    };
    if (len < n) {
      emit(0, len - 1);
    } else {
      for (size_t start = 0; start + n <= len; ++start) emit(start, start + n - 1);
    }
  } else {
    int in = static_cast<int>(n);
    for (size_t t = 0; t < len; ++t) {
      s.context.clear();
      for (int o = -in; o <= in; ++o) {
        if (o == 0) continue;
        long j = static_cast<long>(t) + o;
        if (j < 0 || j >= static_cast<long>(len)) continue;
        s.context.emplace_back(o, walk[static_cast<size_t>(j)]);
      }
      s.target = walk[t];
      fn(s);
    }
  }
}

}  // namespace netvec
