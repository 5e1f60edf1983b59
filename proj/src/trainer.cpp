#include "trainer.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "error.hpp"

namespace netvec {

namespace {

constexpr double kMaxLogit = 30.0;

double sigmoid(double x) {
  if (x > kMaxLogit) x = kMaxLogit;
  if (x < -kMaxLogit) x = -kMaxLogit;
  return 1.0 / (1.0 + std::exp(-x));
}

double log_sigmoid(double x) { return std::log(sigmoid(x)); }

double dot(std::span<const double> a, std::span<const double> b) {
  const double* __restrict pa = a.data();
  const double* __restrict pb = b.data();
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += pa[k] * pb[k];
  return s;
}

}  // namespace

void TrainConfig::validate() const {
  if (negatives < 1) throw_validation("need at least one negative sample");
  if (window < 1) throw_validation("window must be at least 1");
  if (!(lr0 > effective_lr_min()) || !(effective_lr_min() > 0))
    throw_validation("learning rate schedule requires lr0 > lr_min > 0");
  if (!(noise_exponent >= 0)) throw_validation("noise exponent must be non-negative");
}

NoiseDistribution NoiseDistribution::build(const WalkCorpus& corpus, double alpha) {
  if (corpus.walks.empty()) throw_validation("noise distribution over an empty corpus");
  NoiseDistribution n;
  double total = 0;
  for (uint32_t v = 0; v < corpus.node_counts.size(); ++v) {
    if (corpus.node_counts[v] == 0) continue;
    n.ids.push_back(v);
    double mass = std::pow(static_cast<double>(corpus.node_counts[v]), alpha);
    n.probs.push_back(mass);
    total += mass;
  }
  for (auto& p : n.probs) p /= total;
  n.table = AliasTable::build(n.probs, n.ids);
  return n;
}

double ns_objective(double positive_score, std::span<const double> negative_scores) {
  double obj = log_sigmoid(positive_score);
  for (double s : negative_scores) obj += log_sigmoid(-s);
  return obj;
}

void draw_negatives_into(const NoiseDistribution& noise, Rng& rng, uint32_t positive, uint32_t k,
                         std::vector<uint32_t>& out) {
  out.clear();
  for (uint32_t i = 0; i < k; ++i) {
    // a draw that keeps hitting the predicted node is skipped after 100 tries
    for (int tries = 0; tries < 100; ++tries) {
      uint32_t v = noise.sample(rng);
      if (v != positive) {
        out.push_back(v);
        break;
      }
    }
  }
}

DmNegatives draw_dm_negatives(const NoiseDistribution& noise, Rng& rng, uint32_t target,
                              uint32_t k) {
  DmNegatives negs;
  draw_negatives_into(noise, rng, target, k, negs.nodes);
  return negs;
}

InverseNegatives draw_inverse_negatives(const NoiseDistribution& noise, Rng& rng,
                                        const WindowSample& s, uint32_t k) {
  InverseNegatives negs;
  draw_negatives_into(noise, rng, s.target, k, negs.graph_term);
  negs.context_terms.resize(s.context.size());
  for (size_t i = 0; i < s.context.size(); ++i)
    draw_negatives_into(noise, rng, s.context[i].second, k, negs.context_terms[i]);
  return negs;
}

double dm_window_objective(const EmbeddingModel& m, const WindowSample& s,
                           const DmNegatives& negs) {
  auto vhat = predicted_representation(m, s);
  double obj = log_sigmoid(dot(vhat, m.node_vec(s.target)));
  for (uint32_t v : negs.nodes) obj += log_sigmoid(-dot(vhat, m.node_vec(v)));
  return obj;
}

// One exact simultaneous gradient-ascent update: every score and gradient
// piece is read at the original parameters before any write lands.
double dm_window_update(EmbeddingModel& m, const WindowSample& s, const DmNegatives& negs,
                        double lr, StepScratch& sc) {
  uint32_t d = m.dim();
  size_t nctx = s.context.size();

  sc.vhat.resize(d);
  {
    auto vg = m.graph_vec(s.graph);
    std::copy(vg.begin(), vg.end(), sc.vhat.begin());
    double* __restrict vh = sc.vhat.data();
    for (const auto& [pos, node] : s.context) {
      const double* __restrict c = m.dm_weight(pos).data();
      const double* __restrict v = m.node_vec(node).data();
      for (uint32_t k = 0; k < d; ++k) vh[k] += c[k] * v[k];
    }
  }

  size_t ncand = 1 + negs.nodes.size();
  sc.candidates.resize(ncand);
  sc.coef.resize(ncand);
  sc.candidates[0] = s.target;
  for (size_t i = 0; i < negs.nodes.size(); ++i) sc.candidates[i + 1] = negs.nodes[i];

  double objective = 0;
  sc.e.assign(d, 0.0);
  double* __restrict e = sc.e.data();
  for (size_t c = 0; c < ncand; ++c) {
    const double* __restrict v = m.node_vec(sc.candidates[c]).data();
    double score = dot(sc.vhat, m.node_vec(sc.candidates[c]));
    objective += c == 0 ? log_sigmoid(score) : log_sigmoid(-score);
    double g = (c == 0 ? 1.0 : 0.0) - sigmoid(score);
    sc.coef[c] = g;
    for (uint32_t k = 0; k < d; ++k) e[k] += g * v[k];
  }

  sc.ctx_weight_delta.resize(nctx * d);
  sc.ctx_node_delta.resize(nctx * d);
  for (size_t i = 0; i < nctx; ++i) {
    const double* __restrict c = m.dm_weight(s.context[i].first).data();
    const double* __restrict v = m.node_vec(s.context[i].second).data();
    double* __restrict dw = sc.ctx_weight_delta.data() + i * d;
    double* __restrict dv = sc.ctx_node_delta.data() + i * d;
    for (uint32_t k = 0; k < d; ++k) {
      dw[k] = lr * v[k] * e[k];
      dv[k] = lr * c[k] * e[k];
    }
  }

  const double* __restrict vh = sc.vhat.data();
  for (size_t c = 0; c < ncand; ++c) {
    double* __restrict v = m.node_vec(sc.candidates[c]).data();
    double gl = lr * sc.coef[c];
    for (uint32_t k = 0; k < d; ++k) v[k] += gl * vh[k];
  }
  {
    double* __restrict vg = m.graph_vec(s.graph).data();
    for (uint32_t k = 0; k < d; ++k) vg[k] += lr * e[k];
  }
  for (size_t i = 0; i < nctx; ++i) {
    double* __restrict c = m.dm_weight(s.context[i].first).data();
    double* __restrict v = m.node_vec(s.context[i].second).data();
    const double* __restrict dw = sc.ctx_weight_delta.data() + i * d;
    const double* __restrict dv = sc.ctx_node_delta.data() + i * d;
    for (uint32_t k = 0; k < d; ++k) {
      c[k] += dw[k];
      v[k] += dv[k];
    }
  }
  return objective;
}

double dm_window_update(EmbeddingModel& m, const WindowSample& s, const DmNegatives& negs,
                        double lr) {
  StepScratch sc;
  return dm_window_update(m, s, negs, lr, sc);
}

double inverse_window_objective(const EmbeddingModel& m, const WindowSample& s,
                                const InverseNegatives& negs) {
  auto vg = m.graph_vec(s.graph);
  auto vt = m.node_vec(s.target);
  double obj = log_sigmoid(dot(vg, vt));
  for (uint32_t v : negs.graph_term) obj += log_sigmoid(-dot(vg, m.node_vec(v)));

  uint32_t d = m.dim();
  for (size_t i = 0; i < s.context.size(); ++i) {
    auto c = m.sg_weight(s.context[i].first);
    auto score = [&](uint32_t node) {
      auto v = m.node_vec(node);
      double sum = 0;
      for (uint32_t k = 0; k < d; ++k) sum += vt[k] * c[k] * v[k];
      return sum;
    };
    obj += log_sigmoid(score(s.context[i].second));
    for (uint32_t v : negs.context_terms[i]) obj += log_sigmoid(-score(v));
  }
  return obj;
}

// Same two-phase discipline as the forward update: phase one reads every
// score and gradient piece at the original parameters, phase two applies node
// rows first (their multipliers are cached), then weight rows, then the
// target and graph vectors. Per context term the candidate gradients factor
// through A = sum_c g_c v_c, so d(obj)/d(v_t) = c (*) A and
// d(obj)/d(c) = v_t (*) A are formed once per term.
double inverse_window_update(EmbeddingModel& m, const WindowSample& s,
                             const InverseNegatives& negs, double lr, StepScratch& sc) {
  uint32_t d = m.dim();
  size_t nctx = s.context.size();

  sc.vg_orig.resize(d);
  sc.vt_orig.resize(d);
  {
    auto vg = m.graph_vec(s.graph);
    auto vt = m.node_vec(s.target);
    std::copy(vg.begin(), vg.end(), sc.vg_orig.begin());
    std::copy(vt.begin(), vt.end(), sc.vt_orig.begin());
  }
  const double* __restrict vg0 = sc.vg_orig.data();
  const double* __restrict vt0 = sc.vt_orig.data();

  double objective = 0;
  sc.d_vg.assign(d, 0.0);
  sc.d_vt.assign(d, 0.0);
  sc.ctx_weight_delta.resize(nctx * d);  // per-term multiplier t_i = v_t (*) c_i
  sc.ctx_node_delta.assign(nctx * d, 0.0);  // per-term accumulator A_i
  sc.candidates.clear();
  sc.coef.clear();
  sc.pending_term.clear();

  {
    double* __restrict dvg = sc.d_vg.data();
    auto handle = [&](uint32_t node, bool positive) {
      const double* __restrict v = m.node_vec(node).data();
      double score = 0;
      for (uint32_t k = 0; k < d; ++k) score += vg0[k] * v[k];
      double sg = sigmoid(score);
      objective += std::log(positive ? sg : 1.0 - sg);
      double g = (positive ? 1.0 : 0.0) - sg;
      for (uint32_t k = 0; k < d; ++k) dvg[k] += g * v[k];
      sc.candidates.push_back(node);
      sc.coef.push_back(g);
      sc.pending_term.push_back(-1);
    };
    handle(s.target, true);
    for (uint32_t v : negs.graph_term) handle(v, false);
  }

  for (size_t i = 0; i < nctx; ++i) {
    const double* __restrict c = m.sg_weight(s.context[i].first).data();
    double* __restrict tc = sc.ctx_weight_delta.data() + i * d;
    double* __restrict acc = sc.ctx_node_delta.data() + i * d;
    for (uint32_t k = 0; k < d; ++k) tc[k] = vt0[k] * c[k];
    auto handle = [&](uint32_t node, bool positive) {
      const double* __restrict v = m.node_vec(node).data();
      double score = 0;
      for (uint32_t k = 0; k < d; ++k) score += tc[k] * v[k];
      double sg = sigmoid(score);
      objective += std::log(positive ? sg : 1.0 - sg);
      double g = (positive ? 1.0 : 0.0) - sg;
      for (uint32_t k = 0; k < d; ++k) acc[k] += g * v[k];
      sc.candidates.push_back(node);
      sc.coef.push_back(g);
      sc.pending_term.push_back(static_cast<long>(i));
    };
    handle(s.context[i].second, true);
    for (uint32_t v : negs.context_terms[i]) handle(v, false);
  }

  // d(obj)/d(v_t) needs the weight rows before they move.
  {
    double* __restrict dvt = sc.d_vt.data();
    for (size_t i = 0; i < nctx; ++i) {
      const double* __restrict c = m.sg_weight(s.context[i].first).data();
      const double* __restrict acc = sc.ctx_node_delta.data() + i * d;
      for (uint32_t k = 0; k < d; ++k) dvt[k] += c[k] * acc[k];
    }
  }

  for (size_t p = 0; p < sc.candidates.size(); ++p) {
    double* __restrict v = m.node_vec(sc.candidates[p]).data();
    double gl = lr * sc.coef[p];
    const double* __restrict mult =
        sc.pending_term[p] < 0
            ? vg0
            : sc.ctx_weight_delta.data() + static_cast<size_t>(sc.pending_term[p]) * d;
    for (uint32_t k = 0; k < d; ++k) v[k] += gl * mult[k];
  }
  for (size_t i = 0; i < nctx; ++i) {
    double* __restrict c = m.sg_weight(s.context[i].first).data();
    const double* __restrict acc = sc.ctx_node_delta.data() + i * d;
    for (uint32_t k = 0; k < d; ++k) c[k] += lr * vt0[k] * acc[k];
  }
  {
    double* __restrict vt = m.node_vec(s.target).data();
    const double* __restrict dvt = sc.d_vt.data();
    for (uint32_t k = 0; k < d; ++k) vt[k] += lr * dvt[k];
    double* __restrict vg = m.graph_vec(s.graph).data();
    const double* __restrict dvg = sc.d_vg.data();
    for (uint32_t k = 0; k < d; ++k) vg[k] += lr * dvg[k];
  }
  return objective;
}

double inverse_window_update(EmbeddingModel& m, const WindowSample& s,
                             const InverseNegatives& negs, double lr) {
  StepScratch sc;
  return inverse_window_update(m, s, negs, lr, sc);
}

double dm_step(EmbeddingModel& m, const WindowSample& s, const NoiseDistribution& noise, Rng& rng,
               const TrainConfig& cfg, double lr) {
  DmNegatives negs = draw_dm_negatives(noise, rng, s.target, cfg.negatives);
  return dm_window_update(m, s, negs, lr);
}

double inverse_step(EmbeddingModel& m, const WindowSample& s, const NoiseDistribution& noise,
                    Rng& rng, const TrainConfig& cfg, double lr) {
  InverseNegatives negs = draw_inverse_negatives(noise, rng, s, cfg.negatives);
  return inverse_window_update(m, s, negs, lr);
}

size_t count_windows(std::span<const uint32_t> walk, Architecture arch, uint32_t n) {
  size_t len = walk.size();
  if (arch == Architecture::Dm) {
    if (len < 2) return 0;
    return len < n ? 1 : len - n + 1;
  }
  return len;
}

TrainReport train(EmbeddingModel& m, const WalkCorpus& corpus, const TrainConfig& cfg) {
  cfg.validate();
  if (corpus.walks.empty()) throw_validation("cannot train on an empty corpus");
  if (corpus.vocab.size() > m.node_count())
    throw_validation("corpus vocabulary exceeds model node count");
  if (corpus.graph_count > m.graph_count())
    throw_validation("corpus graph ids exceed model graph count");
  if (cfg.window != m.window())
    throw_validation("train window does not match the model's window");
  for (const auto& w : corpus.walks) {
    if (w.graph >= m.graph_count()) throw_validation("corpus graph id outside the model");
    for (uint32_t v : w.nodes)
      if (v >= m.node_count()) throw_validation("corpus node outside model vocabulary");
  }

  TrainReport report;
  if (cfg.epochs == 0) return report;

  uint64_t per_epoch = 0;
  for (const auto& w : corpus.walks)
    per_epoch += count_windows(w.nodes, cfg.architecture, cfg.window);
  uint64_t total = per_epoch * cfg.epochs;
  if (total == 0) {
    report.epoch_mean.assign(cfg.epochs, 0.0);
    return report;
  }

  NoiseDistribution noise = NoiseDistribution::build(corpus, cfg.noise_exponent);
  double lr0 = cfg.lr0, lr_min = cfg.effective_lr_min();

  std::atomic<uint64_t> progress{0};

  struct Accum {
    double epoch_sum = 0;
    uint64_t epoch_cnt = 0;
    std::array<double, 10> dec_sum{};
    std::array<uint64_t, 10> dec_cnt{};
  };

  uint32_t workers = std::max<uint32_t>(1, cfg.workers);
  report.epoch_mean.resize(cfg.epochs, 0.0);
  std::array<double, 10> dec_sum{};
  std::array<uint64_t, 10> dec_cnt{};

  for (uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<Accum> acc(workers);

    auto run_slice = [&](uint32_t worker, size_t lo, size_t hi) {
      Rng rng(mix_seed(cfg.seed, epoch, worker, 0x545241494eULL));
      WindowSample sample;
      StepScratch scratch;
      DmNegatives dm_negs;
      InverseNegatives inv_negs;
      Accum& a = acc[worker];
      for (size_t wi = lo; wi < hi; ++wi) {
        const auto& walk = corpus.walks[wi];
        for_each_window(
            std::span<const uint32_t>(walk.nodes), walk.graph, cfg.architecture, cfg.window,
            sample, [&](const WindowSample& s) {
              uint64_t t = progress.fetch_add(1, std::memory_order_relaxed);
              double frac = static_cast<double>(t) / static_cast<double>(total);
              double lr = std::max(lr_min, lr0 - (lr0 - lr_min) * frac);
              double obj;
              if (cfg.architecture == Architecture::Dm) {
                draw_negatives_into(noise, rng, s.target, cfg.negatives, dm_negs.nodes);
                obj = dm_window_update(m, s, dm_negs, lr, scratch);
              } else {
                draw_negatives_into(noise, rng, s.target, cfg.negatives, inv_negs.graph_term);
                inv_negs.context_terms.resize(s.context.size());
                for (size_t i = 0; i < s.context.size(); ++i)
                  draw_negatives_into(noise, rng, s.context[i].second, cfg.negatives,
                                      inv_negs.context_terms[i]);
                obj = inverse_window_update(m, s, inv_negs, lr, scratch);
              }
              a.epoch_sum += obj;
              a.epoch_cnt += 1;
              size_t dec = std::min<size_t>(9, static_cast<size_t>(10 * t / total));
              a.dec_sum[dec] += obj;
              a.dec_cnt[dec] += 1;
            });
      }
    };

    if (workers == 1) {
      run_slice(0, 0, corpus.walks.size());
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (corpus.walks.size() + workers - 1) / workers;
      for (uint32_t w = 0; w < workers; ++w) {
        size_t lo = std::min(corpus.walks.size(), static_cast<size_t>(w) * chunk);
        size_t hi = std::min(corpus.walks.size(), lo + chunk);
        pool.emplace_back(run_slice, w, lo, hi);
      }
      for (auto& th : pool) th.join();
    }

    double sum = 0;
    uint64_t cnt = 0;
    for (const Accum& a : acc) {
      sum += a.epoch_sum;
      cnt += a.epoch_cnt;
      for (size_t i = 0; i < 10; ++i) {
        dec_sum[i] += a.dec_sum[i];
        dec_cnt[i] += a.dec_cnt[i];
      }
    }
    report.epoch_mean[epoch] = cnt ? sum / static_cast<double>(cnt) : 0.0;
    report.samples += cnt;
  }

  for (size_t i = 0; i < 10; ++i)
    report.decile_mean[i] = dec_cnt[i] ? dec_sum[i] / static_cast<double>(dec_cnt[i]) : 0.0;
  return report;
}

}  // namespace netvec
