#include "netvec.h"

#include <cstring>
#include <string>

#include "error.hpp"
#include "eval.hpp"
#include "graph.hpp"
#include "model.hpp"
#include "trainer.hpp"
#include "walker.hpp"

using namespace netvec;

struct nv_graph {
  Graph graph;
};
struct nv_corpus {
  WalkCorpus corpus;
};
struct nv_model {
  EmbeddingModel model;
  std::vector<std::string> vocab;
  TrainReport report;
};
struct nv_embeddings {
  EmbeddingSet set;
};

namespace {

thread_local std::string g_last_error;

nv_status set_error(nv_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

nv_status from_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return NV_ERR_PARSE;
    case ErrorKind::Validation:
      return NV_ERR_VALIDATION;
    case ErrorKind::Io:
      return NV_ERR_IO;
    case ErrorKind::Lookup:
      return NV_ERR_LOOKUP;
  }
  return NV_ERR_VALIDATION;
}

// Runs fn, translating exceptions into status codes.
template <typename F>
nv_status guarded(F&& fn) {
  try {
    fn();
    return NV_OK;
  } catch (const Error& e) {
    return set_error(from_kind(e.kind()), e.what());
  } catch (const std::exception& e) {
    return set_error(NV_ERR_VALIDATION, e.what());
  }
}

nv_status require(bool ok, const char* what) {
  return ok ? NV_OK : set_error(NV_ERR_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* nv_last_error(void) { return g_last_error.c_str(); }

/* ---- graphs ---- */

nv_status nv_graph_load(const char* path, int directed, nv_graph** out) {
  if (auto s = require(path && out, "nv_graph_load: null argument")) return s;
  return guarded([&] { *out = new nv_graph{load_edge_list(path, directed != 0)}; });
}

nv_status nv_graph_save(const nv_graph* g, const char* path) {
  if (auto s = require(g && path, "nv_graph_save: null argument")) return s;
  return guarded([&] { save_edge_list(g->graph, path); });
}

void nv_graph_free(nv_graph* g) { delete g; }

size_t nv_graph_node_count(const nv_graph* g) { return g ? g->graph.node_count() : 0; }
size_t nv_graph_edge_count(const nv_graph* g) { return g ? g->graph.edge_count() : 0; }
int nv_graph_directed(const nv_graph* g) { return g && g->graph.directed() ? 1 : 0; }

nv_status nv_graph_node_id(const nv_graph* g, const char* label, uint32_t* out) {
  if (auto s = require(g && label && out, "nv_graph_node_id: null argument")) return s;
  return guarded([&] { *out = g->graph.id_of(label); });
}

const char* nv_graph_node_label(const nv_graph* g, uint32_t id) {
  if (!g || id >= g->graph.node_count()) return nullptr;
  return g->graph.label(id).c_str();
}

size_t nv_graph_degree(const nv_graph* g, uint32_t id) {
  if (!g || id >= g->graph.node_count()) return 0;
  return g->graph.out_degree(id);
}

nv_status nv_ego_extract(const nv_graph* g, const char* center_label, nv_graph** out) {
  if (auto s = require(g && center_label && out, "nv_ego_extract: null argument")) return s;
  return guarded([&] { *out = new nv_graph{ego_network(g->graph, center_label).subgraph}; });
}

nv_status nv_graph_structural_features(const nv_graph* g, double out[17]) {
  if (auto s = require(g && out, "nv_graph_structural_features: null argument")) return s;
  return guarded([&] {
    auto a = structural_features(g->graph).as_array();
    std::memcpy(out, a.data(), sizeof(double) * a.size());
  });
}

/* ---- corpora ---- */

void nv_walk_options_default(nv_walk_options* opt) {
  if (!opt) return;
  opt->p = 1.0;
  opt->q = 1.0;
  opt->walk_length = 80;
  opt->walks_per_node = 10;
  opt->seed = 1;
  opt->precompute = 1;
  opt->workers = 1;
}

nv_status nv_corpus_generate(const nv_graph* const* graphs, size_t graph_count,
                             const nv_walk_options* opt, nv_corpus** out) {
  if (auto s = require(graphs && opt && out && graph_count > 0, "nv_corpus_generate: null argument"))
    return s;
  return guarded([&] {
    std::vector<const Graph*> gs;
    gs.reserve(graph_count);
    for (size_t i = 0; i < graph_count; ++i) {
      if (!graphs[i]) throw_validation("nv_corpus_generate: null graph handle");
      gs.push_back(&graphs[i]->graph);
    }
    WalkConfig cfg;
    cfg.p = opt->p;
    cfg.q = opt->q;
    cfg.walk_length = opt->walk_length;
    cfg.walks_per_node = opt->walks_per_node;
    cfg.seed = opt->seed;
    cfg.precompute = opt->precompute != 0;
    *out = new nv_corpus{generate_corpus(gs, cfg, opt->workers ? opt->workers : 1)};
  });
}

nv_status nv_corpus_save(const nv_corpus* c, const char* path) {
  if (auto s = require(c && path, "nv_corpus_save: null argument")) return s;
  return guarded([&] { save_corpus(c->corpus, path); });
}

nv_status nv_corpus_load(const char* path, nv_corpus** out) {
  if (auto s = require(path && out, "nv_corpus_load: null argument")) return s;
  return guarded([&] { *out = new nv_corpus{load_corpus(path)}; });
}

void nv_corpus_free(nv_corpus* c) { delete c; }

size_t nv_corpus_walk_count(const nv_corpus* c) { return c ? c->corpus.walks.size() : 0; }
size_t nv_corpus_vocab_size(const nv_corpus* c) { return c ? c->corpus.vocab.size() : 0; }
size_t nv_corpus_graph_count(const nv_corpus* c) { return c ? c->corpus.graph_count : 0; }

/* ---- training ---- */

void nv_train_options_default(nv_train_options* opt) {
  if (!opt) return;
  opt->architecture = NV_ARCH_INVERSE;
  opt->dim = 128;
  opt->window = 10;
  opt->negatives = 5;
  opt->epochs = 1;
  opt->lr0 = 0.025;
  opt->lr_min = 0;
  opt->noise_exponent = 0.0;
  opt->seed = 1;
  opt->workers = 1;
}

nv_status nv_model_train(const nv_corpus* c, const nv_train_options* opt, nv_model** out) {
  if (auto s = require(c && opt && out, "nv_model_train: null argument")) return s;
  return guarded([&] {
    TrainConfig cfg;
    cfg.architecture = opt->architecture == NV_ARCH_DM ? Architecture::Dm : Architecture::Inverse;
    cfg.window = opt->window;
    cfg.negatives = opt->negatives;
    cfg.epochs = opt->epochs;
    cfg.lr0 = opt->lr0;
    cfg.lr_min = opt->lr_min;
    cfg.noise_exponent = opt->noise_exponent;
    cfg.seed = opt->seed;
    cfg.workers = opt->workers ? opt->workers : 1;
    cfg.validate();

    auto model = EmbeddingModel::init(c->corpus.vocab.size(),
                                      std::max<uint32_t>(1, c->corpus.graph_count), opt->dim,
                                      opt->window, opt->seed);
    auto report = train(model, c->corpus, cfg);
    *out = new nv_model{std::move(model), c->corpus.vocab, std::move(report)};
  });
}

void nv_model_free(nv_model* m) { delete m; }

uint32_t nv_model_dim(const nv_model* m) { return m ? m->model.dim() : 0; }
size_t nv_model_node_count(const nv_model* m) { return m ? m->model.node_count() : 0; }
size_t nv_model_graph_count(const nv_model* m) { return m ? m->model.graph_count() : 0; }
size_t nv_model_epoch_count(const nv_model* m) { return m ? m->report.epoch_mean.size() : 0; }

double nv_model_epoch_objective(const nv_model* m, size_t epoch) {
  if (!m || epoch >= m->report.epoch_mean.size()) return 0.0;
  return m->report.epoch_mean[epoch];
}

nv_status nv_model_save_nodes(const nv_model* m, const char* path) {
  if (auto s = require(m && path, "nv_model_save_nodes: null argument")) return s;
  return guarded([&] {
    const auto block = m->model.node_block();
    save_embeddings(m->vocab, std::vector<double>(block.begin(), block.end()), m->model.dim(),
                    path);
  });
}

nv_status nv_model_save_graphs(const nv_model* m, const char* const* names, size_t name_count,
                               const char* path) {
  if (auto s = require(m && path, "nv_model_save_graphs: null argument")) return s;
  return guarded([&] {
    size_t count = m->model.graph_count();
    if (names && name_count != count)
      throw_validation("graph name count does not match the model");
    std::vector<std::string> ids;
    ids.reserve(count);
    for (size_t i = 0; i < count; ++i)
      ids.push_back(names ? std::string(names[i]) : std::to_string(i));
    const auto block = m->model.graph_block();
    save_embeddings(ids, std::vector<double>(block.begin(), block.end()), m->model.dim(), path);
  });
}

/* ---- evaluation ---- */

nv_status nv_embeddings_load(const char* path, nv_embeddings** out) {
  if (auto s = require(path && out, "nv_embeddings_load: null argument")) return s;
  return guarded([&] { *out = new nv_embeddings{EmbeddingSet::load(path)}; });
}

void nv_embeddings_free(nv_embeddings* e) { delete e; }

size_t nv_embeddings_count(const nv_embeddings* e) { return e ? e->set.count() : 0; }
uint32_t nv_embeddings_dim(const nv_embeddings* e) { return e ? e->set.dim : 0; }

nv_status nv_eval_role(const nv_embeddings* e, const char* labels_path, const uint32_t* ks,
                       size_t k_count, double* out_values) {
  if (auto s = require(e && labels_path && ks && out_values && k_count > 0,
                       "nv_eval_role: null argument"))
    return s;
  return guarded([&] {
    auto labels = load_labels(labels_path);
    auto means = mean_precision_at(e->set, labels, {ks, k_count});
    std::copy(means.begin(), means.end(), out_values);
  });
}

nv_status nv_eval_analogy(const nv_embeddings* e, const char* tuples_path, const uint32_t* ks,
                          size_t k_count, double* out_values, size_t* out_tuple_count) {
  if (auto s = require(e && tuples_path && ks && out_values && k_count > 0,
                       "nv_eval_analogy: null argument"))
    return s;
  return guarded([&] {
    auto tuples = load_tuples(tuples_path, e->set);
    auto hits = analogy_hit_rates(e->set, tuples, {ks, k_count});
    std::copy(hits.begin(), hits.end(), out_values);
    if (out_tuple_count) *out_tuple_count = tuples.size();
  });
}

nv_status nv_eval_classify(const nv_embeddings* e, const char* labels_path, double train_fraction,
                           uint32_t repeats, double l2, uint64_t seed, double* out_macro,
                           double* out_micro) {
  if (auto s = require(e && labels_path && out_macro && out_micro,
                       "nv_eval_classify: null argument"))
    return s;
  return guarded([&] {
    auto labels = load_labels(labels_path);
    auto f1 = classify_protocol(e->set, labels, train_fraction, repeats, l2, seed);
    *out_macro = f1.macro;
    *out_micro = f1.micro;
  });
}

nv_status nv_eval_project(const nv_embeddings* e, const char* labels_path, const char* out_path) {
  if (auto s = require(e && out_path, "nv_eval_project: null argument")) return s;
  return guarded([&] {
    if (labels_path) {
      auto labels = load_labels(labels_path);
      write_projection(e->set, &labels, out_path);
    } else {
      write_projection(e->set, nullptr, out_path);
    }
  });
}

}  // extern "C"
