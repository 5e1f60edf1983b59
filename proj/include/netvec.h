/*
 * netvec: node and whole-network embeddings from biased random walks.
 *
 * C interface of the shared library. All functions return nv_status; handles
 * are opaque and must be released with the matching _free call. On failure a
 * thread-local message is available through nv_last_error().
 */
#ifndef NETVEC_H
#define NETVEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NETVEC_API __declspec(dllexport)
#else
#define NETVEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nv_status {
  NV_OK = 0,
  NV_ERR_ARGUMENT = 1,   /* null handle or out-of-range argument */
  NV_ERR_PARSE = 2,      /* malformed file content */
  NV_ERR_VALIDATION = 3, /* violated precondition or inconsistent data */
  NV_ERR_IO = 4,         /* file could not be opened/read/written */
  NV_ERR_LOOKUP = 5      /* unknown node/graph/label id */
} nv_status;

/* Message for the most recent failure on this thread. */
NETVEC_API const char* nv_last_error(void);

typedef struct nv_graph nv_graph;
typedef struct nv_corpus nv_corpus;
typedef struct nv_model nv_model;
typedef struct nv_embeddings nv_embeddings;

/* ---- graphs ------------------------------------------------------------ */

/* Edge-list file: "src dst [weight]" per line, tab- or space-separated, '#'
 * comments, single-token lines declare isolated nodes. Duplicate edges merge
 * by weight summation; weights must be positive. */
NETVEC_API nv_status nv_graph_load(const char* path, int directed, nv_graph** out);
NETVEC_API nv_status nv_graph_save(const nv_graph* g, const char* path);
NETVEC_API void nv_graph_free(nv_graph* g);

NETVEC_API size_t nv_graph_node_count(const nv_graph* g);
NETVEC_API size_t nv_graph_edge_count(const nv_graph* g); /* undirected edges counted once */
NETVEC_API int nv_graph_directed(const nv_graph* g);
NETVEC_API nv_status nv_graph_node_id(const nv_graph* g, const char* label, uint32_t* out);
NETVEC_API const char* nv_graph_node_label(const nv_graph* g, uint32_t id);
NETVEC_API size_t nv_graph_degree(const nv_graph* g, uint32_t id);

/* Induced subgraph over a center and its neighbors. */
NETVEC_API nv_status nv_ego_extract(const nv_graph* g, const char* center_label, nv_graph** out);

/* node count, edge count, average degree, max in-degree, max out-degree,
 * global clustering, mean node clustering, 10 largest adjacency eigenvalues
 * in non-increasing order (zero-padded). */
NETVEC_API nv_status nv_graph_structural_features(const nv_graph* g, double out[17]);

/* ---- random-walk corpora ------------------------------------------------ */

typedef struct nv_walk_options {
  double p;                /* return parameter, > 0 */
  double q;                /* in-out parameter, > 0 */
  uint32_t walk_length;    /* nodes per walk including the root, >= 2 */
  uint32_t walks_per_node; /* repetitions per root, >= 1 */
  uint64_t seed;
  int precompute;          /* cache one alias table per directed edge pair */
  uint32_t workers;
} nv_walk_options;

NETVEC_API void nv_walk_options_default(nv_walk_options* opt);

NETVEC_API nv_status nv_corpus_generate(const nv_graph* const* graphs, size_t graph_count,
                                        const nv_walk_options* opt, nv_corpus** out);
/* One walk per line: "graphId<TAB>label1 label2 ...". */
NETVEC_API nv_status nv_corpus_save(const nv_corpus* c, const char* path);
NETVEC_API nv_status nv_corpus_load(const char* path, nv_corpus** out);
NETVEC_API void nv_corpus_free(nv_corpus* c);

NETVEC_API size_t nv_corpus_walk_count(const nv_corpus* c);
NETVEC_API size_t nv_corpus_vocab_size(const nv_corpus* c);
NETVEC_API size_t nv_corpus_graph_count(const nv_corpus* c);

/* ---- training ----------------------------------------------------------- */

typedef enum nv_architecture {
  NV_ARCH_DM = 0,     /* predict the target from weighted context plus v_G */
  NV_ARCH_INVERSE = 1 /* v_G predicts the target; the target predicts its context */
} nv_architecture;

typedef struct nv_train_options {
  nv_architecture architecture;
  uint32_t dim;
  uint32_t window;    /* n */
  uint32_t negatives; /* k */
  uint32_t epochs;
  double lr0;
  double lr_min;         /* 0 means lr0 * 1e-4 */
  double noise_exponent; /* alpha in count^alpha */
  uint64_t seed;
  uint32_t workers; /* > 1 is lock-free and non-deterministic */
} nv_train_options;

NETVEC_API void nv_train_options_default(nv_train_options* opt);

/* Initializes a model over the corpus vocabulary and graphs and trains it. */
NETVEC_API nv_status nv_model_train(const nv_corpus* c, const nv_train_options* opt,
                                    nv_model** out);
NETVEC_API void nv_model_free(nv_model* m);

NETVEC_API uint32_t nv_model_dim(const nv_model* m);
NETVEC_API size_t nv_model_node_count(const nv_model* m);
NETVEC_API size_t nv_model_graph_count(const nv_model* m);
NETVEC_API size_t nv_model_epoch_count(const nv_model* m);
NETVEC_API double nv_model_epoch_objective(const nv_model* m, size_t epoch);

/* Embedding file: header "count dim", then "id v1 ... vd" per line. Graph
 * rows are named by the optional names array (default "0", "1", ...). */
NETVEC_API nv_status nv_model_save_nodes(const nv_model* m, const char* path);
NETVEC_API nv_status nv_model_save_graphs(const nv_model* m, const char* const* names,
                                          size_t name_count, const char* path);

/* ---- evaluation ---------------------------------------------------------- */

NETVEC_API nv_status nv_embeddings_load(const char* path, nv_embeddings** out);
NETVEC_API void nv_embeddings_free(nv_embeddings* e);
NETVEC_API size_t nv_embeddings_count(const nv_embeddings* e);
NETVEC_API uint32_t nv_embeddings_dim(const nv_embeddings* e);

/* Labels file: "node label1[,label2...]" per line. Every labeled node must
 * exist in the embedding vocabulary. out_values receives one mean
 * precision@k per entry of ks, averaged over all labeled nodes. */
NETVEC_API nv_status nv_eval_role(const nv_embeddings* e, const char* labels_path,
                                  const uint32_t* ks, size_t k_count, double* out_values);

/* Tuples file: four distinct ids per line, "a b c d". out_values receives one
 * hit@k per entry of ks. */
NETVEC_API nv_status nv_eval_analogy(const nv_embeddings* e, const char* tuples_path,
                                     const uint32_t* ks, size_t k_count, double* out_values,
                                     size_t* out_tuple_count);

/* One-vs-rest logistic regression over repeated stratified splits; returns
 * mean Macro-F1 and Micro-F1. */
NETVEC_API nv_status nv_eval_classify(const nv_embeddings* e, const char* labels_path,
                                      double train_fraction, uint32_t repeats, double l2,
                                      uint64_t seed, double* out_macro, double* out_micro);

/* Plot-ready dump of 2-d embeddings: "id,x,y,tag" per line. labels_path may
 * be NULL for untagged output. */
NETVEC_API nv_status nv_eval_project(const nv_embeddings* e, const char* labels_path,
                                     const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* NETVEC_H */
