// netvec command-line interface. Talks to the engine exclusively through the
// shared library's C API (netvec.h); everything else here is flag parsing,
// file bookkeeping and run manifests.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netvec.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check(nv_status status) {
  if (status == NV_OK) return;
  int code = status == NV_ERR_IO ? kExitIo : kExitValidation;
  fail(code, nv_last_error());
}

// FNV-1a over the file bytes, for manifest input digests.
std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitIo, "cannot open '" + path + "' for digesting");
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

class StageTimer {
 public:
  void start(const std::string& stage) {
    current_ = stage;
    begin_ = std::chrono::steady_clock::now();
  }
  void stop() {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin_)
                  .count();
    timings_[current_] = ms;
  }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, v] : timings_) j[k] = v;
    return j;
  }

 private:
  std::string current_;
  std::chrono::steady_clock::time_point begin_;
  std::map<std::string, double> timings_;
};

// The manifest records the fully resolved configuration so a run can be
// reproduced exactly (workers=1) from the file alone.
void write_manifest(const std::string& primary_output, const std::string& command,
                    const std::vector<std::string>& argv, const json& options, uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const StageTimer& timer) {
  json m;
  m["command"] = command;
  m["argv"] = argv;
  m["options"] = options;
  m["seed"] = seed;
  json jin = json::array();
  for (const auto& p : inputs) jin.push_back({{"path", p}, {"fnv1a64", file_digest(p)}});
  m["inputs"] = jin;
  m["outputs"] = outputs;
  m["timings_ms"] = timer.to_json();
  std::string path = primary_output + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitIo, "cannot write manifest '" + path + "'");
  out << m.dump(2) << "\n";
}

std::vector<uint32_t> parse_k_list(const std::string& ks) {
  std::vector<uint32_t> out;
  std::istringstream in(ks);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      unsigned long v = std::stoul(tok);
      if (v == 0) throw std::invalid_argument("zero");
      out.push_back(static_cast<uint32_t>(v));
    } catch (const std::exception&) {
      fail(kExitUsage, "bad cut-off list entry '" + tok + "'");
    }
  }
  if (out.empty()) fail(kExitUsage, "empty cut-off list");
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitIo, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

struct IndexEntry {
  uint32_t graph_id;
  std::string center;
  std::string path;  // relative to the index file
};

std::vector<IndexEntry> read_index(const std::string& path) {
  std::vector<IndexEntry> entries;
  for (const auto& line : read_lines(path)) {
    std::istringstream ls(line);
    IndexEntry e;
    std::string id;
    if (!std::getline(ls, id, '\t') || !std::getline(ls, e.center, '\t') ||
        !std::getline(ls, e.path, '\t'))
      fail(kExitValidation, path + ": expected 'graphId<TAB>center<TAB>file'");
    try {
      e.graph_id = static_cast<uint32_t>(std::stoul(id));
    } catch (const std::exception&) {
      fail(kExitValidation, path + ": bad graph id '" + id + "'");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) fail(kExitValidation, path + ": empty index");
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].graph_id != i)
      fail(kExitValidation, path + ": graph ids must be dense and ordered");
  return entries;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitIo, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(kExitIo, "failed writing '" + path + "'");
}

// RAII wrappers over the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  operator T*() const { return ptr; }
};
using GraphHandle = Handle<nv_graph, nv_graph_free>;
using CorpusHandle = Handle<nv_corpus, nv_corpus_free>;
using ModelHandle = Handle<nv_model, nv_model_free>;
using EmbeddingsHandle = Handle<nv_embeddings, nv_embeddings_free>;

// ---- walks ----------------------------------------------------------------

struct WalksArgs {
  std::string input, input_index, output;
  bool directed = false;
  bool precompute = true;
  nv_walk_options opt{};
};

void run_walks(const WalksArgs& a, const std::vector<std::string>& argv) {
  if (a.input.empty() == a.input_index.empty())
    fail(kExitUsage, "exactly one of --input or --input-index is required");

  StageTimer timer;
  std::vector<std::string> inputs;
  std::vector<GraphHandle> graphs;
  std::vector<const nv_graph*> raw;

  timer.start("load");
  if (!a.input.empty()) {
    graphs.resize(1);
    check(nv_graph_load(a.input.c_str(), a.directed ? 1 : 0, graphs[0].out()));
    raw.push_back(graphs[0]);
    inputs.push_back(a.input);
  } else {
    auto index = read_index(a.input_index);
    inputs.push_back(a.input_index);
    fs::path base = fs::path(a.input_index).parent_path();
    graphs.resize(index.size());
    for (size_t i = 0; i < index.size(); ++i) {
      std::string p = (base / index[i].path).string();
      check(nv_graph_load(p.c_str(), a.directed ? 1 : 0, graphs[i].out()));
      raw.push_back(graphs[i]);
      inputs.push_back(p);
    }
  }
  timer.stop();

  nv_walk_options opt = a.opt;
  opt.precompute = a.precompute ? 1 : 0;

  timer.start("walk");
  CorpusHandle corpus;
  check(nv_corpus_generate(raw.data(), raw.size(), &opt, corpus.out()));
  timer.stop();

  timer.start("save");
  check(nv_corpus_save(corpus, a.output.c_str()));
  timer.stop();

  std::printf("walks: %zu walks over %zu nodes from %zu graph(s) -> %s\n",
              nv_corpus_walk_count(corpus), nv_corpus_vocab_size(corpus),
              nv_corpus_graph_count(corpus), a.output.c_str());

  json options{{"directed", a.directed},
               {"p", opt.p},
               {"q", opt.q},
               {"walk_length", opt.walk_length},
               {"num_walks", opt.walks_per_node},
               {"precompute", opt.precompute != 0},
               {"workers", opt.workers}};
  write_manifest(a.output, "walks", argv, options, opt.seed, inputs, {a.output}, timer);
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string corpus, node_output, graph_output, trace, index;
  std::string arch = "inverse";
  nv_train_options opt{};
};

void run_train(const TrainArgs& a, const std::vector<std::string>& argv) {
  nv_train_options opt = a.opt;
  if (a.arch == "dm")
    opt.architecture = NV_ARCH_DM;
  else if (a.arch == "inverse")
    opt.architecture = NV_ARCH_INVERSE;
  else
    fail(kExitUsage, "--arch must be dm or inverse");

  StageTimer timer;
  std::vector<std::string> inputs{a.corpus};

  timer.start("load");
  CorpusHandle corpus;
  check(nv_corpus_load(a.corpus.c_str(), corpus.out()));
  std::vector<std::string> names;
  std::vector<const char*> name_ptrs;
  if (!a.index.empty()) {
    auto index = read_index(a.index);
    inputs.push_back(a.index);
    if (index.size() != nv_corpus_graph_count(corpus))
      fail(kExitValidation, "index size does not match the corpus graph count");
    for (const auto& e : index) names.push_back(e.center);
    for (const auto& n : names) name_ptrs.push_back(n.c_str());
  }
  timer.stop();

  timer.start("train");
  ModelHandle model;
  check(nv_model_train(corpus, &opt, model.out()));
  timer.stop();

  timer.start("save");
  std::vector<std::string> outputs{a.node_output};
  check(nv_model_save_nodes(model, a.node_output.c_str()));
  if (!a.graph_output.empty()) {
    check(nv_model_save_graphs(model, name_ptrs.empty() ? nullptr : name_ptrs.data(),
                               name_ptrs.size(), a.graph_output.c_str()));
    outputs.push_back(a.graph_output);
  }
  if (!a.trace.empty()) {
    std::string csv = "epoch,mean_objective\n";
    char row[64];
    for (size_t e = 0; e < nv_model_epoch_count(model); ++e) {
      std::snprintf(row, sizeof(row), "%zu,%.10g\n", e, nv_model_epoch_objective(model, e));
      csv += row;
    }
    write_text(a.trace, csv);
    outputs.push_back(a.trace);
  }
  timer.stop();

  for (size_t e = 0; e < nv_model_epoch_count(model); ++e)
    std::printf("epoch %zu: mean objective %.6f\n", e, nv_model_epoch_objective(model, e));
  std::printf("train: %zu node vectors, %zu graph vectors, dim %u -> %s\n",
              nv_model_node_count(model), nv_model_graph_count(model), nv_model_dim(model),
              a.node_output.c_str());

  json options{{"arch", a.arch},
               {"dim", opt.dim},
               {"window", opt.window},
               {"negatives", opt.negatives},
               {"epochs", opt.epochs},
               {"lr", opt.lr0},
               {"lr_min", opt.lr_min},
               {"alpha", opt.noise_exponent},
               {"workers", opt.workers}};
  write_manifest(a.node_output, "train", argv, options, opt.seed, inputs, outputs, timer);
}

// ---- ego ------------------------------------------------------------------

struct EgoArgs {
  std::string input, centers, outdir;
  bool directed = false;
};

void run_ego(const EgoArgs& a, const std::vector<std::string>& argv) {
  StageTimer timer;
  timer.start("load");
  GraphHandle graph;
  check(nv_graph_load(a.input.c_str(), a.directed ? 1 : 0, graph.out()));
  auto centers = read_lines(a.centers);
  if (centers.empty()) fail(kExitValidation, a.centers + ": no centers listed");
  timer.stop();

  std::error_code ec;
  fs::create_directories(a.outdir, ec);
  if (ec) fail(kExitIo, "cannot create '" + a.outdir + "': " + ec.message());

  timer.start("extract");
  std::string index_text, skipped_text;
  std::vector<std::string> outputs;
  uint32_t graph_id = 0;
  for (const auto& center : centers) {
    GraphHandle ego;
    nv_status s = nv_ego_extract(graph, center.c_str(), ego.out());
    if (s == NV_ERR_LOOKUP) {
      skipped_text += center;
      skipped_text += '\n';
      continue;
    }
    check(s);
    char name[32];
    std::snprintf(name, sizeof(name), "ego_%05u.edges", graph_id);
    std::string path = (fs::path(a.outdir) / name).string();
    check(nv_graph_save(ego, path.c_str()));
    index_text += std::to_string(graph_id) + "\t" + center + "\t" + name + "\n";
    outputs.push_back(path);
    ++graph_id;
  }
  timer.stop();

  timer.start("save");
  std::string index_path = (fs::path(a.outdir) / "index.tsv").string();
  write_text(index_path, index_text);
  outputs.push_back(index_path);
  std::string skipped_path = (fs::path(a.outdir) / "skipped.txt").string();
  write_text(skipped_path, skipped_text);
  outputs.push_back(skipped_path);
  timer.stop();

  std::printf("ego: %u ego networks -> %s (%zu centers skipped)\n", graph_id, a.outdir.c_str(),
              centers.size() - graph_id);

  json options{{"directed", a.directed}, {"outdir", a.outdir}};
  write_manifest(index_path, "ego", argv, options, 0, {a.input, a.centers}, outputs, timer);
}

// ---- eval -----------------------------------------------------------------

struct EvalRoleArgs {
  std::string embeddings, labels, output;
  std::string ks = "1,5,10";
};

void run_eval_role(const EvalRoleArgs& a, const std::vector<std::string>& argv) {
  auto ks = parse_k_list(a.ks);
  StageTimer timer;
  timer.start("eval");
  EmbeddingsHandle emb;
  check(nv_embeddings_load(a.embeddings.c_str(), emb.out()));
  std::vector<double> values(ks.size());
  check(nv_eval_role(emb, a.labels.c_str(), ks.data(), ks.size(), values.data()));
  timer.stop();

  std::string csv = "metric,k,value\n";
  char row[64];
  for (size_t i = 0; i < ks.size(); ++i) {
    std::snprintf(row, sizeof(row), "precision,%u,%.6f\n", ks[i], values[i]);
    csv += row;
    std::printf("p@%u = %.4f\n", ks[i], values[i]);
  }
  write_text(a.output, csv);
  write_manifest(a.output, "eval role", argv, json{{"k", a.ks}}, 0, {a.embeddings, a.labels},
                 {a.output}, timer);
}

struct EvalAnalogyArgs {
  std::string embeddings, tuples, output;
  std::string ks = "1,5,10";
};

void run_eval_analogy(const EvalAnalogyArgs& a, const std::vector<std::string>& argv) {
  auto ks = parse_k_list(a.ks);
  StageTimer timer;
  timer.start("eval");
  EmbeddingsHandle emb;
  check(nv_embeddings_load(a.embeddings.c_str(), emb.out()));
  std::vector<double> values(ks.size());
  size_t tuple_count = 0;
  check(nv_eval_analogy(emb, a.tuples.c_str(), ks.data(), ks.size(), values.data(), &tuple_count));
  timer.stop();

  std::string csv = "metric,k,value\n";
  char row[64];
  for (size_t i = 0; i < ks.size(); ++i) {
    std::snprintf(row, sizeof(row), "hit,%u,%.6f\n", ks[i], values[i]);
    csv += row;
    std::printf("hit@%u = %.4f over %zu tuples\n", ks[i], values[i], tuple_count);
  }
  write_text(a.output, csv);
  write_manifest(a.output, "eval analogy", argv, json{{"k", a.ks}}, 0, {a.embeddings, a.tuples},
                 {a.output}, timer);
}

struct EvalClassifyArgs {
  std::string embeddings, labels, output;
  double train_fraction = -1;  // < 0 sweeps 0.1..0.9
  uint32_t repeats = 10;
  double l2 = 0.1;
  uint64_t seed = 1;
};

void run_eval_classify(const EvalClassifyArgs& a, const std::vector<std::string>& argv) {
  StageTimer timer;
  timer.start("eval");
  EmbeddingsHandle emb;
  check(nv_embeddings_load(a.embeddings.c_str(), emb.out()));

  std::vector<double> fractions;
  if (a.train_fraction > 0)
    fractions.push_back(a.train_fraction);
  else
    for (int i = 1; i <= 9; ++i) fractions.push_back(i / 10.0);

  std::string csv = "metric,k,value\n";
  char row[96];
  for (double frac : fractions) {
    double macro = 0, micro = 0;
    check(nv_eval_classify(emb, a.labels.c_str(), frac, a.repeats, a.l2, a.seed, &macro, &micro));
    std::snprintf(row, sizeof(row), "macro_f1,%.2f,%.6f\nmicro_f1,%.2f,%.6f\n", frac, macro, frac,
                  micro);
    csv += row;
    std::printf("fraction %.2f: macro-F1 %.4f micro-F1 %.4f\n", frac, macro, micro);
  }
  timer.stop();
  write_text(a.output, csv);

  json options{{"train_fraction", a.train_fraction}, {"repeats", a.repeats}, {"l2", a.l2}};
  write_manifest(a.output, "eval classify", argv, options, a.seed, {a.embeddings, a.labels},
                 {a.output}, timer);
}

struct EvalProjectArgs {
  std::string embeddings, labels, output;
};

void run_eval_project(const EvalProjectArgs& a, const std::vector<std::string>& argv) {
  StageTimer timer;
  timer.start("eval");
  EmbeddingsHandle emb;
  check(nv_embeddings_load(a.embeddings.c_str(), emb.out()));
  check(nv_eval_project(emb, a.labels.empty() ? nullptr : a.labels.c_str(), a.output.c_str()));
  timer.stop();
  std::printf("project: %zu points -> %s\n", nv_embeddings_count(emb), a.output.c_str());

  std::vector<std::string> inputs{a.embeddings};
  if (!a.labels.empty()) inputs.push_back(a.labels);
  write_manifest(a.output, "eval project", argv, json::object(), 0, inputs, {a.output}, timer);
}

int dispatch(const std::vector<std::string>& argv);

void run_rerun(const std::string& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) fail(kExitIo, "cannot open manifest '" + manifest_path + "'");
  json m;
  try {
    in >> m;
  } catch (const std::exception& e) {
    fail(kExitValidation, std::string("bad manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array())
    fail(kExitValidation, "manifest has no argv record");
  std::vector<std::string> argv;
  for (const auto& tok : m["argv"]) argv.push_back(tok.get<std::string>());
  if (!argv.empty() && argv.front() == "rerun") fail(kExitValidation, "refusing to rerun a rerun");
  int code = dispatch(argv);
  if (code != 0) fail(code, "rerun failed");
}

int dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"node and whole-network embeddings from biased random walks"};
  app.require_subcommand(1);

  WalksArgs walks;
  nv_walk_options_default(&walks.opt);
  auto* cmd_walks = app.add_subcommand("walks", "generate a biased random-walk corpus");
  cmd_walks->add_option("--input", walks.input, "edge-list file");
  cmd_walks->add_option("--input-index", walks.input_index,
                        "index.tsv of a multi-graph collection (from 'ego')");
  cmd_walks->add_flag("--directed", walks.directed, "treat edges as directed");
  cmd_walks->add_option("--p", walks.opt.p, "return parameter")->capture_default_str();
  cmd_walks->add_option("--q", walks.opt.q, "in-out parameter")->capture_default_str();
  cmd_walks->add_option("--walk-length", walks.opt.walk_length, "nodes per walk")
      ->capture_default_str();
  cmd_walks->add_option("--num-walks", walks.opt.walks_per_node, "walks per root node")
      ->capture_default_str();
  cmd_walks->add_option("--seed", walks.opt.seed, "random seed")->capture_default_str();
  cmd_walks->add_flag("--precompute,!--no-precompute", walks.precompute,
                      "cache per-edge alias tables (default) or sample on the fly")
      ->capture_default_str();
  cmd_walks->add_option("--workers", walks.opt.workers, "worker threads")->capture_default_str();
  cmd_walks->add_option("--output", walks.output, "corpus file to write")->required();

  TrainArgs train;
  nv_train_options_default(&train.opt);
  auto* cmd_train = app.add_subcommand("train", "train embeddings on a walk corpus");
  cmd_train->add_option("--corpus", train.corpus, "walk corpus file")->required();
  cmd_train->add_option("--arch", train.arch, "architecture: dm or inverse")
      ->capture_default_str();
  cmd_train->add_option("--dim", train.opt.dim, "embedding dimension")->capture_default_str();
  cmd_train->add_option("--window", train.opt.window, "context window")->capture_default_str();
  cmd_train->add_option("--negatives", train.opt.negatives, "negative samples per prediction")
      ->capture_default_str();
  cmd_train->add_option("--epochs", train.opt.epochs, "passes over the corpus")
      ->capture_default_str();
  cmd_train->add_option("--lr", train.opt.lr0, "initial learning rate")->capture_default_str();
  cmd_train->add_option("--lr-min", train.opt.lr_min, "learning-rate floor (0: lr*1e-4)")
      ->capture_default_str();
  cmd_train->add_option("--alpha", train.opt.noise_exponent, "noise exponent on node counts")
      ->capture_default_str();
  cmd_train->add_option("--seed", train.opt.seed, "random seed")->capture_default_str();
  cmd_train->add_option("--workers", train.opt.workers,
                        "worker threads (>1 is lock-free, non-deterministic)")
      ->capture_default_str();
  cmd_train->add_option("--index", train.index, "index.tsv naming the graph vectors");
  cmd_train->add_option("--node-output", train.node_output, "node embedding file")->required();
  cmd_train->add_option("--graph-output", train.graph_output, "graph embedding file");
  cmd_train->add_option("--trace", train.trace, "objective trace CSV");

  EgoArgs ego;
  auto* cmd_ego = app.add_subcommand("ego", "extract ego networks around listed centers");
  cmd_ego->add_option("--input", ego.input, "edge-list file")->required();
  cmd_ego->add_option("--centers", ego.centers, "file with one center label per line")->required();
  cmd_ego->add_flag("--directed", ego.directed, "treat edges as directed");
  cmd_ego->add_option("--outdir", ego.outdir, "output directory")->required();

  auto* cmd_eval = app.add_subcommand("eval", "evaluation protocols");
  cmd_eval->require_subcommand(1);

  EvalRoleArgs role;
  auto* cmd_role = cmd_eval->add_subcommand("role", "precision@k role retrieval");
  cmd_role->add_option("--embeddings", role.embeddings, "embedding file")->required();
  cmd_role->add_option("--labels", role.labels, "label file")->required();
  cmd_role->add_option("--k", role.ks, "comma-separated cut-offs")->capture_default_str();
  cmd_role->add_option("--output", role.output, "metrics CSV")->required();

  EvalAnalogyArgs analogy;
  auto* cmd_analogy = cmd_eval->add_subcommand("analogy", "vector-offset analogy hit@k");
  cmd_analogy->add_option("--embeddings", analogy.embeddings, "embedding file")->required();
  cmd_analogy->add_option("--tuples", analogy.tuples, "file of 'a b c d' tuples")->required();
  cmd_analogy->add_option("--k", analogy.ks, "comma-separated cut-offs")->capture_default_str();
  cmd_analogy->add_option("--output", analogy.output, "metrics CSV")->required();

  EvalClassifyArgs classify;
  auto* cmd_classify = cmd_eval->add_subcommand("classify", "one-vs-rest multi-label F1");
  cmd_classify->add_option("--embeddings", classify.embeddings, "embedding file")->required();
  cmd_classify->add_option("--labels", classify.labels, "label file")->required();
  cmd_classify->add_option("--train-fraction", classify.train_fraction,
                           "labeled fraction (default sweeps 0.1..0.9)");
  cmd_classify->add_option("--repeats", classify.repeats, "random splits to average")
      ->capture_default_str();
  cmd_classify->add_option("--l2", classify.l2, "L2 regularization strength")
      ->capture_default_str();
  cmd_classify->add_option("--seed", classify.seed, "split seed")->capture_default_str();
  cmd_classify->add_option("--output", classify.output, "metrics CSV")->required();

  EvalProjectArgs project;
  auto* cmd_project = cmd_eval->add_subcommand("project", "dump 2-d coordinates for plotting");
  cmd_project->add_option("--embeddings", project.embeddings, "2-d embedding file")->required();
  cmd_project->add_option("--labels", project.labels, "optional label file for tags");
  cmd_project->add_option("--output", project.output, "CSV of id,x,y,tag")->required();

  std::string manifest_path;
  auto* cmd_rerun = app.add_subcommand("rerun", "re-execute a recorded run manifest");
  cmd_rerun->add_option("--manifest", manifest_path, "manifest JSON")->required();

  std::vector<const char*> cargv;
  cargv.push_back("netvec");
  for (const auto& tok : argv) cargv.push_back(tok.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cmd_walks->parsed()) run_walks(walks, argv);
  if (cmd_train->parsed()) run_train(train, argv);
  if (cmd_ego->parsed()) run_ego(ego, argv);
  if (cmd_role->parsed()) run_eval_role(role, argv);
  if (cmd_analogy->parsed()) run_eval_analogy(analogy, argv);
  if (cmd_classify->parsed()) run_eval_classify(classify, argv);
  if (cmd_project->parsed()) run_eval_project(project, argv);
  if (cmd_rerun->parsed()) run_rerun(manifest_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
}
