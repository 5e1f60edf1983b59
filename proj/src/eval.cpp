#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace netvec {

EmbeddingSet EmbeddingSet::from_rows(std::vector<std::string> row_ids, std::vector<double> rows,
                                     uint32_t dim) {
  EmbeddingSet e;
  e.ids = std::move(row_ids);
  e.data = std::move(rows);
  e.dim = dim;
  if (e.ids.size() * dim != e.data.size()) throw_validation("embedding matrix shape mismatch");
  for (uint32_t i = 0; i < e.ids.size(); ++i) {
    if (!e.index.emplace(e.ids[i], i).second)
      throw_validation("duplicate embedding id '" + e.ids[i] + "'");
  }
  return e;
}

EmbeddingSet EmbeddingSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open embeddings '" + path + "'");
  size_t count = 0;
  uint32_t dim = 0;
  if (!(in >> count >> dim) || dim == 0) throw_parse(path + ": bad embedding header");
  std::vector<std::string> ids;
  std::vector<double> data;
  ids.reserve(count);
  data.reserve(count * dim);
  for (size_t i = 0; i < count; ++i) {
    std::string id;
    if (!(in >> id)) throw_parse(path + ": truncated embedding file");
    ids.push_back(id);
    for (uint32_t k = 0; k < dim; ++k) {
      double v;
      if (!(in >> v)) throw_parse(path + ": truncated vector for '" + id + "'");
      data.push_back(v);
    }
  }
  return from_rows(std::move(ids), std::move(data), dim);
}

void EmbeddingSet::save(const std::string& path) const { save_embeddings(ids, data, dim, path); }

uint32_t EmbeddingSet::id_of(const std::string& id) const {
  auto it = index.find(id);
  if (it == index.end()) throw_lookup("unknown embedding id '" + id + "'");
  return it->second;
}

EvalLabeling load_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open labels '" + path + "'");
  EvalLabeling labels;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string node, rest;
    if (!(ls >> node >> rest))
      throw_parse(path + ":" + std::to_string(lineno) + ": expected 'node label[,label...]'");
    std::set<std::string> uniq;
    std::string tok;
    std::istringstream commas(rest);
    while (std::getline(commas, tok, ','))
      if (!tok.empty()) uniq.insert(tok);
    if (uniq.empty()) throw_parse(path + ":" + std::to_string(lineno) + ": node without labels");
    auto& out = labels[node];
    out.insert(out.end(), uniq.begin(), uniq.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return labels;
}

void validate_labeling(const EvalLabeling& labels, const EmbeddingSet& embeddings) {
  for (const auto& [node, _] : labels)
    if (!embeddings.contains(node))
      throw_validation("labeled node '" + node + "' missing from the embedding vocabulary");
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw_validation("cosine of vectors with different dimensions");
  double uu = 0, vv = 0, uv = 0;
  for (size_t k = 0; k < u.size(); ++k) {
    uu += u[k] * u[k];
    vv += v[k] * v[k];
    uv += u[k] * v[k];
  }
  if (uu == 0 || vv == 0) throw_validation("cosine of a zero vector");
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

namespace {

bool share_label(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

// Descending score, ties by ascending index.
void rank_indices(std::vector<std::pair<double, uint32_t>>& scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
}

}  // namespace

double precision_at_k(const EmbeddingSet& e, uint32_t query, const EvalLabeling& labels,
                      uint32_t k) {
  if (query >= e.count()) throw_lookup("precision query out of range");
  auto qit = labels.find(e.ids[query]);
  if (qit == labels.end()) throw_validation("precision query '" + e.ids[query] + "' is unlabeled");
  if (k == 0) throw_validation("precision cut-off must be positive");

  std::vector<std::pair<double, uint32_t>> scored;
  for (const auto& [node, _] : labels) {
    uint32_t i = e.id_of(node);
    if (i == query) continue;
    scored.emplace_back(cosine(e.vec(query), e.vec(i)), i);
  }
  if (scored.size() < k) throw_validation("not enough labeled candidates for precision@k");
  rank_indices(scored);

  size_t hits = 0;
  for (uint32_t r = 0; r < k; ++r)
    if (share_label(qit->second, labels.at(e.ids[scored[r].second]))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::vector<double> mean_precision_at(const EmbeddingSet& e, const EvalLabeling& labels,
                                      std::span<const uint32_t> ks) {
  validate_labeling(labels, e);
  if (labels.empty()) throw_validation("no labeled nodes to evaluate");
  std::vector<double> means(ks.size(), 0.0);
  for (const auto& [node, _] : labels) {
    uint32_t q = e.id_of(node);
    for (size_t i = 0; i < ks.size(); ++i) means[i] += precision_at_k(e, q, labels, ks[i]);
  }
  for (auto& v : means) v /= static_cast<double>(labels.size());
  return means;
}

std::vector<AnalogyTuple> load_tuples(const std::string& path, const EmbeddingSet& e) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open tuples '" + path + "'");
  std::vector<AnalogyTuple> tuples;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    AnalogyTuple t;
    if (!(ls >> t.a >> t.b >> t.c >> t.d))
      throw_parse(path + ":" + std::to_string(lineno) + ": expected four ids");
    std::string extra;
    if (ls >> extra) throw_parse(path + ":" + std::to_string(lineno) + ": expected four ids");
    std::set<std::string> uniq{t.a, t.b, t.c, t.d};
    if (uniq.size() != 4)
      throw_validation(path + ":" + std::to_string(lineno) + ": tuple ids must be distinct");
    for (const auto& id : uniq)
      if (!e.contains(id))
        throw_validation(path + ":" + std::to_string(lineno) + ": unknown id '" + id + "'");
    tuples.push_back(std::move(t));
  }
  return tuples;
}

std::vector<uint32_t> analogy_query(const EmbeddingSet& e, uint32_t a, uint32_t b, uint32_t c) {
  std::vector<double> target(e.dim);
  auto va = e.vec(a), vb = e.vec(b), vc = e.vec(c);
  double norm = 0;
  for (uint32_t k = 0; k < e.dim; ++k) {
    target[k] = vb[k] - va[k] + vc[k];
    norm += target[k] * target[k];
  }
  if (norm == 0) throw_validation("analogy query vector is zero");

  std::vector<std::pair<double, uint32_t>> scored;
  scored.reserve(e.count());
  for (uint32_t i = 0; i < e.count(); ++i) {
    if (i == a || i == b || i == c) continue;
    scored.emplace_back(cosine(target, e.vec(i)), i);
  }
  rank_indices(scored);
  std::vector<uint32_t> ranked;
  ranked.reserve(scored.size());
  for (const auto& [_, i] : scored) ranked.push_back(i);
  return ranked;
}

std::vector<double> analogy_hit_rates(const EmbeddingSet& e,
                                      const std::vector<AnalogyTuple>& tuples,
                                      std::span<const uint32_t> ks) {
  if (tuples.empty()) throw_validation("no analogy tuples to evaluate");
  std::vector<double> hits(ks.size(), 0.0);
  for (const auto& t : tuples) {
    auto ranked = analogy_query(e, e.id_of(t.a), e.id_of(t.b), e.id_of(t.c));
    uint32_t want = e.id_of(t.d);
    size_t rank = ranked.size();
    for (size_t r = 0; r < ranked.size(); ++r)
      if (ranked[r] == want) {
        rank = r;
        break;
      }
    for (size_t i = 0; i < ks.size(); ++i)
      if (rank < ks[i]) hits[i] += 1.0;
  }
  for (auto& h : hits) h /= static_cast<double>(tuples.size());
  return hits;
}

double logreg_loss(std::span<const double> xs, std::span<const double> ys, uint32_t dim,
                   std::span<const double> w, double b, double l2) {
  size_t m = ys.size();
  double loss = 0;
  for (size_t i = 0; i < m; ++i) {
    double z = b;
    for (uint32_t k = 0; k < dim; ++k) z += w[k] * xs[i * dim + k];
    double yz = ys[i] * z;
    // log(1 + exp(-yz)) without overflow
    loss += yz > 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
  }
  loss /= static_cast<double>(m);
  double reg = 0;
  for (uint32_t k = 0; k < dim; ++k) reg += w[k] * w[k];
  return loss + 0.5 * l2 * reg;
}

void logreg_gradient(std::span<const double> xs, std::span<const double> ys, uint32_t dim,
                     std::span<const double> w, double b, double l2, std::span<double> grad_w,
                     double* grad_b) {
  size_t m = ys.size();
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  double gb = 0;
  for (size_t i = 0; i < m; ++i) {
    double z = b;
    for (uint32_t k = 0; k < dim; ++k) z += w[k] * xs[i * dim + k];
    double yz = ys[i] * z;
    double s = 1.0 / (1.0 + std::exp(yz));  // sigmoid(-yz)
    double coef = -ys[i] * s;
    for (uint32_t k = 0; k < dim; ++k) grad_w[k] += coef * xs[i * dim + k];
    gb += coef;
  }
  double inv = 1.0 / static_cast<double>(m);
  for (uint32_t k = 0; k < dim; ++k) grad_w[k] = grad_w[k] * inv + l2 * w[k];
  *grad_b = gb * inv;
}

double OvrLogReg::probability(size_t label_idx, std::span<const double> x) const {
  if (no_positives[label_idx]) return 0.0;
  double z = bias[label_idx];
  const double* w = weights.data() + label_idx * dim;
  for (uint32_t k = 0; k < dim; ++k) z += w[k] * x[k];
  return 1.0 / (1.0 + std::exp(-z));
}

std::vector<double> fit_binary_logreg(std::span<const double> xs, std::span<const double> ys,
                                      uint32_t dim, double l2, std::span<double> w_out,
                                      double* b_out) {
  std::vector<double> w(dim, 0.0), gw(dim), trial(dim);
  double b = 0;
  double step = 1.0;
  // The weight direction is damped by the regularizer curvature so a strongly
  // regularized w cannot starve the unregularized bias of step size.
  double damping = 1.0 + l2;
  std::vector<double> trace{logreg_loss(xs, ys, dim, w, b, l2)};
  for (int iter = 0; iter < 1000; ++iter) {
    double gb = 0;
    logreg_gradient(xs, ys, dim, w, b, l2, gw, &gb);
    double gnorm2 = gb * gb;
    for (double g : gw) gnorm2 += g * g;
    if (std::sqrt(gnorm2) < 1e-6) break;
    double descent = gb * gb;  // gradient dot direction
    for (double g : gw) descent += g * g / damping;

    // Backtracking line search keeps the loss monotone.
    step *= 2.0;
    double next_loss, next_b;
    for (;;) {
      for (uint32_t k = 0; k < dim; ++k) trial[k] = w[k] - step / damping * gw[k];
      next_b = b - step * gb;
      next_loss = logreg_loss(xs, ys, dim, trial, next_b, l2);
      if (next_loss <= trace.back() - 1e-4 * step * descent || step < 1e-16) break;
      step *= 0.5;
    }
    if (next_loss > trace.back()) break;  // no progress left at any step size
    std::copy(trial.begin(), trial.end(), w.begin());
    b = next_b;
    trace.push_back(next_loss);
  }
  std::copy(w.begin(), w.end(), w_out.begin());
  *b_out = b;
  return trace;
}

OvrLogReg train_ovr_logreg(const EmbeddingSet& features, const EvalLabeling& labels, double l2,
                           const std::vector<std::string>& train_ids) {
  if (train_ids.empty()) throw_validation("empty training set");
  std::set<std::string> universe;
  for (const auto& [_, ls] : labels)
    for (const auto& l : ls) universe.insert(l);

  OvrLogReg clf;
  clf.dim = features.dim;
  clf.labels.assign(universe.begin(), universe.end());
  clf.weights.assign(clf.labels.size() * features.dim, 0.0);
  clf.bias.assign(clf.labels.size(), 0.0);
  clf.no_positives.assign(clf.labels.size(), 0);

  size_t m = train_ids.size();
  std::vector<double> xs(m * features.dim);
  for (size_t i = 0; i < m; ++i) {
    auto it = labels.find(train_ids[i]);
    if (it == labels.end()) throw_validation("training node '" + train_ids[i] + "' is unlabeled");
    auto x = features.vec(features.id_of(train_ids[i]));
    std::copy(x.begin(), x.end(), xs.begin() + i * features.dim);
  }

  std::vector<double> ys(m);
  for (size_t li = 0; li < clf.labels.size(); ++li) {
    const std::string& label = clf.labels[li];
    size_t positives = 0;
    for (size_t i = 0; i < m; ++i) {
      const auto& ls = labels.at(train_ids[i]);
      bool pos = std::binary_search(ls.begin(), ls.end(), label);
      ys[i] = pos ? 1.0 : -1.0;
      positives += pos;
    }
    if (positives == 0) {
      clf.no_positives[li] = 1;
      continue;
    }
    std::span<double> w(clf.weights.data() + li * features.dim, features.dim);
    fit_binary_logreg(xs, ys, features.dim, l2, w, &clf.bias[li]);
  }
  return clf;
}

namespace {

std::vector<std::string> predict_labels(const OvrLogReg& clf, std::span<const double> x) {
  std::vector<std::string> out;
  size_t best = 0;
  double best_p = -1;
  for (size_t li = 0; li < clf.labels.size(); ++li) {
    double p = clf.probability(li, x);
    if (p > best_p) {
      best_p = p;
      best = li;
    }
    if (p > 0.5) out.push_back(clf.labels[li]);
  }
  if (out.empty()) out.push_back(clf.labels[best]);  // always emit at least the top-1
  return out;
}

}  // namespace

F1Scores multilabel_f1(const OvrLogReg& clf, const EmbeddingSet& features,
                       const std::vector<std::string>& test_ids, const EvalLabeling& labels) {
  if (test_ids.empty()) throw_validation("empty test set");

  std::map<std::string, std::array<uint64_t, 3>> per_label;  // tp, fp, fn
  uint64_t tp = 0, fp = 0, fn = 0;
  for (const auto& id : test_ids) {
    auto it = labels.find(id);
    if (it == labels.end()) throw_validation("test node '" + id + "' is unlabeled");
    auto predicted = predict_labels(clf, features.vec(features.id_of(id)));
    const auto& gold = it->second;
    for (const auto& l : predicted) {
      if (std::binary_search(gold.begin(), gold.end(), l)) {
        ++per_label[l][0];
        ++tp;
      } else {
        ++per_label[l][1];
        ++fp;
      }
    }
    for (const auto& l : gold) {
      if (!std::binary_search(predicted.begin(), predicted.end(), l)) {
        ++per_label[l][2];
        ++fn;
      }
    }
  }

  F1Scores f1;
  double macro_sum = 0;
  for (const auto& [_, counts] : per_label) {
    double denom = 2.0 * counts[0] + counts[1] + counts[2];
    macro_sum += denom > 0 ? 2.0 * counts[0] / denom : 0.0;
  }
  f1.macro = per_label.empty() ? 0.0 : macro_sum / static_cast<double>(per_label.size());
  double denom = 2.0 * tp + fp + fn;
  f1.micro = denom > 0 ? 2.0 * tp / denom : 0.0;
  return f1;
}

double top1_accuracy(const OvrLogReg& clf, const EmbeddingSet& features,
                     const std::vector<std::string>& ids, const EvalLabeling& labels) {
  if (ids.empty()) throw_validation("empty id set");
  size_t correct = 0;
  for (const auto& id : ids) {
    auto x = features.vec(features.id_of(id));
    size_t best = 0;
    double best_p = -1;
    for (size_t li = 0; li < clf.labels.size(); ++li) {
      double p = clf.probability(li, x);
      if (p > best_p) {
        best_p = p;
        best = li;
      }
    }
    const auto& gold = labels.at(id);
    if (std::binary_search(gold.begin(), gold.end(), clf.labels[best])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ids.size());
}

F1Scores classify_protocol(const EmbeddingSet& features, const EvalLabeling& labels,
                           double train_fraction, uint32_t repeats, double l2, uint64_t seed) {
  if (!(train_fraction > 0) || !(train_fraction < 1))
    throw_validation("train fraction must lie in (0, 1)");
  if (repeats == 0) throw_validation("need at least one repetition");
  validate_labeling(labels, features);

  // Stratify by the first (lexicographically smallest) label.
  std::map<std::string, std::vector<std::string>> strata;
  for (const auto& [node, ls] : labels) strata[ls.front()].push_back(node);

  F1Scores mean;
  for (uint32_t rep = 0; rep < repeats; ++rep) {
    std::vector<std::string> train_ids, test_ids;
    uint64_t rep_seed = mix_seed(seed, rep, 0x53504c4954ULL);
    size_t stratum_idx = 0;
    for (auto& [_, nodes] : strata) {
      std::vector<std::string> shuffled = nodes;
      Rng rng(mix_seed(rep_seed, stratum_idx++));
      for (size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
      size_t cut = static_cast<size_t>(std::llround(train_fraction * shuffled.size()));
      for (size_t i = 0; i < shuffled.size(); ++i)
        (i < cut ? train_ids : test_ids).push_back(shuffled[i]);
    }
    if (train_ids.empty() || test_ids.empty())
      throw_validation("degenerate train/test split; adjust the fraction");
    auto clf = train_ovr_logreg(features, labels, l2, train_ids);
    auto f1 = multilabel_f1(clf, features, test_ids, labels);
    mean.macro += f1.macro;
    mean.micro += f1.micro;
  }
  mean.macro /= repeats;
  mean.micro /= repeats;
  return mean;
}

RolePipelineResult role_discovery_pipeline(const Graph& g, const std::vector<std::string>& centers,
                                           const EvalLabeling& labels, const WalkConfig& wcfg,
                                           const TrainConfig& tcfg, uint32_t dim,
                                           std::span<const uint32_t> ks) {
  if (centers.empty()) throw_validation("no centers for role discovery");

  std::vector<EgoNetwork> egos;
  egos.reserve(centers.size());
  for (const auto& center : centers) egos.push_back(ego_network(g, center));
  std::vector<const Graph*> subgraphs;
  subgraphs.reserve(centers.size());
  for (const auto& ego : egos) subgraphs.push_back(&ego.subgraph);

  WalkCorpus corpus = generate_corpus(subgraphs, wcfg, tcfg.workers);
  EmbeddingModel model = EmbeddingModel::init(corpus.vocab.size(), centers.size(), dim,
                                              tcfg.window, tcfg.seed);
  train(model, corpus, tcfg);

  std::vector<double> rows(centers.size() * dim);
  for (uint32_t gi = 0; gi < centers.size(); ++gi) {
    auto vg = model.graph_vec(gi);
    std::copy(vg.begin(), vg.end(), rows.begin() + size_t(gi) * dim);
  }
  RolePipelineResult result;
  result.graph_vectors = EmbeddingSet::from_rows(centers, std::move(rows), dim);

  auto means = mean_precision_at(result.graph_vectors, labels, ks);
  for (size_t i = 0; i < ks.size(); ++i) result.precision.emplace_back(ks[i], means[i]);
  return result;
}

void write_projection(const EmbeddingSet& e, const EvalLabeling* tags, const std::string& path) {
  if (e.dim != 2) throw_validation("projection dump requires 2-d embeddings");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write projection '" + path + "'");
  out << "id,x,y,tag\n";
  char num[64];
  for (uint32_t i = 0; i < e.count(); ++i) {
    auto v = e.vec(i);
    out << e.ids[i];
    std::snprintf(num, sizeof(num), "%.9g", v[0]);
    out << ',' << num;
    std::snprintf(num, sizeof(num), "%.9g", v[1]);
    out << ',' << num << ',';
    if (tags) {
      auto it = tags->find(e.ids[i]);
      if (it != tags->end()) {
        for (size_t j = 0; j < it->second.size(); ++j) {
          if (j) out << ';';
          out << it->second[j];
        }
      }
    }
    out << '\n';
  }
  if (!out) throw_io("failed writing projection '" + path + "'");
}

}  // namespace netvec
