#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace netvec {

// Accumulates edges with first-seen id assignment and weight merging, then
// emits sorted CSR rows.
class EdgeAccumulator {
 public:
  explicit EdgeAccumulator(bool directed) : directed_(directed) {}

  uint32_t node(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(labels_.size());
    labels_.push_back(label);
    index_.emplace(label, id);
    return id;
  }

  void edge(uint32_t a, uint32_t b, double w) {
    if (!directed_ && b < a) std::swap(a, b);
    acc_[{a, b}] += w;
  }

  Graph build() {
    Graph g;
    g.directed_ = directed_;
    g.labels_ = std::move(labels_);
    g.index_ = std::move(index_);
    size_t n = g.labels_.size();

    std::vector<std::vector<std::pair<uint32_t, double>>> rows(n);
    size_t undirected_edges = 0;
    for (const auto& [key, w] : acc_) {
      auto [a, b] = key;
      rows[a].emplace_back(b, w);
      if (!directed_) {
        ++undirected_edges;
        if (a != b) rows[b].emplace_back(a, w);
      }
    }
    g.edge_count_ = directed_ ? acc_.size() : undirected_edges;

    g.offsets_.assign(n + 1, 0);
    for (size_t v = 0; v < n; ++v) {
      std::sort(rows[v].begin(), rows[v].end());
      g.offsets_[v + 1] = g.offsets_[v] + static_cast<uint32_t>(rows[v].size());
      for (auto& [nbr, w] : rows[v]) {
        g.nbr_.push_back(nbr);
        g.wgt_.push_back(w);
      }
    }
    return g;
  }

 private:
  bool directed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, uint32_t> index_;
  std::map<std::pair<uint32_t, uint32_t>, double> acc_;
};

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_weight(const std::string& tok, double* out) {
  try {
    size_t used = 0;
    *out = std::stod(tok, &used);
    return used == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Graph Graph::from_edges(const std::vector<std::string>& node_order,
                        const std::vector<std::tuple<std::string, std::string, double>>& edges,
                        bool directed) {
  EdgeAccumulator b(directed);
  for (const auto& label : node_order) b.node(label);
  for (const auto& [src, dst, w] : edges) {
    if (w <= 0) throw_validation("non-positive edge weight for " + src + " -> " + dst);
    uint32_t a = b.node(src);  // sequenced so ids follow first-seen order
    uint32_t c = b.node(dst);
    b.edge(a, c, w);
  }
  return b.build();
}

Graph::Neighborhood Graph::neighbors(uint32_t v) const {
  size_t lo = offsets_[v], hi = offsets_[v + 1];
  return {std::span<const uint32_t>(nbr_.data() + lo, hi - lo),
          std::span<const double>(wgt_.data() + lo, hi - lo)};
}

bool Graph::has_edge(uint32_t from, uint32_t to) const {
  auto nb = neighbors(from);
  return std::binary_search(nb.ids.begin(), nb.ids.end(), to);
}

double Graph::edge_weight(uint32_t from, uint32_t to) const {
  auto nb = neighbors(from);
  auto it = std::lower_bound(nb.ids.begin(), nb.ids.end(), to);
  if (it == nb.ids.end() || *it != to) return 0.0;
  return nb.weights[static_cast<size_t>(it - nb.ids.begin())];
}

size_t Graph::edge_position(uint32_t from, uint32_t to) const {
  size_t lo = offsets_[from], hi = offsets_[from + 1];
  auto begin = nbr_.begin() + lo, end = nbr_.begin() + hi;
  auto it = std::lower_bound(begin, end, to);
  if (it == end || *it != to) return npos;
  return lo + static_cast<size_t>(it - begin);
}

uint32_t Graph::id_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw_lookup("unknown node '" + label + "'");
  return it->second;
}

Graph parse_edge_list(const std::string& text, bool directed, const std::string& origin) {
  EdgeAccumulator b(directed);
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() == 1) {
      b.node(toks[0]);  // isolated-node declaration
      continue;
    }
    if (toks.size() > 3)
      throw_parse(origin + ":" + std::to_string(lineno) + ": expected 'src dst [weight]'");
    double w = 1.0;
    if (toks.size() == 3 && !parse_weight(toks[2], &w))
      throw_parse(origin + ":" + std::to_string(lineno) + ": bad weight '" + toks[2] + "'");
    if (!(w > 0))
      throw_validation(origin + ":" + std::to_string(lineno) + ": non-positive edge weight");
    uint32_t src = b.node(toks[0]);
    uint32_t dst = b.node(toks[1]);
    b.edge(src, dst, w);
  }
  return b.build();
}

Graph load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open edge list '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str(), directed, path);
}

std::string serialize_edge_list(const Graph& g) {
  // Node declarations first so that reloading reassigns identical dense ids.
  std::string out;
  char num[64];
  for (size_t v = 0; v < g.node_count(); ++v) {
    out += g.label(static_cast<uint32_t>(v));
    out += '\n';
  }
  for (uint32_t v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    for (size_t j = 0; j < nb.size(); ++j) {
      uint32_t u = nb.ids[j];
      if (!g.directed() && u < v) continue;  // emit undirected edges once
      std::snprintf(num, sizeof(num), "%.17g", nb.weights[j]);
      out += g.label(v);
      out += '\t';
      out += g.label(u);
      out += '\t';
      out += num;
      out += '\n';
    }
  }
  return out;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write edge list '" + path + "'");
  out << serialize_edge_list(g);
  if (!out) throw_io("failed writing edge list '" + path + "'");
}

EgoNetwork ego_network(const Graph& g, uint32_t center) {
  if (center >= g.node_count()) throw_lookup("ego center id out of range");

  std::vector<uint32_t> members;
  members.push_back(center);
  for (uint32_t u : g.neighbors(center).ids)
    if (u != center) members.push_back(u);
  std::sort(members.begin(), members.end());

  std::unordered_map<uint32_t, uint32_t> local;
  local.reserve(members.size());
  for (uint32_t i = 0; i < members.size(); ++i) local.emplace(members[i], i);

  std::vector<std::string> order;
  order.reserve(members.size());
  for (uint32_t p : members) order.push_back(g.label(p));

  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (uint32_t p : members) {
    auto nb = g.neighbors(p);
    for (size_t j = 0; j < nb.size(); ++j) {
      uint32_t u = nb.ids[j];
      if (!local.count(u)) continue;
      if (!g.directed() && u < p) continue;
      edges.emplace_back(g.label(p), g.label(u), nb.weights[j]);
    }
  }

  EgoNetwork ego;
  ego.subgraph = Graph::from_edges(order, edges, g.directed());
  ego.parent_ids = std::move(members);
  ego.center_local = local.at(center);
  return ego;
}

EgoNetwork ego_network(const Graph& g, const std::string& center_label) {
  return ego_network(g, g.id_of(center_label));
}

std::vector<double> top_symmetric_eigenvalues(std::vector<double> m, size_t n, size_t count,
                                              double tolerance) {
  std::vector<double> eigs;
  if (n > 0) {
    // Gershgorin shift makes the spectrum non-negative, so the dominant
    // eigenvalue of the shifted matrix is the algebraically largest one.
    double shift = 0;
    for (size_t i = 0; i < n; ++i) {
      double row = 0;
      for (size_t j = 0; j < n; ++j) row += std::fabs(m[i * n + j]);
      shift = std::max(shift, row);
    }
    for (size_t i = 0; i < n; ++i) m[i * n + i] += shift;

    Rng rng(0x9d2c5680u);
    std::vector<double> x(n), y(n);
    size_t wanted = std::min(count, n);
    for (size_t k = 0; k < wanted; ++k) {
      for (auto& v : x) v = rng.next_uniform(-1.0, 1.0);
      double lambda = 0;
      for (int iter = 0; iter < 20000; ++iter) {
        for (size_t i = 0; i < n; ++i) {
          double s = 0;
          for (size_t j = 0; j < n; ++j) s += m[i * n + j] * x[j];
          y[i] = s;
        }
        double norm = 0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-300) {
          lambda = 0;
          break;
        }
        double rayleigh = 0;
        for (size_t i = 0; i < n; ++i) rayleigh += x[i] * y[i];
        for (size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (std::fabs(rayleigh - lambda) <= tolerance * std::max(1.0, std::fabs(rayleigh))) {
          lambda = rayleigh;
          break;
        }
        lambda = rayleigh;
      }
      eigs.push_back(lambda - shift);
      // deflate
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i * n + j] -= lambda * x[i] * x[j];
    }
  }
  eigs.resize(count, 0.0);
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

StructuralFeatures structural_features(const Graph& g) {
  size_t n = g.node_count();
  if (n == 0) throw_validation("structural features of an empty graph");

  StructuralFeatures f;
  f.node_count = static_cast<double>(n);
  f.edge_count = static_cast<double>(g.edge_count());

  size_t total_out = 0, max_out = 0;
  std::vector<size_t> in_deg(n, 0);
  for (uint32_t v = 0; v < n; ++v) {
    size_t d = g.out_degree(v);
    total_out += d;
    max_out = std::max(max_out, d);
    for (uint32_t u : g.neighbors(v).ids) ++in_deg[u];
  }
  f.average_degree = static_cast<double>(total_out) / static_cast<double>(n);
  f.max_out_degree = static_cast<double>(max_out);
  f.max_in_degree = static_cast<double>(*std::max_element(in_deg.begin(), in_deg.end()));
  if (!g.directed()) f.max_in_degree = f.max_out_degree;

  // Clustering on the undirected simple skeleton, self-loops excluded.
  std::vector<std::vector<uint32_t>> adj(n);
  for (uint32_t v = 0; v < n; ++v)
    for (uint32_t u : g.neighbors(v).ids)
      if (u != v) {
        adj[v].push_back(u);
        adj[u].push_back(v);
      }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  double triangles2 = 0, triples = 0, local_sum = 0;
  for (uint32_t v = 0; v < n; ++v) {
    const auto& nb = adj[v];
    size_t k = nb.size();
    if (k < 2) continue;
    size_t closed = 0;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        if (std::binary_search(adj[nb[i]].begin(), adj[nb[i]].end(), nb[j])) ++closed;
    double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
    triangles2 += static_cast<double>(closed);
    triples += pairs;
    local_sum += static_cast<double>(closed) / pairs;
  }
  f.global_clustering = triples > 0 ? triangles2 / triples : 0.0;
  f.mean_clustering = local_sum / static_cast<double>(n);

  // Symmetrized weighted adjacency, (A + A^T) / 2 for directed graphs.
  std::vector<double> dense(n * n, 0.0);
  for (uint32_t v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    for (size_t j = 0; j < nb.size(); ++j) {
      uint32_t u = nb.ids[j];
      double w = g.directed() ? nb.weights[j] * 0.5 : nb.weights[j];
      if (g.directed()) {
        dense[v * n + u] += w;
        dense[u * n + v] += w;
      } else {
        dense[v * n + u] = w;
      }
    }
  }
  auto eigs = top_symmetric_eigenvalues(std::move(dense), n, f.eigenvalues.size());
  std::copy(eigs.begin(), eigs.end(), f.eigenvalues.begin());
  return f;
}

std::array<double, 17> StructuralFeatures::as_array() const {
  std::array<double, 17> a{};
  a[0] = node_count;
  a[1] = edge_count;
  a[2] = average_degree;
  a[3] = max_in_degree;
  a[4] = max_out_degree;
  a[5] = global_clustering;
  a[6] = mean_clustering;
  for (size_t i = 0; i < eigenvalues.size(); ++i) a[7 + i] = eigenvalues[i];
  return a;
}

}  // namespace netvec
