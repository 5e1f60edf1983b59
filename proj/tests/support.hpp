#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) {
  return std::string(NETVEC_DATA_DIR) + "/" + name;
}

// Fresh per-use temp directory under the build tree.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("netvec_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string dir() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Erdos-Renyi style random graph with string labels n0..n{k-1}.
inline netvec::Graph random_graph(uint64_t seed, size_t n, double edge_prob, bool directed = false,
                                  bool weighted = false) {
  netvec::Rng rng(seed);
  std::vector<std::string> order;
  order.reserve(n);
  for (size_t i = 0; i < n; ++i) order.push_back("n" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (size_t a = 0; a < n; ++a) {
    size_t begin = directed ? 0 : a + 1;
    for (size_t b = begin; b < n; ++b) {
      if (directed && a == b) continue;
      if (rng.next_double() < edge_prob) {
        double w = weighted ? rng.next_uniform(0.25, 4.0) : 1.0;
        edges.emplace_back(order[a], order[b], w);
      }
    }
  }
  return netvec::Graph::from_edges(order, edges, directed);
}

// Dense Jacobi eigenvalue sweep; independent oracle for spectra of small
// symmetric matrices.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> m, size_t n) {
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += m[i * n + j] * m[i * n + j];
    if (off < 1e-24) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        double apq = m[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (m[q * n + q] - m[p * n + p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = m[k * n + p], akq = m[k * n + q];
          m[k * n + p] = c * akp - s * akq;
          m[k * n + q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = m[p * n + k], aqk = m[q * n + k];
          m[p * n + k] = c * apk - s * aqk;
          m[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (size_t i = 0; i < n; ++i) eig[i] = m[i * n + i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& x) {
    size_t n = x.size();
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return x[i] < x[j]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
      double mean = 0.5 * (i + j) + 1.0;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = mean;
      i = j + 1;
    }
    return r;
  };
  auto ra = ranks(a), rb = ranks(b);
  double ma = 0, mb = 0;
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (size_t i = 0; i < n; ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

// Synthetic role-discovery world: one parent graph holding hub-style centers
// (a star around shared high-degree anchors) and clique-style centers
// (embedded in shared dense cores), mimicking the two citation patterns.
struct RoleWorld {
  netvec::Graph parent;
  std::vector<std::string> centers;
  std::vector<std::string> center_labels;  // "hub" or "clique" per center
};

inline RoleWorld make_role_world(uint64_t seed, size_t per_class = 50) {
  netvec::Rng rng(seed);
  std::vector<std::tuple<std::string, std::string, double>> edges;
  std::vector<std::string> order;
  auto add_edge = [&](const std::string& a, const std::string& b) {
    edges.emplace_back(a, b, 1.0);
  };

  const size_t n_anchors = 8;
  std::vector<std::string> anchors;
  for (size_t i = 0; i < n_anchors; ++i) anchors.push_back("hubanchor" + std::to_string(i));

  RoleWorld world;
  size_t leaf_id = 0;
  for (size_t c = 0; c < per_class; ++c) {
    std::string center = "hc" + std::to_string(c);
    world.centers.push_back(center);
    world.center_labels.push_back("hub");
    // three shared anchors plus private leaves; neighbors stay unconnected
    std::vector<size_t> picks;
    while (picks.size() < 3) {
      size_t a = rng.next_below(n_anchors);
      if (std::find(picks.begin(), picks.end(), a) == picks.end()) picks.push_back(a);
    }
    for (size_t a : picks) add_edge(center, anchors[a]);
    size_t leaves = 4 + rng.next_below(4);
    for (size_t l = 0; l < leaves; ++l) add_edge(center, "leaf" + std::to_string(leaf_id++));
  }

  const size_t n_cores = 10, core_size = 6;
  std::vector<std::vector<std::string>> cores(n_cores);
  for (size_t k = 0; k < n_cores; ++k) {
    for (size_t i = 0; i < core_size; ++i) cores[k].push_back("core" + std::to_string(k) + "_" + std::to_string(i));
    for (size_t i = 0; i < core_size; ++i)
      for (size_t j = i + 1; j < core_size; ++j) add_edge(cores[k][i], cores[k][j]);
  }
  for (size_t c = 0; c < per_class; ++c) {
    std::string center = "cc" + std::to_string(c);
    world.centers.push_back(center);
    world.center_labels.push_back("clique");
    const auto& core = cores[c % n_cores];
    for (const auto& member : core) add_edge(center, member);
  }

  world.parent = netvec::Graph::from_edges(order, edges, false);
  return world;
}

}  // namespace testsupport
