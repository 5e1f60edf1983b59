#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace netvec {

// Immutable weighted graph in CSR form. External string labels are mapped to
// dense internal ids in first-seen order; neighbor lists are sorted by
// internal id with duplicate edges merged by weight summation.
class Graph {
 public:
  struct Neighborhood {
    std::span<const uint32_t> ids;
    std::span<const double> weights;
    size_t size() const { return ids.size(); }
  };

  static Graph from_edges(const std::vector<std::string>& node_order,
                          const std::vector<std::tuple<std::string, std::string, double>>& edges,
                          bool directed);

  bool directed() const { return directed_; }
  size_t node_count() const { return labels_.size(); }
  // Undirected edges are counted once (self-loops included).
  size_t edge_count() const { return edge_count_; }

  Neighborhood neighbors(uint32_t v) const;
  size_t out_degree(uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(uint32_t from, uint32_t to) const;
  double edge_weight(uint32_t from, uint32_t to) const;  // 0 when absent
  // CSR position of the directed pair (from -> to), npos when absent.
  static constexpr size_t npos = static_cast<size_t>(-1);
  size_t edge_position(uint32_t from, uint32_t to) const;

  const std::string& label(uint32_t v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Throws Lookup when the label is unknown.
  uint32_t id_of(const std::string& label) const;
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  size_t directed_pair_count() const { return nbr_.size(); }

  Graph() = default;

 private:
  friend class EdgeAccumulator;

  bool directed_ = false;
  size_t edge_count_ = 0;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> nbr_;
  std::vector<double> wgt_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, uint32_t> index_;
};

// Induced subgraph over a center node and its out-neighbors, with local dense
// ids and a map back to the parent graph.
struct EgoNetwork {
  uint32_t center_local = 0;
  Graph subgraph;
  std::vector<uint32_t> parent_ids;  // local id -> parent id
};

struct StructuralFeatures {
  double node_count = 0;
  double edge_count = 0;
  double average_degree = 0;
  double max_in_degree = 0;
  double max_out_degree = 0;
  double global_clustering = 0;
  double mean_clustering = 0;
  std::array<double, 10> eigenvalues{};  // largest of the symmetrized adjacency, non-increasing

  std::array<double, 17> as_array() const;
};

// Edge-list file: one edge per line "src dst [weight]", tab- or space-
// separated; '#' starts a comment; a single-token line declares an isolated
// node. Missing weight means 1.0.
Graph load_edge_list(const std::string& path, bool directed);
Graph parse_edge_list(const std::string& text, bool directed, const std::string& origin);
void save_edge_list(const Graph& g, const std::string& path);
std::string serialize_edge_list(const Graph& g);

EgoNetwork ego_network(const Graph& g, uint32_t center);
EgoNetwork ego_network(const Graph& g, const std::string& center_label);

StructuralFeatures structural_features(const Graph& g);

// Top eigenvalues of a dense symmetric matrix by shifted power iteration with
// deflation, non-increasing, zero-padded to `count`.
std::vector<double> top_symmetric_eigenvalues(std::vector<double> matrix, size_t n, size_t count,
                                              double tolerance = 1e-8);

}  // namespace netvec
