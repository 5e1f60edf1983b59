#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rng.hpp"

namespace netvec {

// Walker/Vose alias table: O(n) construction, O(1) draws that reproduce the
// input distribution exactly up to float rounding.
class AliasTable {
 public:
  AliasTable() = default;

  // dist entries must be non-negative and sum to 1 within 1e-9.
  static AliasTable build(std::span<const double> dist, std::span<const uint32_t> outcomes);
  static AliasTable build(std::span<const double> dist);  // outcomes 0..n-1

  uint32_t sample(Rng& rng) const {
    size_t i = static_cast<size_t>(rng.next_below(prob_.size()));
    return rng.next_double() < prob_[i] ? outcomes_[i] : outcomes_[alias_[i]];
  }

  size_t size() const { return prob_.size(); }
  std::span<const double> prob() const { return prob_; }
  std::span<const uint32_t> alias() const { return alias_; }
  std::span<const uint32_t> outcomes() const { return outcomes_; }

 private:
  std::vector<double> prob_;
  std::vector<uint32_t> alias_;
  std::vector<uint32_t> outcomes_;
};

}  // namespace netvec
