#include "alias.hpp"

#include <cmath>
#include <numeric>

#include "error.hpp"

namespace netvec {

AliasTable AliasTable::build(std::span<const double> dist, std::span<const uint32_t> outcomes) {
  size_t n = dist.size();
  if (n == 0) throw_validation("alias table over an empty distribution");
  if (outcomes.size() != n) throw_validation("alias outcomes length mismatch");

  double sum = 0;
  for (double p : dist) {
    if (!(p >= 0)) throw_validation("alias table entry is negative or NaN");
    sum += p;
  }
  if (sum == 0) throw_validation("alias table over an all-zero distribution");
  if (std::fabs(sum - 1.0) > 1e-9) throw_validation("alias table distribution does not sum to 1");

  AliasTable t;
  t.prob_.assign(n, 0.0);
  t.alias_.assign(n, 0);
  t.outcomes_.assign(outcomes.begin(), outcomes.end());

  std::vector<double> scaled(n);
  for (size_t i = 0; i < n; ++i) scaled[i] = dist[i] * static_cast<double>(n);

  std::vector<uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (uint32_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);

  while (!small.empty() && !large.empty()) {
    uint32_t s = small.back(), l = large.back();
    small.pop_back();
    large.pop_back();
    t.prob_[s] = scaled[s];
    t.alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Residue buckets keep full mass; alias points at themselves.
  for (uint32_t i : large) {
    t.prob_[i] = 1.0;
    t.alias_[i] = i;
  }
  for (uint32_t i : small) {
    t.prob_[i] = 1.0;
    t.alias_[i] = i;
  }
  return t;
}

AliasTable AliasTable::build(std::span<const double> dist) {
  std::vector<uint32_t> outcomes(dist.size());
  std::iota(outcomes.begin(), outcomes.end(), 0u);
  return build(dist, outcomes);
}

}  // namespace netvec
