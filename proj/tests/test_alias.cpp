#include <cmath>
#include <map>

#include "alias.hpp"
#include "doctest.h"
#include "error.hpp"
#include "rng.hpp"

using namespace netvec;

TEST_SUITE_BEGIN("alias");

namespace {

// total-variation distance between the empirical distribution of n draws and
// the exact one
double empirical_tv(const AliasTable& t, std::span<const double> dist,
                    std::span<const uint32_t> outcomes, uint64_t draws, uint64_t seed) {
  std::map<uint32_t, double> exact;
  for (size_t i = 0; i < dist.size(); ++i) exact[outcomes[i]] += dist[i];
  std::map<uint32_t, uint64_t> counts;
  Rng rng(seed);
  for (uint64_t i = 0; i < draws; ++i) ++counts[t.sample(rng)];
  double tv = 0;
  for (const auto& [o, p] : exact) {
    double emp = counts.count(o) ? static_cast<double>(counts[o]) / draws : 0.0;
    tv += std::fabs(emp - p);
  }
  for (const auto& [o, c] : counts)
    if (!exact.count(o)) tv += static_cast<double>(c) / draws;
  return 0.5 * tv;
}

}  // namespace

TEST_CASE("uniform distribution needs no aliasing") {
  std::vector<double> dist{0.25, 0.25, 0.25, 0.25};
  auto t = AliasTable::build(dist);
  for (double p : t.prob()) CHECK(p == doctest::Approx(1.0));
}

TEST_CASE("singleton distribution always returns its outcome") {
  std::vector<double> dist{1.0};
  std::vector<uint32_t> outcomes{42};
  auto t = AliasTable::build(dist, outcomes);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) CHECK(t.sample(rng) == 42);
}

TEST_CASE("empirical frequency of {0.2, 0.8} is 0.2 within 0.003") {
  std::vector<double> dist{0.2, 0.8};
  auto t = AliasTable::build(dist);
  Rng rng(123);
  uint64_t zero = 0, draws = 1000000;
  for (uint64_t i = 0; i < draws; ++i)
    if (t.sample(rng) == 0) ++zero;
  double freq = static_cast<double>(zero) / draws;
  CHECK(freq == doctest::Approx(0.2).epsilon(0.015));  // 0.2 +/- 0.003
  CHECK(std::fabs(freq - 0.2) < 0.003);
}

TEST_CASE("construction rejects invalid distributions") {
  std::vector<double> zeros{0.0, 0.0};
  CHECK_THROWS_AS(AliasTable::build(zeros), Error);
  std::vector<double> neg{1.2, -0.2};
  CHECK_THROWS_AS(AliasTable::build(neg), Error);
  std::vector<double> unnormalized{0.3, 0.3};
  CHECK_THROWS_AS(AliasTable::build(unnormalized), Error);
  std::vector<double> empty;
  CHECK_THROWS_AS(AliasTable::build(empty), Error);
}

TEST_CASE("table shape: equal lengths and valid alias indices") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    size_t n = 1 + rng.next_below(32);
    std::vector<double> dist(n);
    double sum = 0;
    for (auto& p : dist) {
      p = rng.next_double() + 1e-3;
      sum += p;
    }
    for (auto& p : dist) p /= sum;
    auto t = AliasTable::build(dist);
    REQUIRE(t.prob().size() == n);
    REQUIRE(t.alias().size() == n);
    REQUIRE(t.outcomes().size() == n);
    for (uint32_t a : t.alias()) CHECK(a < n);
    for (double p : t.prob()) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("alias fidelity: empirical TV under 0.005 for random distributions") {
  Rng rng(2024);
  for (int rep = 0; rep < 4; ++rep) {
    size_t n = 2 + rng.next_below(31);
    std::vector<double> dist(n);
    double sum = 0;
    for (auto& p : dist) {
      p = rng.next_double();
      sum += p;
    }
    for (auto& p : dist) p /= sum;
    std::vector<uint32_t> outcomes(n);
    for (size_t i = 0; i < n; ++i) outcomes[i] = static_cast<uint32_t>(10 * i + 3);
    auto t = AliasTable::build(dist, outcomes);
    CHECK(empirical_tv(t, dist, outcomes, 1000000, 555 + rep) < 0.005);
  }
}

TEST_CASE("induced distribution equals the input exactly") {
  // p(outcome i) = (prob_i + sum of (1 - prob_j) over buckets aliased to i) / n
  Rng rng(31337);
  for (int rep = 0; rep < 10; ++rep) {
    size_t n = 1 + rng.next_below(16);
    std::vector<double> dist(n);
    double sum = 0;
    for (auto& p : dist) {
      p = rng.next_double() + 1e-6;
      sum += p;
    }
    for (auto& p : dist) p /= sum;
    auto t = AliasTable::build(dist);
    std::vector<double> induced(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      induced[i] += t.prob()[i];
      induced[t.alias()[i]] += 1.0 - t.prob()[i];
    }
    for (size_t i = 0; i < n; ++i)
      CHECK(induced[i] / static_cast<double>(n) == doctest::Approx(dist[i]).epsilon(1e-9));
  }
}

TEST_SUITE_END();
