#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cfx/sparse.hpp"

using namespace cfx;

namespace {

SparseInstance make(std::uint32_t dim,
                    std::vector<std::pair<FeatureId, double>> entries) {
  SparseInstance x;
  x.dimension = dim;
  for (auto& [i, v] : entries) {
    x.indices.push_back(i);
    x.values.push_back(v);
  }
  return x;
}

SparseInstance random_instance(std::mt19937& rng, std::uint32_t dim,
                               std::size_t max_active) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_active);
  std::size_t n = n_dist(rng);
  std::vector<FeatureId> pool(dim);
  for (std::uint32_t i = 0; i < dim; ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  SparseInstance x;
  x.dimension = dim;
  for (FeatureId i : pool) {
    double v = 0.0;
    while (v == 0.0) v = val(rng);
    x.indices.push_back(i);
    x.values.push_back(v);
  }
  return x;
}

PerturbationSet random_subset(std::mt19937& rng,
                              const std::vector<FeatureId>& from,
                              std::size_t k) {
  std::vector<FeatureId> pool = from;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

TEST_CASE("binarize keeps exactly the active indices") {
  auto x = make(8, {{2, 0.7}, {5, 1.0}});
  auto mask = binarize(x);
  CHECK(mask.dimension == 8);
  CHECK(mask.bits == std::vector<FeatureId>{2, 5});

  auto empty = make(8, {});
  CHECK(binarize(empty).bits.empty());

  auto negative = make(4, {{0, -3.1}});
  CHECK(binarize(negative).bits == std::vector<FeatureId>{0});
}

TEST_CASE("perturb zeroes the chosen features and nothing else") {
  auto x = make(8, {{2, 0.7}, {5, 1.0}});
  auto z = perturb(x, {5});
  CHECK(z.indices == std::vector<FeatureId>{2});
  CHECK(z.values == std::vector<double>{0.7});
  CHECK(z.dimension == 8);

  auto same = perturb(x, {});
  CHECK(same.indices == x.indices);
  CHECK(same.values == x.values);

  auto y = make(8, {{1, 1.0}, {3, 2.0}, {4, 1.0}});
  auto z2 = perturb(y, {1, 4});
  CHECK(z2.indices == std::vector<FeatureId>{3});
  CHECK(z2.values == std::vector<double>{2.0});
}

TEST_CASE("perturb rejects inactive indices") {
  auto x = make(8, {{2, 0.7}});
  CHECK_THROWS_AS(perturb(x, {3}), std::invalid_argument);
}

TEST_CASE("cosine similarity of binary masks") {
  BinaryMask a{10, {1, 2, 3}};
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));

  BinaryMask b{10, {1, 2}}, c{10, {3, 4}};
  CHECK(cosine_similarity(b, c) == 0.0);

  BinaryMask d{10, {1}};
  CHECK(cosine_similarity(b, d) == doctest::Approx(0.7071067811865475));

  BinaryMask empty{10, {}};
  CHECK(cosine_similarity(b, empty) == 0.0);
  CHECK_THROWS_AS(cosine_similarity(empty, empty), std::domain_error);

  BinaryMask other_dim{9, {1}};
  CHECK_THROWS_AS(cosine_similarity(b, other_dim), std::invalid_argument);
}

TEST_CASE("validate flags broken instances") {
  CHECK_NOTHROW(make(8, {{2, 0.7}, {5, 1.0}}).validate());
  CHECK_THROWS_AS(make(8, {{5, 1.0}, {2, 0.7}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(make(8, {{2, 0.7}, {2, 1.0}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(make(8, {{9, 1.0}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make(8, {{2, 0.0}}).validate(), std::invalid_argument);
}

TEST_CASE("perturbation properties on random instances") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_instance(rng, 40, 12);
    std::uniform_int_distribution<std::size_t> k_dist(0, x.active_count());
    auto removed = random_subset(rng, x.indices, k_dist(rng));
    auto z = perturb(x, removed);

    CHECK(z.dimension == x.dimension);
    CHECK(z.active_count() == x.active_count() - removed.size());
    CHECK_NOTHROW(z.validate());
    for (FeatureId j : z.indices) {
      CHECK(x.is_active(j));
      CHECK(!std::binary_search(removed.begin(), removed.end(), j));
      CHECK(z.value_at(j) == x.value_at(j));
    }

    // binarize(perturb(x, I)) == binarize(x) \ I
    auto direct = binarize(z).bits;
    std::vector<FeatureId> expected;
    std::set_difference(x.indices.begin(), x.indices.end(), removed.begin(),
                        removed.end(), std::back_inserter(expected));
    CHECK(direct == expected);
  }
}

TEST_CASE("similarity to the original strictly decreases with removals") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_instance(rng, 30, 10);
    auto full = binarize(x);
    auto order = x.indices;
    std::shuffle(order.begin(), order.end(), rng);

    double last = 1.0;
    PerturbationSet removed;
    for (std::size_t k = 0; k < order.size(); ++k) {
      removed.insert(
          std::upper_bound(removed.begin(), removed.end(), order[k]), order[k]);
      double sim = cosine_similarity(full, binarize(perturb(x, removed)));
      CHECK(sim < last);
      last = sim;
    }
    CHECK(last == 0.0);  // everything removed
  }
}
