#include "cfx/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfx {

bool SparseInstance::is_active(FeatureId j) const {
  return std::binary_search(indices.begin(), indices.end(), j);
}

double SparseInstance::value_at(FeatureId j) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), j);
  if (it == indices.end() || *it != j) return 0.0;
  return values[static_cast<std::size_t>(it - indices.begin())];
}

void SparseInstance::validate() const {
  if (indices.size() != values.size())
    throw std::invalid_argument("sparse instance: index/value length mismatch");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument(
          "sparse instance: indices not strictly increasing at position " +
          std::to_string(i));
    if (indices[i] >= dimension)
      throw std::invalid_argument("sparse instance: index " +
                                  std::to_string(indices[i]) +
                                  " outside dimension " +
                                  std::to_string(dimension));
    if (values[i] == 0.0)
      throw std::invalid_argument("sparse instance: stored zero at index " +
                                  std::to_string(indices[i]));
  }
}

bool BinaryMask::contains(FeatureId j) const {
  return std::binary_search(bits.begin(), bits.end(), j);
}

BinaryMask binarize(const SparseInstance& x) {
  return BinaryMask{x.dimension, x.indices};
}

SparseInstance perturb(const SparseInstance& x, const PerturbationSet& removed) {
  for (FeatureId j : removed)
    if (!x.is_active(j))
      throw std::invalid_argument("perturb: index " + std::to_string(j) +
                                  " is not active");
  SparseInstance z;
  z.dimension = x.dimension;
  std::size_t keep =
      x.indices.size() > removed.size() ? x.indices.size() - removed.size() : 0;
  z.indices.reserve(keep);
  z.values.reserve(keep);
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    if (std::binary_search(removed.begin(), removed.end(), x.indices[i]))
      continue;
    z.indices.push_back(x.indices[i]);
    z.values.push_back(x.values[i]);
  }
  return z;
}

double cosine_similarity(const BinaryMask& a, const BinaryMask& b) {
  if (a.dimension != b.dimension)
    throw std::invalid_argument("cosine_similarity: dimension mismatch");
  if (a.bits.empty() && b.bits.empty())
    throw std::domain_error("cosine_similarity: both masks empty");
  if (a.bits.empty() || b.bits.empty()) return 0.0;
  std::size_t overlap = 0;
  auto ia = a.bits.begin();
  auto ib = b.bits.begin();
  while (ia != a.bits.end() && ib != b.bits.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++overlap;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(overlap) /
         (std::sqrt(static_cast<double>(a.bits.size())) *
          std::sqrt(static_cast<double>(b.bits.size())));
}

}  // namespace cfx
