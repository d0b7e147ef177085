#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cfx {

using FeatureId = std::uint32_t;

/// Sparse observation: strictly increasing feature indices paired with
/// nonzero values. Zeros are implicit; `dimension` is the width of the
/// full feature space.
struct SparseInstance {
  std::uint32_t dimension = 0;
  std::vector<FeatureId> indices;
  std::vector<double> values;

  std::size_t active_count() const { return indices.size(); }
  bool is_active(FeatureId j) const;
  double value_at(FeatureId j) const;  // 0.0 for inactive features

  /// Throws std::invalid_argument when an invariant is broken
  /// (unsorted or duplicate indices, index >= dimension, stored zero).
  void validate() const;
};

/// Indicator set of active features over the same feature space.
struct BinaryMask {
  std::uint32_t dimension = 0;
  std::vector<FeatureId> bits;  // sorted, unique

  std::size_t count() const { return bits.size(); }
  bool contains(FeatureId j) const;
};

/// Features selected for removal; sorted, unique, subset of the source
/// instance's active indices.
using PerturbationSet = std::vector<FeatureId>;

BinaryMask binarize(const SparseInstance& x);

/// Copy of x with every feature in `removed` set to zero.
/// Throws std::invalid_argument if `removed` contains an inactive index.
SparseInstance perturb(const SparseInstance& x, const PerturbationSet& removed);

/// |a∩b| / (sqrt(|a|)·sqrt(|b|)) on the active-index sets. Returns 0 when
/// exactly one mask is empty (the continuous limit of shrinking overlap);
/// throws std::domain_error when both are empty.
double cosine_similarity(const BinaryMask& a, const BinaryMask& b);

}  // namespace cfx
