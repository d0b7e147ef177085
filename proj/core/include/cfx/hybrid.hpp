#pragma once

#include "cfx/attribution.hpp"
#include "cfx/model.hpp"
#include "cfx/sedc.hpp"
#include "cfx/sparse.hpp"

namespace cfx {

/// Removes ranked features cumulatively (top-1, top-2, ...) until the class
/// flips. Stops without a result when the next coefficient is <= 0, the
/// prefix would exceed the size limit, or the time budget runs out.
Explanation lin_sedc(const Classifier& c, const SparseInstance& x,
                     const ImportanceRanking& r, const SearchConfig& cfg = {});

Explanation explain_lime_c(const Classifier& c, const SparseInstance& x,
                           const AttributionConfig& acfg,
                           const SearchConfig& scfg = {});

/// shap_rank + lin_sedc. A ranking with the all_zero flag yields not_found
/// with a zero-coefficients note.
Explanation explain_shap_c(const Classifier& c, const SparseInstance& x,
                           const AttributionConfig& acfg,
                           const SearchConfig& scfg = {});

}  // namespace cfx
