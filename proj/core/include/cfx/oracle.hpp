#pragma once

#include <cstdint>
#include <vector>

#include "cfx/model.hpp"
#include "cfx/sedc.hpp"
#include "cfx/sparse.hpp"

namespace cfx {

struct CompleteSearchStats {
  std::vector<std::uint64_t> evaluated_per_size;  // [k-1] = subsets scored at size k
  std::uint64_t total_evaluated = 0;
};

/// Exhaustive minimum-size search: enumerates all size-k removal subsets in
/// lexicographic order for k = 1, 2, ... via a streaming generator (O(k)
/// state). Returns the smallest flipping subset; within the terminal size
/// the one with maximal score change. Before each size k the remaining
/// budget is checked against C(m,k); an oversized sweep is refused with
/// budget_exhausted instead of attempted.
Explanation explain_complete(const Classifier& c, const SparseInstance& x,
                             int max_size = 30,
                             std::uint64_t max_combinations = 1000000,
                             CompleteSearchStats* stats = nullptr);

/// Kept-set random baseline: draws untried active features uniformly; a draw
/// that flips the class (together with the kept set) ends the search, a draw
/// that lowers the score joins the kept set, anything else is discarded for
/// good. No size cap. max_draws = 0 means unlimited; exhausting every active
/// feature yields not_found with an exhausted-features note.
Explanation explain_random(const Classifier& c, const SparseInstance& x,
                           unsigned seed, std::uint64_t max_draws = 0);

}  // namespace cfx
