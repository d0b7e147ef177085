#pragma once

#include <chrono>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfx/model.hpp"
#include "cfx/sparse.hpp"

namespace cfx {

struct SearchConfig {
  int max_iterations = 50;
  int max_explanation_size = 30;  // capped per instance at its active count
  std::chrono::milliseconds max_time{120000};
  bool stop_at_first = true;
};

enum class SearchStatus { found, budget_exhausted, not_found };

const char* to_string(SearchStatus s);

struct Explanation {
  PerturbationSet features;
  int switching_point = 0;  // |features| when found
  double score_change = 0.0;  // original score minus perturbed score
  std::chrono::microseconds elapsed{0};
  SearchStatus status = SearchStatus::not_found;
  std::string note;  // budget kind, guard reason, ...
};

struct frontier_exhausted : std::runtime_error {
  frontier_exhausted() : std::runtime_error("frontier exhausted") {}
};

struct FrontierEntry {
  PerturbationSet subset;
  double delta = 0.0;  // original score minus perturbed score
  bool expanded = false;
};

/// Candidate pool for the best-first search. Every subset ever added is
/// remembered, so nothing is scored or expanded twice.
class Frontier {
 public:
  explicit Frontier(std::vector<FeatureId> active_features);

  /// False (and no insert) when the subset was already seen.
  bool add(PerturbationSet subset, double delta);

  /// True when some unexpanded entry with |subset| < maxf exists.
  bool has_expandable(int maxf) const;

  /// Marks the best unexpanded entry (max delta, then smaller subset, then
  /// lexicographically least index sequence) as expanded and returns it plus
  /// its one-feature extensions that are not yet in the pool. Extensions are
  /// unscored; the caller scores them and calls add().
  /// Throws frontier_exhausted when nothing qualifies.
  struct Expansion {
    PerturbationSet chosen;
    double chosen_delta = 0.0;
    std::vector<PerturbationSet> extensions;
  };
  Expansion expand_best(int maxf);

  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<FeatureId> active_;
  std::vector<FrontierEntry> entries_;
  std::set<PerturbationSet> seen_;
};

/// Best-first counterfactual search. The first pass scores every singleton;
/// each later iteration expands the best unexpanded subset by one feature.
/// The search stops at the first iteration that produces class flips and
/// returns the flip with maximal score change (with stop_at_first off it
/// keeps going and returns the smallest flip found within budget).
/// Throws std::invalid_argument unless predict(c,x)=1 with >= 1 active.
Explanation explain_sedc(const Classifier& c, const SparseInstance& x,
                         const SearchConfig& cfg = {});

}  // namespace cfx
