#include "cfx/sedc.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

namespace cfx {

namespace {

using clock = std::chrono::steady_clock;

// bigger score change wins, then the smaller subset, then the
// lexicographically least index sequence
bool better_entry(const PerturbationSet& sa, double da,
                  const PerturbationSet& sb, double db) {
  if (da != db) return da > db;
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  return sa < sb;
}

void validate_budgets(const SearchConfig& cfg) {
  if (cfg.max_iterations < 1 || cfg.max_explanation_size < 1 ||
      cfg.max_time.count() <= 0)
    throw std::invalid_argument("search config: budgets must be positive");
}

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::budget_exhausted:
      return "budget_exhausted";
    default:
      return "not_found";
  }
}

Frontier::Frontier(std::vector<FeatureId> active_features)
    : active_(std::move(active_features)) {}

bool Frontier::add(PerturbationSet subset, double delta) {
  if (!seen_.insert(subset).second) return false;
  entries_.push_back(FrontierEntry{std::move(subset), delta, false});
  return true;
}

bool Frontier::has_expandable(int maxf) const {
  for (const auto& e : entries_)
    if (!e.expanded && e.subset.size() < static_cast<std::size_t>(maxf))
      return true;
  return false;
}

Frontier::Expansion Frontier::expand_best(int maxf) {
  FrontierEntry* best = nullptr;
  for (auto& e : entries_) {
    if (e.expanded || e.subset.size() >= static_cast<std::size_t>(maxf))
      continue;
    if (!best || better_entry(e.subset, e.delta, best->subset, best->delta))
      best = &e;
  }
  if (!best) throw frontier_exhausted{};
  best->expanded = true;

  Expansion out;
  out.chosen = best->subset;
  out.chosen_delta = best->delta;
  for (FeatureId j : active_) {
    if (std::binary_search(out.chosen.begin(), out.chosen.end(), j)) continue;
    PerturbationSet next = out.chosen;
    next.insert(std::upper_bound(next.begin(), next.end(), j), j);
    if (seen_.count(next)) continue;
    out.extensions.push_back(std::move(next));
  }
  return out;
}

Explanation explain_sedc(const Classifier& c, const SparseInstance& x,
                         const SearchConfig& cfg) {
  auto t0 = clock::now();
  validate_budgets(cfg);
  if (x.active_count() == 0)
    throw std::invalid_argument("explain_sedc: instance has no active features");
  if (c.predict(x) != 1)
    throw std::invalid_argument("explain_sedc: instance not positively predicted");

  const double p = c.score(x);
  const int maxf = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(cfg.max_explanation_size), x.active_count()));
  const auto deadline = t0 + cfg.max_time;

  Frontier frontier(x.indices);
  struct Flip {
    PerturbationSet subset;
    double delta;
  };
  std::vector<Flip> flips;
  bool timed_out = false;

  // scores a candidate, records it, and collects class flips
  auto evaluate = [&](PerturbationSet subset) {
    double pn = c.score(perturb(x, subset));
    double delta = p - pn;
    bool flipped = pn < c.threshold;
    if (flipped) flips.push_back(Flip{subset, delta});
    frontier.add(std::move(subset), delta);
    return flipped;
  };

  int iteration = 1;
  for (FeatureId j : x.indices) {
    if (clock::now() > deadline) {
      timed_out = true;
      break;
    }
    evaluate(PerturbationSet{j});
  }

  std::string stop_note;
  bool frontier_done = false;
  if (!timed_out && !(cfg.stop_at_first && !flips.empty())) {
    while (++iteration <= cfg.max_iterations) {
      if (!frontier.has_expandable(maxf)) {
        frontier_done = true;
        break;
      }
      auto expansion = frontier.expand_best(maxf);
      for (auto& subset : expansion.extensions) {
        if (clock::now() > deadline) {
          timed_out = true;
          break;
        }
        evaluate(std::move(subset));
      }
      if (timed_out || (cfg.stop_at_first && !flips.empty())) break;
    }
    if (!frontier_done && !timed_out && iteration > cfg.max_iterations &&
        !(cfg.stop_at_first && !flips.empty()))
      stop_note = "max_iterations";
  }
  if (timed_out) stop_note = "max_time";
  if (frontier_done) stop_note = "frontier_exhausted";

  Explanation out;
  out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      clock::now() - t0);
  if (flips.empty()) {
    out.status = frontier_done ? SearchStatus::not_found
                               : SearchStatus::budget_exhausted;
    out.note = stop_note;
    return out;
  }

  // with stop_at_first every flip comes from the terminating iteration and
  // has the same size, so score change decides; otherwise size wins first
  const Flip* best = &flips.front();
  for (const auto& f : flips) {
    bool wins;
    if (cfg.stop_at_first) {
      wins = better_entry(f.subset, f.delta, best->subset, best->delta);
    } else if (f.subset.size() != best->subset.size()) {
      wins = f.subset.size() < best->subset.size();
    } else {
      wins = better_entry(f.subset, f.delta, best->subset, best->delta);
    }
    if (wins) best = &f;
  }
  out.status = SearchStatus::found;
  out.features = best->subset;
  out.switching_point = static_cast<int>(best->subset.size());
  out.score_change = best->delta;
  return out;
}

}  // namespace cfx
