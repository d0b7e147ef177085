#include "cfx/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <string>

namespace cfx {

namespace {

using clock = std::chrono::steady_clock;

// min(C(n,k), cap+1); the +1 sentinel marks "exceeds cap" without overflow
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);  // partial value equals C(n, i+1), so exact
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

void require_positive(const Classifier& c, const SparseInstance& x,
                      const char* who) {
  if (x.active_count() == 0)
    throw std::invalid_argument(std::string(who) +
                                ": instance has no active features");
  if (c.predict(x) != 1)
    throw std::invalid_argument(std::string(who) +
                                ": instance not positively predicted");
}

}  // namespace

Explanation explain_complete(const Classifier& c, const SparseInstance& x,
                             int max_size, std::uint64_t max_combinations,
                             CompleteSearchStats* stats) {
  auto t0 = clock::now();
  if (max_size < 1)
    throw std::invalid_argument("explain_complete: max_size must be >= 1");
  if (max_combinations < 1)
    throw std::invalid_argument("explain_complete: max_combinations must be >= 1");
  require_positive(c, x, "explain_complete");

  const double p = c.score(x);
  const std::size_t m = x.active_count();
  const int kmax = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(max_size), m));
  if (stats) *stats = CompleteSearchStats{};

  Explanation out;
  std::uint64_t used = 0;
  for (int k = 1; k <= kmax; ++k) {
    std::uint64_t need = binomial_capped(m, static_cast<std::uint64_t>(k),
                                         max_combinations);
    if (need > max_combinations - used) {
      out.status = SearchStatus::budget_exhausted;
      out.note = "combination budget reached before size " + std::to_string(k);
      out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
          clock::now() - t0);
      return out;
    }

    // streaming lexicographic enumeration of all size-k index tuples
    std::vector<std::size_t> pos(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    PerturbationSet subset(static_cast<std::size_t>(k));
    std::uint64_t evaluated = 0;
    bool found = false;
    PerturbationSet best;
    double best_delta = 0.0;
    while (true) {
      for (std::size_t i = 0; i < pos.size(); ++i) subset[i] = x.indices[pos[i]];
      double pn = c.score(perturb(x, subset));
      ++evaluated;
      if (pn < c.threshold) {
        double delta = p - pn;
        if (!found || delta > best_delta) {
          found = true;
          best = subset;
          best_delta = delta;
        }
      }
      // advance the rightmost position that can still move
      std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pos.size()) - 1;
      while (i >= 0 &&
             pos[static_cast<std::size_t>(i)] ==
                 m - pos.size() + static_cast<std::size_t>(i))
        --i;
      if (i < 0) break;  // last combination done
      ++pos[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pos.size(); ++j)
        pos[j] = pos[j - 1] + 1;
    }
    used += evaluated;
    if (stats) {
      stats->evaluated_per_size.push_back(evaluated);
      stats->total_evaluated = used;
    }
    if (found) {
      out.status = SearchStatus::found;
      out.features = best;
      out.switching_point = k;
      out.score_change = best_delta;
      out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
          clock::now() - t0);
      return out;
    }
  }

  out.status = SearchStatus::not_found;
  out.note = "no flip within size limit";
  out.elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
  return out;
}

Explanation explain_random(const Classifier& c, const SparseInstance& x,
                           unsigned seed, std::uint64_t max_draws) {
  auto t0 = clock::now();
  require_positive(c, x, "explain_random");

  const double p = c.score(x);
  std::mt19937 rng(seed);
  std::vector<FeatureId> untried = x.indices;
  PerturbationSet kept;
  double kept_score = p;
  std::uint64_t draws = 0;

  Explanation out;
  while (!untried.empty()) {
    if (max_draws != 0 && draws == max_draws) {
      out.status = SearchStatus::budget_exhausted;
      out.note = "max_draws";
      out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
          clock::now() - t0);
      return out;
    }
    std::uniform_int_distribution<std::size_t> pick(0, untried.size() - 1);
    std::size_t i = pick(rng);
    FeatureId f = untried[i];
    untried[i] = untried.back();
    untried.pop_back();
    ++draws;

    PerturbationSet candidate = kept;
    candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), f), f);
    double s = c.score(perturb(x, candidate));
    if (s < c.threshold) {
      out.status = SearchStatus::found;
      out.features = candidate;
      out.switching_point = static_cast<int>(candidate.size());
      out.score_change = p - s;
      out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
          clock::now() - t0);
      return out;
    }
    if (s < kept_score) {
      kept = std::move(candidate);
      kept_score = s;
    }
  }

  out.status = SearchStatus::not_found;
  out.note = "exhausted_features";
  out.elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
  return out;
}

}  // namespace cfx
