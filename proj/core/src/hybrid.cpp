#include "cfx/hybrid.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace cfx {

namespace {
using clock = std::chrono::steady_clock;
}

Explanation lin_sedc(const Classifier& c, const SparseInstance& x,
                     const ImportanceRanking& r, const SearchConfig& cfg) {
  auto t0 = clock::now();
  if (cfg.max_explanation_size < 1 || cfg.max_time.count() <= 0)
    throw std::invalid_argument("search config: budgets must be positive");
  if (x.active_count() == 0)
    throw std::invalid_argument("lin_sedc: instance has no active features");
  if (c.predict(x) != 1)
    throw std::invalid_argument("lin_sedc: instance not positively predicted");
  if (r.entries.empty()) throw std::invalid_argument("lin_sedc: empty ranking");
  for (const auto& e : r.entries)
    if (!x.is_active(e.first))
      throw std::invalid_argument("lin_sedc: ranked feature " +
                                  std::to_string(e.first) + " is not active");

  const double p = c.score(x);
  const int maxf = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(cfg.max_explanation_size), x.active_count()));
  const auto deadline = t0 + cfg.max_time;

  auto finish = [&](Explanation e) {
    e.elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
    return e;
  };

  Explanation out;
  PerturbationSet prefix;
  for (std::size_t k = 1; k <= r.entries.size(); ++k) {
    if (static_cast<int>(k) > maxf) {
      out.note = "size limit";
      return finish(out);
    }
    if (clock::now() > deadline) {
      out.status = SearchStatus::budget_exhausted;
      out.note = "max_time";
      return finish(out);
    }
    const auto& [feature, phi] = r.entries[k - 1];
    if (phi <= 0.0) {
      out.note = "nonpositive coefficient at rank " + std::to_string(k);
      return finish(out);
    }
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), feature),
                  feature);
    double s = c.score(perturb(x, prefix));
    if (s < c.threshold) {
      out.status = SearchStatus::found;
      out.features = prefix;
      out.switching_point = static_cast<int>(k);
      out.score_change = p - s;
      return finish(out);
    }
  }
  out.note = "ranking exhausted";
  return finish(out);
}

Explanation explain_lime_c(const Classifier& c, const SparseInstance& x,
                           const AttributionConfig& acfg,
                           const SearchConfig& scfg) {
  auto t0 = clock::now();
  ImportanceRanking r = lime_rank(c, x, acfg);
  Explanation e = lin_sedc(c, x, r, scfg);
  e.elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
  return e;
}

Explanation explain_shap_c(const Classifier& c, const SparseInstance& x,
                           const AttributionConfig& acfg,
                           const SearchConfig& scfg) {
  auto t0 = clock::now();
  ImportanceRanking r = shap_rank(c, x, acfg);
  Explanation e;
  if (r.all_zero) {
    e.status = SearchStatus::not_found;
    e.note = "zero coefficients";
  } else {
    e = lin_sedc(c, x, r, scfg);
  }
  e.elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0);
  return e;
}

}  // namespace cfx
