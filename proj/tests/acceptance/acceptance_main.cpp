// Acceptance gate: ten end-to-end checks of the published behavior. Each
// prints one PASS or FAIL line; the exit code is nonzero when anything fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cfx/harness.hpp"
#include "cfx/hybrid.hpp"
#include "cfx/oracle.hpp"
#include "cfx/stats.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
  char buf[768];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome pass(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i)
    r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return r;
}

struct LinearCase {
  cfx::Classifier classifier;
  cfx::SparseInstance instance;
};

// Independent positive-weight models over a shared 60-wide space. Removing
// everything always drops the score below the threshold, so a counterfactual
// exists for every case.
std::vector<LinearCase> sampled_linear_cases(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> active_dist(5, 15);
  std::uniform_real_distribution<double> weight_dist(0.4, 2.0);
  std::uniform_real_distribution<double> value_dist(0.5, 1.5);
  std::uniform_real_distribution<double> frac_dist(0.2, 0.8);
  const std::uint32_t dim = 60;
  std::vector<cfx::FeatureId> pool(dim);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<LinearCase> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int m = active_dist(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<cfx::FeatureId> ids(pool.begin(), pool.begin() + m);
    std::sort(ids.begin(), ids.end());
    cfx::LinearModel model;
    model.dimension = dim;
    cfx::SparseInstance x;
    x.dimension = dim;
    x.indices = ids;
    for (auto id : ids) {
      model.weights.emplace_back(id, weight_dist(rng));
      x.values.push_back(value_dist(rng));
    }
    double total = model.score(x);
    out.push_back({cfx::Classifier{model, total * frac_dist(rng)}, std::move(x)});
  }
  return out;
}

// Per-feature score contributions w_j * x_j, largest first.
cfx::ImportanceRanking contribution_ranking(const cfx::Classifier& c,
                                            const cfx::SparseInstance& x) {
  const auto& model = std::get<cfx::LinearModel>(c.model);
  cfx::ImportanceRanking r;
  for (std::size_t i = 0; i < x.indices.size(); ++i)
    r.entries.emplace_back(x.indices[i],
                           model.weight(x.indices[i]) * x.values[i]);
  std::sort(r.entries.begin(), r.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return r;
}

Outcome golden_mid_p() {
  auto t0 = clock_type::now();
  cfx::MidPResult r = cfx::mcnemar_mid_p({0, 119, 92, 0});
  double ms = seconds_since(t0) * 1e3;
  if (std::fabs(r.p_exact - 0.037) > 0.001)
    return fail(fmt("p_exact %.6f outside 0.037 +/- 0.001", r.p_exact));
  if (std::fabs(r.p_mid - 0.032) > 0.001)
    return fail(fmt("p_mid %.6f outside 0.032 +/- 0.001", r.p_mid));
  if (ms >= 1.0) return fail(fmt("took %.3f ms, budget 1 ms", ms));
  return pass(fmt("p_exact %.6f, p_mid %.6f, %.3f ms", r.p_exact, r.p_mid, ms));
}

Outcome linear_optimality(const std::vector<LinearCase>& cases) {
  auto t0 = clock_type::now();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i].classifier;
    const auto& x = cases[i].instance;
    auto oracle =
        cfx::explain_complete(c, x, static_cast<int>(x.active_count()));
    if (oracle.status != cfx::SearchStatus::found)
      return fail(fmt("case %zu: exhaustive search found nothing", i));
    auto greedy = cfx::explain_sedc(c, x);
    if (greedy.status != cfx::SearchStatus::found ||
        greedy.switching_point != oracle.switching_point)
      return fail(fmt("case %zu: best-first gave %d, exhaustive minimum is %d",
                      i, greedy.switching_point, oracle.switching_point));
    auto walk = cfx::lin_sedc(c, x, contribution_ranking(c, x));
    if (walk.status != cfx::SearchStatus::found ||
        walk.switching_point != oracle.switching_point)
      return fail(
          fmt("case %zu: ranked prefix gave %d, exhaustive minimum is %d", i,
              walk.switching_point, oracle.switching_point));
  }
  double s = seconds_since(t0);
  if (s >= 60.0) return fail(fmt("took %.1f s, budget 60 s", s));
  return pass(fmt("%zu/%zu switching points equal the exhaustive minimum, %.1f s",
                  cases.size(), cases.size(), s));
}

Outcome hybrid_soundness(const std::vector<LinearCase>& cases) {
  cfx::AttributionConfig acfg;
  acfg.seed = 1;
  int exact_total = 0;
  int exact_matched = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i].classifier;
    const auto& x = cases[i].instance;
    int oracle_sp =
        cfx::explain_complete(c, x, static_cast<int>(x.active_count()))
            .switching_point;
    const cfx::Explanation lime = cfx::explain_lime_c(c, x, acfg);
    const cfx::Explanation shap = cfx::explain_shap_c(c, x, acfg);
    const struct {
      const char* name;
      const cfx::Explanation* e;
    } runs[] = {{"lime-c", &lime}, {"shap-c", &shap}};
    for (const auto& run : runs) {
      if (run.e->status != cfx::SearchStatus::found)
        return fail(fmt("case %zu: %s returned %s (%s)", i, run.name,
                        cfx::to_string(run.e->status), run.e->note.c_str()));
      if (c.predict(cfx::perturb(x, run.e->features)) != 0)
        return fail(fmt("case %zu: the %s explanation does not flip the class",
                        i, run.name));
      if (run.e->switching_point < oracle_sp)
        return fail(fmt("case %zu: %s gave %d, below the exhaustive minimum %d",
                        i, run.name, run.e->switching_point, oracle_sp));
    }
    if (x.active_count() <= 13) {
      ++exact_total;
      if (shap.switching_point == oracle_sp) ++exact_matched;
    }
  }
  if (exact_total == 0)
    return fail("no case exercised the exact enumeration path");
  double pct = 100.0 * exact_matched / exact_total;
  if (pct < 95.0)
    return fail(fmt(
        "exact-mode shap-c matched the minimum on %d/%d (%.1f%%), needs >= 95%%",
        exact_matched, exact_total, pct));
  return pass(fmt("%zu flips verified per pipeline; exact-mode shap-c matched "
                  "the minimum on %d/%d (%.1f%%)",
                  cases.size(), exact_matched, exact_total, pct));
}

Outcome shapley_contributions() {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> active_dist(3, 13);
  std::uniform_real_distribution<double> weight_dist(-1.0, 2.0);
  std::uniform_real_distribution<double> value_dist(0.5, 1.5);
  const std::uint32_t dim = 40;
  std::vector<cfx::FeatureId> pool(dim);
  std::iota(pool.begin(), pool.end(), 0u);
  cfx::AttributionConfig acfg;
  acfg.seed = 7;
  double worst = 0.0;
  int built = 0;
  for (int attempt = 0; built < 100 && attempt < 10000; ++attempt) {
    int m = active_dist(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<cfx::FeatureId> ids(pool.begin(), pool.begin() + m);
    std::sort(ids.begin(), ids.end());
    cfx::LinearModel model;
    model.dimension = dim;
    cfx::SparseInstance x;
    x.dimension = dim;
    x.indices = ids;
    for (auto id : ids) {
      model.weights.emplace_back(id, weight_dist(rng));
      x.values.push_back(value_dist(rng));
    }
    double total = model.score(x);
    if (total < 0.3) continue;  // keep the prediction positive
    ++built;
    cfx::Classifier c{model, 0.4 * total};
    auto r = cfx::shap_rank(c, x, acfg);
    if (r.entries.size() != x.active_count())
      return fail(fmt("instance %d: %zu of %zu features ranked", built,
                      r.entries.size(), x.active_count()));
    for (const auto& entry : r.entries) {
      double contribution =
          model.weight(entry.first) * x.value_at(entry.first);
      double diff = std::fabs(entry.second - contribution);
      worst = std::max(worst, diff);
      if (diff > 1e-6)
        return fail(fmt("instance %d feature %u: coefficient %.9f vs "
                        "contribution %.9f (diff %.2e)",
                        built, entry.first, entry.second, contribution, diff));
    }
  }
  if (built < 100) return fail(fmt("only %d usable instances generated", built));
  return pass(fmt("100 instances exact, max |coefficient - contribution| = %.2e",
                  worst));
}

// Labels depend on feature pairs being active together, so single removals
// barely move a well-fit model until the explanation is nearly complete.
Outcome nonlinear_direction() {
  const std::uint32_t dim = 50;
  const int pair_count = 5;
  std::mt19937 rng(5050);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  cfx::Dataset d;
  d.dimension = dim;
  for (int i = 0; i < 2000; ++i) {
    std::vector<bool> active(dim, false);
    int full_pairs = 0;
    for (int p = 0; p < pair_count; ++p) {
      double roll = u(rng);
      if (roll < 0.25) {
        active[2 * p] = active[2 * p + 1] = true;
        ++full_pairs;
      } else if (roll < 0.37) {
        active[2 * p + (u(rng) < 0.5 ? 0 : 1)] = true;
      }
    }
    for (std::uint32_t j = 2 * pair_count; j < dim; ++j)
      if (u(rng) < 0.15) active[j] = true;
    cfx::SparseInstance x;
    x.dimension = dim;
    for (std::uint32_t j = 0; j < dim; ++j)
      if (active[j]) {
        x.indices.push_back(j);
        x.values.push_back(1.0);
      }
    d.instances.push_back(std::move(x));
    d.labels.push_back(full_pairs >= 2 ? 1 : 0);
  }

  cfx::MlpModel mlp = cfx::train_mlp(d, 16, 1.0, 3000, 3);
  std::vector<double> scores;
  scores.reserve(d.size());
  for (const auto& x : d.instances) scores.push_back(mlp.score(x));
  cfx::Classifier c{mlp, cfx::threshold_by_imbalance(scores, d.imbalance())};
  int correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (c.predict(d.instances[i]) == d.labels[i]) ++correct;
  double accuracy = 100.0 * correct / static_cast<double>(d.size());
  if (accuracy < 80.0)
    return fail(fmt("model accuracy %.1f%%, needs >= 80%% for a meaningful "
                    "comparison",
                    accuracy));

  cfx::AttributionConfig acfg;
  acfg.n_samples = 2000;
  acfg.seed = 1;
  std::vector<cfx::Explanation> greedy;
  std::vector<cfx::Explanation> hybrid;
  for (std::size_t i = 0; i < d.size() && greedy.size() < 120; ++i) {
    const auto& x = d.instances[i];
    if (x.active_count() == 0 || c.predict(x) != 1) continue;
    greedy.push_back(cfx::explain_sedc(c, x));
    hybrid.push_back(cfx::explain_lime_c(c, x, acfg));
  }
  if (greedy.size() < 50)
    return fail(fmt("only %zu positively predicted instances", greedy.size()));
  double pct_greedy = cfx::percentage_explained(greedy);
  double pct_hybrid = cfx::percentage_explained(hybrid);
  if (pct_hybrid < pct_greedy)
    return fail(fmt("lime-c explained %.1f%% < sedc %.1f%% over %zu instances "
                    "(model accuracy %.1f%%)",
                    pct_hybrid, pct_greedy, greedy.size(), accuracy));
  return pass(fmt("lime-c explained %.1f%% >= sedc %.1f%% over %zu instances "
                  "(model accuracy %.1f%%)",
                  pct_hybrid, pct_greedy, greedy.size(), accuracy));
}

Outcome random_separation() {
  std::mt19937 rng(66);
  const std::uint32_t dim = 40;
  std::vector<cfx::FeatureId> pool(dim);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<int> greedy_sps;
  std::vector<int> random_sps;
  for (int i = 0; i < 100; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<cfx::FeatureId> ids(pool.begin(), pool.begin() + 25);
    std::sort(ids.begin(), ids.end());
    cfx::FeatureId dominant =
        ids[std::uniform_int_distribution<std::size_t>(0, 24)(rng)];
    cfx::LinearModel model;
    model.dimension = dim;
    cfx::SparseInstance x;
    x.dimension = dim;
    x.indices = ids;
    for (auto id : ids) {
      model.weights.emplace_back(id, id == dominant ? 10.0 : 0.1);
      x.values.push_back(1.0);
    }
    cfx::Classifier c{model, 3.0};
    auto greedy = cfx::explain_sedc(c, x);
    if (greedy.status != cfx::SearchStatus::found)
      return fail(fmt("instance %d: best-first returned %s", i,
                      cfx::to_string(greedy.status)));
    greedy_sps.push_back(greedy.switching_point);
    for (unsigned seed = 1; seed <= 20; ++seed) {
      auto r = cfx::explain_random(c, x, seed);
      if (r.status != cfx::SearchStatus::found)
        return fail(fmt("instance %d seed %u: random returned %s", i, seed,
                        cfx::to_string(r.status)));
      random_sps.push_back(r.switching_point);
    }
  }
  double med_greedy = cfx::summarize_switching_points(greedy_sps).median;
  double med_random = cfx::summarize_switching_points(random_sps).median;
  if (!(med_random > med_greedy))
    return fail(fmt("median random %.1f does not exceed best-first %.1f",
                    med_random, med_greedy));
  return pass(fmt("median random %.1f vs best-first %.1f over %zu draws",
                  med_random, med_greedy, random_sps.size()));
}

Outcome exhaustive_counters() {
  // Full sweep through size 6 at 34 active features.
  const int m = 34;
  cfx::LinearModel model;
  model.dimension = m;
  cfx::SparseInstance x;
  x.dimension = m;
  for (cfx::FeatureId j = 0; j < m; ++j) {
    model.weights.emplace_back(j, 1.0);
    x.indices.push_back(j);
    x.values.push_back(1.0);
  }
  cfx::Classifier c{model, m - 5.5};
  cfx::CompleteSearchStats stats;
  auto e = cfx::explain_complete(c, x, 30, 2000000, &stats);
  if (e.status != cfx::SearchStatus::found || e.switching_point != 6)
    return fail(fmt("expected a size-6 flip, got %s with sp %d",
                    cfx::to_string(e.status), e.switching_point));
  if (stats.evaluated_per_size.size() != 6)
    return fail(fmt("%zu size classes counted, expected 6",
                    stats.evaluated_per_size.size()));
  std::uint64_t total = 0;
  for (int k = 1; k <= 6; ++k) {
    std::uint64_t want = binom(m, k);
    total += want;
    if (stats.evaluated_per_size[k - 1] != want)
      return fail(fmt("size %d counter %llu, expected C(34,%d) = %llu", k,
                      static_cast<unsigned long long>(
                          stats.evaluated_per_size[k - 1]),
                      k, static_cast<unsigned long long>(want)));
  }
  if (stats.total_evaluated != total)
    return fail(fmt("total counter %llu, expected %llu",
                    static_cast<unsigned long long>(stats.total_evaluated),
                    static_cast<unsigned long long>(total)));

  // Budget refusal before an oversized sweep; the generator streams with O(k)
  // state, so nothing is materialized at any cap.
  const std::uint32_t big = 151;
  cfx::LinearModel flat;
  flat.dimension = big;
  flat.intercept = 1.0;
  cfx::SparseInstance y;
  y.dimension = big;
  for (cfx::FeatureId j = 0; j < big; ++j) {
    y.indices.push_back(j);
    y.values.push_back(1.0);
  }
  cfx::Classifier c2{flat, 0.5};
  cfx::CompleteSearchStats stats2;
  auto e2 = cfx::explain_complete(c2, y, 30, 1000000, &stats2);
  if (e2.status != cfx::SearchStatus::budget_exhausted ||
      e2.note != "combination budget reached before size 4")
    return fail(fmt("expected a refusal before size 4, got %s (%s)",
                    cfx::to_string(e2.status), e2.note.c_str()));
  std::vector<std::uint64_t> want2 = {binom(151, 1), binom(151, 2),
                                      binom(151, 3)};
  std::uint64_t seen = want2[0] + want2[1] + want2[2];
  if (stats2.evaluated_per_size != want2 || stats2.total_evaluated != seen)
    return fail(fmt("refusal counters off, total %llu vs expected %llu",
                    static_cast<unsigned long long>(stats2.total_evaluated),
                    static_cast<unsigned long long>(seen)));
  return pass(fmt("counters equal C(34,k) for k <= 6 (total %llu); the cap "
                  "refused the C(151,4) sweep after %llu evaluations",
                  static_cast<unsigned long long>(total),
                  static_cast<unsigned long long>(seen)));
}

// One fixed model; instances need exactly s strong removals to flip. The
// best-first search expands s frontiers while the ranked prefix walk does the
// same work at every s, so their cost curves separate.
Outcome cost_scaling() {
  auto t0 = clock_type::now();
  const std::uint32_t dim = 600;
  cfx::LinearModel model;
  model.dimension = dim;
  model.weights.emplace_back(0, -1.0);
  for (cfx::FeatureId j = 1; j < dim; ++j) model.weights.emplace_back(j, 1.0);
  cfx::Classifier c{model, 0.0};
  const int weak_count = 39;
  const double ballast = 0.5 + weak_count * 0.001;
  std::mt19937 rng(88);
  std::vector<cfx::FeatureId> pool(dim - 1);
  std::iota(pool.begin(), pool.end(), 1u);
  const int per_group = 10;
  const int greedy_reps = 15;
  const int hybrid_reps = 10;
  cfx::AttributionConfig acfg;
  acfg.n_samples = 2000;
  acfg.seed = 1;
  std::vector<double> greedy_ns(10, 0.0);
  std::vector<double> hybrid_ns(10, 0.0);
  for (int s = 1; s <= 10; ++s) {
    for (int i = 0; i < per_group; ++i) {
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<std::pair<cfx::FeatureId, double>> entries;
      entries.emplace_back(0, ballast);
      for (int k = 0; k < s; ++k) entries.emplace_back(pool[k], 1.0);
      for (int k = s; k < s + weak_count; ++k)
        entries.emplace_back(pool[k], 0.001);
      std::sort(entries.begin(), entries.end());
      cfx::SparseInstance x;
      x.dimension = dim;
      for (const auto& [id, value] : entries) {
        x.indices.push_back(id);
        x.values.push_back(value);
      }

      auto e = cfx::explain_sedc(c, x);
      if (e.status != cfx::SearchStatus::found || e.switching_point != s)
        return fail(fmt("group %d: best-first gave %s with sp %d", s,
                        cfx::to_string(e.status), e.switching_point));
      auto h = cfx::explain_lime_c(c, x, acfg);
      if (h.status != cfx::SearchStatus::found)
        return fail(fmt("group %d: lime-c gave %s (%s)", s,
                        cfx::to_string(h.status), h.note.c_str()));

      auto g0 = clock_type::now();
      for (int rep = 0; rep < greedy_reps; ++rep) cfx::explain_sedc(c, x);
      greedy_ns[s - 1] += seconds_since(g0) * 1e9;
      auto h0 = clock_type::now();
      for (int rep = 0; rep < hybrid_reps; ++rep)
        cfx::explain_lime_c(c, x, acfg);
      hybrid_ns[s - 1] += seconds_since(h0) * 1e9;
    }
    greedy_ns[s - 1] /= static_cast<double>(per_group * greedy_reps);
    hybrid_ns[s - 1] /= static_cast<double>(per_group * hybrid_reps);
  }
  double growth = greedy_ns[9] / greedy_ns[0];
  double spread = *std::max_element(hybrid_ns.begin(), hybrid_ns.end()) /
                  *std::min_element(hybrid_ns.begin(), hybrid_ns.end());
  double total_s = seconds_since(t0);
  if (total_s >= 300.0) return fail(fmt("took %.0f s, budget 300 s", total_s));
  if (!(growth > 10.0))
    return fail(fmt("best-first mean grew only %.1fx from size 1 to size 10 "
                    "(a linear trend would be 10x)",
                    growth));
  if (!(spread < 3.0))
    return fail(fmt("lime-c group means spread %.2fx, needs < 3x", spread));
  return pass(fmt("best-first mean grew %.1fx across sizes 1..10, lime-c "
                  "spread %.2fx, %.1f s",
                  growth, spread, total_s));
}

Outcome grid_determinism() {
  std::mt19937 rng(99);
  const std::uint32_t dim = 30;
  std::vector<cfx::FeatureId> pool(dim);
  std::iota(pool.begin(), pool.end(), 0u);
  cfx::Dataset d;
  d.dimension = dim;
  std::uniform_int_distribution<int> active_dist(4, 10);
  for (int i = 0; i < 12; ++i) {
    int m = active_dist(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    cfx::SparseInstance x;
    x.dimension = dim;
    std::vector<cfx::FeatureId> ids(pool.begin(), pool.begin() + m);
    std::sort(ids.begin(), ids.end());
    x.indices = ids;
    x.values.assign(ids.size(), 1.0);
    d.instances.push_back(std::move(x));
    d.labels.push_back(1);
  }
  cfx::LinearModel model;
  model.dimension = dim;
  for (cfx::FeatureId j = 0; j < dim; ++j)
    model.weights.emplace_back(j, 0.15 + 0.03 * (j % 7));
  std::vector<double> scores;
  for (const auto& x : d.instances) scores.push_back(model.score(x));
  std::sort(scores.begin(), scores.end());
  cfx::Classifier c{model, 0.75 * scores[scores.size() / 2]};

  cfx::ExperimentConfig cfg;
  cfg.algorithms = {"sedc", "lime-c", "shap-c", "random", "complete"};
  cfg.seeds = {1, 2, 3};
  cfg.attribution.n_samples = 600;
  auto r1 = cfx::run_grid(c, d, cfg);
  auto r2 = cfx::run_grid(c, d, cfg);
  if (r1.empty()) return fail("the grid produced no records");
  if (r1.size() != r2.size())
    return fail(fmt("%zu vs %zu records across the two runs", r1.size(),
                    r2.size()));
  int found_count = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const auto& a = r1[i];
    const auto& b = r2[i];
    if (a.status == "error")
      return fail(fmt("error record for %s on instance %zu: %s",
                      a.algorithm.c_str(), a.instance_id, a.note.c_str()));
    if (a.instance_id != b.instance_id || a.active_count != b.active_count ||
        a.algorithm != b.algorithm || a.seed != b.seed ||
        a.status != b.status || a.switching_point != b.switching_point ||
        a.score_change != b.score_change || a.note != b.note)
      return fail(fmt("record %zu differs between runs (%s seed %u)", i,
                      a.algorithm.c_str(), a.seed));
    if (a.status == "found") ++found_count;
  }
  if (found_count == 0) return fail("no record reached found status");
  return pass(fmt("%zu records identical across a re-run (%d found)",
                  r1.size(), found_count));
}

Outcome size_boundary() {
  cfx::Explanation at_cap;
  at_cap.status = cfx::SearchStatus::found;
  at_cap.switching_point = 30;
  cfx::Explanation over_cap;
  over_cap.status = cfx::SearchStatus::found;
  over_cap.switching_point = 31;
  cfx::Explanation missing;  // not_found
  if (cfx::percentage_explained({at_cap}) != 100.0)
    return fail("a found size-30 result must count");
  if (cfx::percentage_explained({over_cap}) != 0.0)
    return fail("a found size-31 result must not count");
  if (cfx::percentage_explained({at_cap, over_cap}) != 50.0)
    return fail("sizes 30 and 31 together must give 50%");
  double third = cfx::percentage_explained({at_cap, over_cap, missing});
  if (std::fabs(third - 100.0 / 3.0) > 1e-12)
    return fail(fmt("with an unexplained result added, got %.6f%%", third));
  return pass("size 30 counts toward the percentage, size 31 and unexplained "
              "results do not");
}

}  // namespace

int main() {
  const auto cases = sampled_linear_cases(200, 1001);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> gate = {
      {"1. mid-p golden values", golden_mid_p},
      {"2. best-first and ranked-prefix optimality on linear models",
       [&] { return linear_optimality(cases); }},
      {"3. hybrid explanations flip and bound the exhaustive minimum",
       [&] { return hybrid_soundness(cases); }},
      {"4. exact shapley coefficients equal linear contributions",
       shapley_contributions},
      {"5. hybrid coverage on a nonlinear model", nonlinear_direction},
      {"6. random baseline needs more removals than best-first",
       random_separation},
      {"7. exhaustive search counters and budget refusal", exhaustive_counters},
      {"8. best-first cost grows with explanation size, lime-c stays flat",
       cost_scaling},
      {"9. benchmark grid determinism", grid_determinism},
      {"10. percentage explained size boundary", size_boundary},
  };
  int failures = 0;
  for (const auto& criterion : gate) {
    Outcome result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result = fail(fmt("unhandled exception: %s", e.what()));
    }
    std::printf("%s: %s: %s\n", result.ok ? "PASS" : "FAIL", criterion.name,
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu criteria passed\n", gate.size());
  else
    std::printf("%d of %zu criteria failed\n", failures, gate.size());
  return failures == 0 ? 0 : 1;
}
