#include "cfx/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace cfx {

namespace {

// the empty and full masks always participate; unit weight matches the
// total mass of an extreme stratum and keeps the gram well conditioned for
// coordinate descent
constexpr double kAnchorWeight = 1.0;
constexpr double kCoefficientEps = 1e-12;
constexpr double kL1Tolerance = 1e-8;
constexpr int kL1MaxSweeps = 10000;

// normal-equation accumulator with a leading intercept column
struct Gram {
  std::size_t m = 0;          // feature columns, excluding the intercept
  std::vector<double> a;      // (m+1)x(m+1) row-major, symmetric
  std::vector<double> rhs;    // (m+1)
  double yty = 0.0;

  double& at(std::size_t r, std::size_t c) { return a[r * (m + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * (m + 1) + c]; }

  void accumulate(const std::vector<double>& z, double y, double w) {
    if (w == 0.0) return;
    rhs[0] += w * y;
    yty += w * y * y;
    for (std::size_t j = 0; j < m; ++j) {
      if (z[j] == 0.0) continue;
      double wz = w * z[j];
      rhs[j + 1] += wz * y;
      at(0, j + 1) += wz;
      for (std::size_t k = j; k < m; ++k)
        if (z[k] != 0.0) at(j + 1, k + 1) += wz * z[k];
    }
    at(0, 0) += w;
  }

  void mirror() {
    for (std::size_t r = 0; r <= m; ++r)
      for (std::size_t c = r + 1; c <= m; ++c) at(c, r) = at(r, c);
  }
};

Gram build_gram(const std::vector<std::vector<double>>& rows,
                const std::vector<double>& labels,
                const std::vector<double>& weights) {
  Gram g;
  g.m = rows.empty() ? 0 : rows[0].size();
  g.a.assign((g.m + 1) * (g.m + 1), 0.0);
  g.rhs.assign(g.m + 1, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    g.accumulate(rows[i], labels[i], weights[i]);
  g.mirror();
  return g;
}

// LDL^T on a copy of the gram matrix with `strength` added to every
// coefficient diagonal (not the intercept)
LinearFit solve_l2(const Gram& g, double strength) {
  std::size_t n = g.m + 1;
  std::vector<double> a(g.a);
  for (std::size_t j = 1; j < n; ++j) a[j * n + j] += strength;

  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[j * n + j]));
  if (scale == 0.0) scale = 1.0;

  std::vector<double> d(n), l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double dj = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) dj -= l[j * n + k] * l[j * n + k] * d[k];
    if (std::abs(dj) <= 1e-12 * scale)
      throw singular_fit("weighted design is rank-deficient");
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i * n + k] * l[j * n + k] * d[k];
      l[i * n + j] = v / dj;
    }
  }

  std::vector<double> y(g.rhs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) y[i] -= l[i * n + k] * y[k];
  for (std::size_t i = 0; i < n; ++i) y[i] /= d[i];
  for (std::size_t ii = n; ii > 0; --ii) {
    std::size_t i = ii - 1;
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= l[k * n + i] * y[k];
  }

  LinearFit fit;
  fit.intercept = y[0];
  fit.coefficients.assign(y.begin() + 1, y.end());
  return fit;
}

double soft_threshold(double v, double gamma) {
  if (v > gamma) return v - gamma;
  if (v < -gamma) return v + gamma;
  return 0.0;
}

// cyclic coordinate descent on the gram form
LinearFit solve_l1(const Gram& g, double strength) {
  std::size_t m = g.m;
  if (g.at(0, 0) <= 0.0)
    throw std::invalid_argument("fit: total sample weight is zero");

  LinearFit fit;
  fit.coefficients.assign(m, 0.0);
  fit.intercept = g.rhs[0] / g.at(0, 0);

  for (int sweep = 1; sweep <= kL1MaxSweeps; ++sweep) {
    double max_move = 0.0;

    double acc = g.rhs[0];
    for (std::size_t k = 0; k < m; ++k)
      acc -= g.at(0, k + 1) * fit.coefficients[k];
    double b = acc / g.at(0, 0);
    max_move = std::max(max_move, std::abs(b - fit.intercept));
    fit.intercept = b;

    for (std::size_t j = 0; j < m; ++j) {
      double nu = g.at(j + 1, j + 1);
      if (nu <= 0.0) {
        fit.coefficients[j] = 0.0;
        continue;
      }
      double rho = g.rhs[j + 1] - g.at(j + 1, 0) * fit.intercept;
      for (std::size_t k = 0; k < m; ++k)
        if (k != j) rho -= g.at(j + 1, k + 1) * fit.coefficients[k];
      double next = soft_threshold(rho, strength / 2.0) / nu;
      max_move = std::max(max_move, std::abs(next - fit.coefficients[j]));
      fit.coefficients[j] = next;
    }

    fit.sweeps = sweep;
    if (max_move < kL1Tolerance) {
      fit.converged = true;
      return fit;
    }
  }
  fit.converged = false;
  return fit;
}

double weighted_sse(const Gram& g, const LinearFit& fit) {
  std::size_t n = g.m + 1;
  std::vector<double> beta(n);
  beta[0] = fit.intercept;
  for (std::size_t j = 0; j < g.m; ++j) beta[j + 1] = fit.coefficients[j];
  double sse = g.yty;
  for (std::size_t r = 0; r < n; ++r) {
    sse -= 2.0 * beta[r] * g.rhs[r];
    for (std::size_t c = 0; c < n; ++c) sse += beta[r] * g.at(r, c) * beta[c];
  }
  return std::max(sse, 0.0);
}

// smallest grid value whose residual stays within 5% of the unpenalized
// fit; the grid spans [1e-6, 1] times the critical strength that zeroes
// every coefficient
double pick_lasso_strength(const Gram& g) {
  double mean = g.at(0, 0) > 0.0 ? g.rhs[0] / g.at(0, 0) : 0.0;
  double crit = 0.0;
  for (std::size_t j = 0; j < g.m; ++j)
    crit = std::max(crit, 2.0 * std::abs(g.rhs[j + 1] - g.at(j + 1, 0) * mean));
  if (crit == 0.0) return 0.0;

  double base_sse = weighted_sse(g, solve_l1(g, 0.0));
  double allowed = 1.05 * base_sse + 1e-12 * (1.0 + base_sse);
  for (int i = 9; i >= 0; --i) {
    double strength = crit * std::pow(10.0, -6.0 * i / 9.0);
    if (weighted_sse(g, solve_l1(g, strength)) <= allowed) return strength;
  }
  return 0.0;
}

void check_fit_inputs(const std::vector<std::vector<double>>& rows,
                      const std::vector<double>& labels,
                      const std::vector<double>& weights, double strength) {
  if (rows.size() < 2) throw std::invalid_argument("fit: need >= 2 samples");
  if (rows.size() != labels.size() || rows.size() != weights.size())
    throw std::invalid_argument("fit: rows/labels/weights length mismatch");
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw std::invalid_argument("fit: ragged design matrix");
  for (double w : weights)
    if (w < 0.0) throw std::invalid_argument("fit: negative sample weight");
  if (strength < 0.0) throw std::invalid_argument("fit: negative strength");
}

void check_rank_inputs(const Classifier& c, const SparseInstance& x,
                       const AttributionConfig& cfg, const char* who) {
  if (x.active_count() == 0)
    throw std::invalid_argument(std::string(who) +
                                ": instance has no active features");
  if (c.predict(x) != 1)
    throw std::invalid_argument(std::string(who) +
                                ": instance not positively predicted");
  if (cfg.n_samples < 0 ||
      static_cast<std::size_t>(cfg.n_samples) < x.active_count() + 2)
    throw std::invalid_argument(std::string(who) +
                                ": n_samples must be >= active count + 2");
  if (cfg.ridge_strength < 0.0 ||
      (cfg.lasso_strength && *cfg.lasso_strength < 0.0))
    throw std::invalid_argument(std::string(who) + ": negative strength");
  if (cfg.kernel_width <= 0.0)
    throw std::invalid_argument(std::string(who) + ": kernel width must be > 0");
}

// model score of the instance restricted to the kept active positions
double masked_score(const Classifier& c, const SparseInstance& x,
                    const std::vector<char>& kept) {
  SparseInstance z;
  z.dimension = x.dimension;
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    if (!kept[i]) continue;
    z.indices.push_back(x.indices[i]);
    z.values.push_back(x.values[i]);
  }
  return c.score(z);
}

ImportanceRanking ranking_from_fit(const SparseInstance& x,
                                   const LinearFit& fit) {
  ImportanceRanking r;
  r.intercept = fit.intercept;
  r.entries.reserve(x.indices.size());
  for (std::size_t j = 0; j < x.indices.size(); ++j)
    r.entries.emplace_back(x.indices[j], fit.coefficients[j]);
  std::sort(r.entries.begin(), r.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  r.all_zero = true;
  for (const auto& e : r.entries)
    if (std::abs(e.second) > kCoefficientEps) {
      r.all_zero = false;
      break;
    }
  return r;
}

}  // namespace

LinearFit fit_weighted_l2(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& labels,
                          const std::vector<double>& weights, double strength) {
  check_fit_inputs(rows, labels, weights, strength);
  return solve_l2(build_gram(rows, labels, weights), strength);
}

LinearFit fit_weighted_l1(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& labels,
                          const std::vector<double>& weights, double strength) {
  check_fit_inputs(rows, labels, weights, strength);
  return solve_l1(build_gram(rows, labels, weights), strength);
}

double lime_kernel_weight(double cosine, double width) {
  double d = 1.0 - cosine;
  return std::exp(-(d * d) / (width * width));
}

double shapley_stratum_weight(std::uint32_t m, std::uint32_t s) {
  if (s == 0 || s >= m)
    throw std::invalid_argument("shapley_stratum_weight: need 0 < s < m");
  return static_cast<double>(m - 1) /
         (static_cast<double>(s) * static_cast<double>(m - s));
}

ImportanceRanking lime_rank(const Classifier& c, const SparseInstance& x,
                            const AttributionConfig& cfg) {
  check_rank_inputs(c, x, cfg, "lime_rank");
  const std::size_t m = x.active_count();
  const BinaryMask full = binarize(x);

  std::vector<std::vector<double>> rows;
  std::vector<double> labels, weights;
  rows.reserve(static_cast<std::size_t>(cfg.n_samples));

  auto push_sample = [&](const std::vector<char>& kept) {
    std::vector<double> z(m, 0.0);
    BinaryMask mask{x.dimension, {}};
    for (std::size_t i = 0; i < m; ++i)
      if (kept[i]) {
        z[i] = 1.0;
        mask.bits.push_back(x.indices[i]);
      }
    double cosine = mask.bits.empty() ? 0.0 : cosine_similarity(full, mask);
    rows.push_back(std::move(z));
    labels.push_back(masked_score(c, x, kept));
    weights.push_back(lime_kernel_weight(cosine, cfg.kernel_width));
  };

  // the full and empty masks always participate
  push_sample(std::vector<char>(m, 1));
  push_sample(std::vector<char>(m, 0));

  std::mt19937 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, m);
  std::vector<std::size_t> positions(m);
  for (std::size_t i = 0; i < m; ++i) positions[i] = i;

  for (int s = 2; s < cfg.n_samples; ++s) {
    std::size_t take = size_dist(rng);
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m - 1);
      std::swap(positions[i], positions[pick(rng)]);
    }
    std::vector<char> kept(m, 0);
    for (std::size_t i = 0; i < take; ++i) kept[positions[i]] = 1;
    push_sample(kept);
  }

  return ranking_from_fit(
      x, solve_l2(build_gram(rows, labels, weights), cfg.ridge_strength));
}

ImportanceRanking shap_rank(const Classifier& c, const SparseInstance& x,
                            const AttributionConfig& cfg) {
  check_rank_inputs(c, x, cfg, "shap_rank");
  const std::size_t m = x.active_count();

  std::vector<std::vector<double>> rows;
  std::vector<double> labels, weights;

  auto push_mask = [&](const std::vector<char>& kept, double weight) {
    std::vector<double> z(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (kept[i]) z[i] = 1.0;
    rows.push_back(std::move(z));
    labels.push_back(masked_score(c, x, kept));
    weights.push_back(weight);
  };

  push_mask(std::vector<char>(m, 0), kAnchorWeight);
  push_mask(std::vector<char>(m, 1), kAnchorWeight);

  // strata ordered from the extreme sizes inward: 1, m-1, 2, m-2, ...
  std::vector<std::uint32_t> order;
  for (std::uint32_t lo = 1, hi = static_cast<std::uint32_t>(m) - 1; lo <= hi;
       ++lo, --hi) {
    order.push_back(lo);
    if (hi != lo) order.push_back(hi);
  }

  std::uint64_t budget;
  if (m <= 13) {
    budget = (1ull << m) - 2;  // every nontrivial mask
  } else {
    budget = static_cast<std::uint64_t>(cfg.n_samples) - 2;
  }

  std::mt19937 rng(cfg.seed);
  std::vector<std::size_t> positions(m);
  for (std::size_t i = 0; i < m; ++i) positions[i] = i;

  for (std::uint32_t s : order) {
    if (budget == 0) break;
    unsigned __int128 count128 = 1;
    std::uint64_t count;
    {
      std::uint64_t kk = std::min<std::uint64_t>(s, m - s);
      for (std::uint64_t i = 0; i < kk; ++i) {
        count128 = count128 * (m - i) / (i + 1);
        if (count128 > budget) break;  // partial values only grow
      }
      count = count128 > budget ? budget + 1 : static_cast<std::uint64_t>(count128);
    }
    double stratum = shapley_stratum_weight(static_cast<std::uint32_t>(m), s);

    if (count <= budget) {
      // full stratum: enumerate every size-s subset
      double w = stratum / static_cast<double>(count);
      std::vector<std::size_t> pos(s);
      for (std::size_t i = 0; i < s; ++i) pos[i] = i;
      while (true) {
        std::vector<char> kept(m, 0);
        for (std::size_t i = 0; i < s; ++i) kept[pos[i]] = 1;
        push_mask(kept, w);
        std::ptrdiff_t i = static_cast<std::ptrdiff_t>(s) - 1;
        while (i >= 0 && pos[static_cast<std::size_t>(i)] ==
                             m - s + static_cast<std::size_t>(i))
          --i;
        if (i < 0) break;
        ++pos[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < s; ++j)
          pos[j] = pos[j - 1] + 1;
      }
      budget -= count;
    } else {
      // partial stratum: distinct random size-s subsets share its weight
      std::uint64_t take = budget;
      double w = stratum / static_cast<double>(take);
      std::set<std::vector<char>> drawn;
      while (drawn.size() < take) {
        for (std::size_t i = 0; i < s; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, m - 1);
          std::swap(positions[i], positions[pick(rng)]);
        }
        std::vector<char> kept(m, 0);
        for (std::size_t i = 0; i < s; ++i) kept[positions[i]] = 1;
        drawn.insert(kept);
      }
      for (const auto& kept : drawn) push_mask(kept, w);
      budget = 0;
    }
  }

  Gram gram = build_gram(rows, labels, weights);
  double strength =
      cfg.lasso_strength ? *cfg.lasso_strength : pick_lasso_strength(gram);
  return ranking_from_fit(x, solve_l1(gram, strength));
}

}  // namespace cfx
