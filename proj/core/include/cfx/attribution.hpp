#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cfx/model.hpp"
#include "cfx/sparse.hpp"

namespace cfx {

/// One perturbed point for the local surrogate: which active features were
/// kept, the model score of that perturbation, and its sample weight.
struct PerturbationSample {
  BinaryMask mask;  // kept active features
  double label = 0.0;
  double kernel_weight = 0.0;
  int subset_size = 0;  // |mask|
};

struct ImportanceRanking {
  std::vector<std::pair<FeatureId, double>> entries;  // coefficient desc, id asc
  double intercept = 0.0;
  bool all_zero = false;  // every coefficient vanished (over-penalized fit)
};

struct AttributionConfig {
  int n_samples = 5000;
  unsigned seed = 0;
  double ridge_strength = 1.0;
  // nullopt picks the largest grid value whose residual stays within 5% of
  // the unpenalized fit.
  std::optional<double> lasso_strength;
  double kernel_width = 0.25;
};

struct LinearFit {
  double intercept = 0.0;
  std::vector<double> coefficients;
  bool converged = true;
  int sweeps = 0;
};

struct singular_fit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weighted least squares with an L2 penalty on the coefficients (intercept
/// unpenalized), solved via the normal equations. rows are the design matrix
/// without the intercept column. Throws singular_fit when the penalized
/// system is still rank-deficient.
LinearFit fit_weighted_l2(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& labels,
                          const std::vector<double>& weights, double strength);

/// Coordinate descent for the weighted lasso (intercept unpenalized).
/// Stops when no coefficient moves more than 1e-8 or after 1e4 sweeps;
/// a capped run returns converged=false with the best iterate.
LinearFit fit_weighted_l1(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& labels,
                          const std::vector<double>& weights, double strength);

double lime_kernel_weight(double cosine, double width);

/// (m-1) / (C(m,s)·s·(m-s)) summed over the stratum, i.e. the total weight
/// assigned to subset size s, 0 < s < m.
double shapley_stratum_weight(std::uint32_t m, std::uint32_t s);

/// Uniform random subsets of the active features (size drawn uniformly from
/// 1..m), cosine-kernel weights, ridge fit on kept/removed indicators
/// against model scores. Every active feature appears in the ranking.
ImportanceRanking lime_rank(const Classifier& c, const SparseInstance& x,
                            const AttributionConfig& cfg);

/// Size-stratified masks weighted by the Shapley kernel, lasso fit. With
/// <= 13 active features every nontrivial mask is enumerated, so the
/// coefficients are exact; otherwise strata are filled from the extreme
/// sizes inward until n_samples is spent. An all-zero fit is reported via
/// the all_zero flag, not an error.
ImportanceRanking shap_rank(const Classifier& c, const SparseInstance& x,
                            const AttributionConfig& cfg);

}  // namespace cfx
