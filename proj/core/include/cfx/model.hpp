#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cfx/sparse.hpp"

namespace cfx {

struct LinearModel {
  std::uint32_t dimension = 0;
  std::vector<std::pair<FeatureId, double>> weights;  // sorted by feature id
  double intercept = 0.0;

  double weight(FeatureId j) const;
  double score(const SparseInstance& x) const;
};

/// One rectifier hidden layer. Hidden weights are stored sparse by row so a
/// forward pass touches only the active features of the input.
struct MlpModel {
  std::uint32_t dimension = 0;
  std::vector<std::vector<std::pair<FeatureId, double>>> hidden;
  std::vector<double> hidden_bias;
  std::vector<double> output;
  double output_bias = 0.0;

  double score(const SparseInstance& x) const;
};

struct Classifier {
  std::variant<LinearModel, MlpModel> model;
  double threshold = 0.0;

  std::uint32_t dimension() const;
  double score(const SparseInstance& x) const;
  int predict(const SparseInstance& x) const {
    return score(x) >= threshold ? 1 : 0;
  }
};

struct Dataset {
  std::uint32_t dimension = 0;
  std::vector<SparseInstance> instances;
  std::vector<int> labels;  // each 0 or 1

  std::size_t size() const { return instances.size(); }
  double imbalance() const;  // minority class fraction
  double sparsity() const;   // 1 - mean active count / dimension
};

/// Batch gradient descent on log-loss with an L2 penalty. Deterministic for
/// a fixed seed. Throws std::invalid_argument on an empty or single-class
/// dataset or negative l2_strength.
LinearModel train_linear(const Dataset& d, double l2_strength, int epochs,
                         unsigned seed);

/// Full-batch gradient descent, uniform init from `seed`. hidden >= 1.
MlpModel train_mlp(const Dataset& d, int hidden, double learning_rate,
                   int epochs, unsigned seed);

/// Threshold t such that roughly a fraction b of the given scores lands at
/// or above t: the k-th largest score with k = clamp(round(b*n), 1, n).
double threshold_by_imbalance(const std::vector<double>& scores, double b);

std::string classifier_to_json(const Classifier& c);
Classifier classifier_from_json(const std::string& text);
void save_classifier(const Classifier& c, const std::string& path);
Classifier load_classifier(const std::string& path);

}  // namespace cfx
