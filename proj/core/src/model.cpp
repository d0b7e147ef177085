#include "cfx/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cfx {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

void check_dimension(std::uint32_t model_dim, const SparseInstance& x) {
  if (x.dimension != model_dim)
    throw std::invalid_argument("score: instance dimension " +
                                std::to_string(x.dimension) +
                                " does not match model dimension " +
                                std::to_string(model_dim));
}

void check_trainable(const Dataset& d) {
  if (d.instances.empty()) throw std::invalid_argument("train: empty dataset");
  if (d.instances.size() != d.labels.size())
    throw std::invalid_argument("train: instance/label count mismatch");
  bool has0 = false, has1 = false;
  for (int l : d.labels) (l ? has1 : has0) = true;
  if (!has0 || !has1)
    throw std::invalid_argument("train: degenerate dataset, single class");
}

}  // namespace

double LinearModel::weight(FeatureId j) const {
  auto it = std::lower_bound(
      weights.begin(), weights.end(), j,
      [](const std::pair<FeatureId, double>& w, FeatureId id) {
        return w.first < id;
      });
  if (it == weights.end() || it->first != j) return 0.0;
  return it->second;
}

double LinearModel::score(const SparseInstance& x) const {
  check_dimension(dimension, x);
  double s = intercept;
  // both index lists are sorted; walk them together
  std::size_t wi = 0;
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    while (wi < weights.size() && weights[wi].first < x.indices[i]) ++wi;
    if (wi == weights.size()) break;
    if (weights[wi].first == x.indices[i]) s += weights[wi].second * x.values[i];
  }
  return s;
}

double MlpModel::score(const SparseInstance& x) const {
  check_dimension(dimension, x);
  double out = output_bias;
  for (std::size_t h = 0; h < hidden.size(); ++h) {
    double a = hidden_bias[h];
    const auto& row = hidden[h];
    std::size_t wi = 0;
    for (std::size_t i = 0; i < x.indices.size(); ++i) {
      while (wi < row.size() && row[wi].first < x.indices[i]) ++wi;
      if (wi == row.size()) break;
      if (row[wi].first == x.indices[i]) a += row[wi].second * x.values[i];
    }
    if (a > 0.0) out += output[h] * a;
  }
  return out;
}

std::uint32_t Classifier::dimension() const {
  return std::visit([](const auto& m) { return m.dimension; }, model);
}

double Classifier::score(const SparseInstance& x) const {
  return std::visit([&](const auto& m) { return m.score(x); }, model);
}

double Dataset::imbalance() const {
  if (labels.empty()) return 0.0;
  double pos = 0.0;
  for (int l : labels) pos += l;
  double frac = pos / static_cast<double>(labels.size());
  return std::min(frac, 1.0 - frac);
}

double Dataset::sparsity() const {
  if (instances.empty() || dimension == 0) return 1.0;
  double active = 0.0;
  for (const auto& x : instances) active += static_cast<double>(x.active_count());
  return 1.0 - active / static_cast<double>(instances.size()) /
                   static_cast<double>(dimension);
}

LinearModel train_linear(const Dataset& d, double l2_strength, int epochs,
                         unsigned seed) {
  check_trainable(d);
  if (l2_strength < 0.0) throw std::invalid_argument("train: negative l2");
  if (epochs <= 0) throw std::invalid_argument("train: epochs must be >= 1");

  std::size_t n = d.instances.size();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> init(-0.01, 0.01);
  std::vector<double> w(d.dimension);
  for (auto& v : w) v = init(rng);
  double b = 0.0;

  std::vector<double> grad(d.dimension);
  double lr = 1.0;
  for (int e = 0; e < epochs; ++e) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = d.instances[i];
      double z = b;
      for (std::size_t k = 0; k < x.indices.size(); ++k)
        z += w[x.indices[k]] * x.values[k];
      double err = sigmoid(z) - d.labels[i];
      for (std::size_t k = 0; k < x.indices.size(); ++k)
        grad[x.indices[k]] += err * x.values[k];
      gb += err;
    }
    double inv = 1.0 / static_cast<double>(n);
    for (std::uint32_t j = 0; j < d.dimension; ++j)
      w[j] -= lr * (grad[j] * inv + l2_strength * w[j]);
    b -= lr * gb * inv;
  }

  LinearModel m;
  m.dimension = d.dimension;
  m.intercept = b;
  for (std::uint32_t j = 0; j < d.dimension; ++j)
    if (w[j] != 0.0) m.weights.emplace_back(j, w[j]);
  return m;
}

MlpModel train_mlp(const Dataset& d, int hidden, double learning_rate,
                   int epochs, unsigned seed) {
  check_trainable(d);
  if (hidden < 1) throw std::invalid_argument("train: hidden must be >= 1");
  if (learning_rate <= 0.0) throw std::invalid_argument("train: learning rate");
  if (epochs <= 0) throw std::invalid_argument("train: epochs must be >= 1");

  std::size_t n = d.instances.size();
  std::size_t h = static_cast<std::size_t>(hidden);
  std::uint32_t m = d.dimension;
  std::mt19937 rng(seed);
  double span = 1.0 / std::sqrt(static_cast<double>(std::max<std::uint32_t>(m, 1)));
  std::uniform_real_distribution<double> init(-span, span);

  std::vector<std::vector<double>> W(h, std::vector<double>(m));
  std::vector<double> bh(h), wo(h);
  double bo = 0.0;
  for (auto& row : W)
    for (auto& v : row) v = init(rng);
  for (auto& v : bh) v = init(rng);
  for (auto& v : wo) v = init(rng);

  std::vector<std::vector<double>> gW(h, std::vector<double>(m));
  std::vector<double> gbh(h), gwo(h), act(h);
  for (int e = 0; e < epochs; ++e) {
    for (auto& row : gW) std::fill(row.begin(), row.end(), 0.0);
    std::fill(gbh.begin(), gbh.end(), 0.0);
    std::fill(gwo.begin(), gwo.end(), 0.0);
    double gbo = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = d.instances[i];
      double z = bo;
      for (std::size_t u = 0; u < h; ++u) {
        double a = bh[u];
        for (std::size_t k = 0; k < x.indices.size(); ++k)
          a += W[u][x.indices[k]] * x.values[k];
        act[u] = a > 0.0 ? a : 0.0;
        z += wo[u] * act[u];
      }
      double err = sigmoid(z) - d.labels[i];
      gbo += err;
      for (std::size_t u = 0; u < h; ++u) {
        gwo[u] += err * act[u];
        if (act[u] > 0.0) {
          double back = err * wo[u];
          gbh[u] += back;
          for (std::size_t k = 0; k < x.indices.size(); ++k)
            gW[u][x.indices[k]] += back * x.values[k];
        }
      }
    }
    double step = learning_rate / static_cast<double>(n);
    for (std::size_t u = 0; u < h; ++u) {
      for (std::uint32_t j = 0; j < m; ++j) W[u][j] -= step * gW[u][j];
      bh[u] -= step * gbh[u];
      wo[u] -= step * gwo[u];
    }
    bo -= step * gbo;
  }

  MlpModel out;
  out.dimension = m;
  out.hidden.resize(h);
  out.hidden_bias = bh;
  out.output = wo;
  out.output_bias = bo;
  for (std::size_t u = 0; u < h; ++u)
    for (std::uint32_t j = 0; j < m; ++j)
      if (W[u][j] != 0.0) out.hidden[u].emplace_back(j, W[u][j]);
  return out;
}

double threshold_by_imbalance(const std::vector<double>& scores, double b) {
  if (scores.empty())
    throw std::invalid_argument("threshold_by_imbalance: empty scores");
  if (!(b > 0.0) || !(b < 1.0))
    throw std::invalid_argument("threshold_by_imbalance: b must be in (0,1)");
  std::vector<double> sorted(scores);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  auto n = static_cast<long long>(sorted.size());
  long long k = std::llround(b * static_cast<double>(n));
  k = std::clamp(k, 1ll, n);
  return sorted[static_cast<std::size_t>(k - 1)];
}

namespace {

nlohmann::json weights_to_json(const LinearModel& m) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [j, v] : m.weights) w[std::to_string(j)] = v;
  return w;
}

std::vector<std::pair<FeatureId, double>> sparse_row_from_json(
    const nlohmann::json& j) {
  std::vector<std::pair<FeatureId, double>> row;
  for (auto it = j.begin(); it != j.end(); ++it)
    row.emplace_back(static_cast<FeatureId>(std::stoul(it.key())),
                     it.value().get<double>());
  std::sort(row.begin(), row.end());
  return row;
}

}  // namespace

std::string classifier_to_json(const Classifier& c) {
  nlohmann::json j;
  j["dimension"] = c.dimension();
  j["threshold"] = c.threshold;
  if (const auto* lin = std::get_if<LinearModel>(&c.model)) {
    j["type"] = "linear";
    j["weights"] = weights_to_json(*lin);
    j["intercept"] = lin->intercept;
  } else {
    const auto& mlp = std::get<MlpModel>(c.model);
    j["type"] = "mlp";
    nlohmann::json hidden = nlohmann::json::array();
    for (const auto& row : mlp.hidden) {
      nlohmann::json r = nlohmann::json::object();
      for (const auto& [f, v] : row) r[std::to_string(f)] = v;
      hidden.push_back(r);
    }
    j["weights"] = {{"hidden", hidden},
                    {"hidden_bias", mlp.hidden_bias},
                    {"output", mlp.output}};
    j["intercept"] = mlp.output_bias;
  }
  return j.dump(2);
}

Classifier classifier_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
  for (const char* key : {"type", "dimension", "weights", "intercept", "threshold"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("model json: missing field ") + key);

  Classifier c;
  c.threshold = j["threshold"].get<double>();
  auto dim = j["dimension"].get<std::uint32_t>();
  std::string type = j["type"].get<std::string>();
  if (type == "linear") {
    LinearModel m;
    m.dimension = dim;
    m.intercept = j["intercept"].get<double>();
    m.weights = sparse_row_from_json(j["weights"]);
    for (const auto& [f, v] : m.weights)
      if (f >= dim) throw std::invalid_argument("model json: weight index outside dimension");
    c.model = std::move(m);
  } else if (type == "mlp") {
    MlpModel m;
    m.dimension = dim;
    m.output_bias = j["intercept"].get<double>();
    const auto& w = j["weights"];
    for (const auto& row : w["hidden"]) m.hidden.push_back(sparse_row_from_json(row));
    m.hidden_bias = w["hidden_bias"].get<std::vector<double>>();
    m.output = w["output"].get<std::vector<double>>();
    if (m.hidden.size() != m.hidden_bias.size() || m.hidden.size() != m.output.size())
      throw std::invalid_argument("model json: inconsistent mlp layer sizes");
    if (m.hidden.empty())
      throw std::invalid_argument("model json: mlp needs at least one hidden unit");
    c.model = std::move(m);
  } else {
    throw std::invalid_argument("model json: unknown type " + type);
  }
  return c;
}

void save_classifier(const Classifier& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << classifier_to_json(c) << '\n';
}

Classifier load_classifier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return classifier_from_json(buf.str());
}

}  // namespace cfx
