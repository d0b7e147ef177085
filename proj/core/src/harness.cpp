#include "cfx/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cfx/hybrid.hpp"
#include "cfx/oracle.hpp"
#include "cfx/stats.hpp"

namespace cfx {

namespace {

using clock = std::chrono::steady_clock;

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

bool is_stochastic(const std::string& algorithm) {
  return algorithm == "lime-c" || algorithm == "shap-c" || algorithm == "random";
}

const std::set<std::string>& known_algorithms() {
  static const std::set<std::string> k = {"sedc", "lime-c", "shap-c", "random",
                                          "complete"};
  return k;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += "\"";
  return out;
}

// one csv line -> fields, honoring double-quote escaping
std::vector<std::string> csv_fields(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (quoted) throw parse_error("unterminated quote", lineno, line.size());
  out.push_back(cur);
  return out;
}

}  // namespace

Dataset parse_sparse_dataset(const std::string& text) {
  Dataset d;
  bool have_dim = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string tag;
      hs >> tag;
      if (tag == "#dim") {
        if (have_dim)
          throw parse_error("duplicate #dim header", lineno, 1);
        long long m = -1;
        if (!(hs >> m) || m <= 0)
          throw parse_error("#dim needs a positive integer", lineno, 6);
        std::string rest;
        if (hs >> rest)
          throw parse_error("trailing text after #dim", lineno, line.find(rest) + 1);
        d.dimension = static_cast<std::uint32_t>(m);
        have_dim = true;
      }
      continue;  // other comment lines are ignored
    }
    if (!have_dim)
      throw parse_error("instance before #dim header", lineno, 1);

    SparseInstance x;
    x.dimension = d.dimension;
    std::size_t col = 0;
    auto next_token = [&](std::string& tok) {
      while (col < line.size() && (line[col] == ' ' || line[col] == '\t')) ++col;
      if (col >= line.size()) return false;
      std::size_t start = col;
      while (col < line.size() && line[col] != ' ' && line[col] != '\t') ++col;
      tok = line.substr(start, col - start);
      return true;
    };

    std::string tok;
    if (!next_token(tok))
      throw parse_error("missing label", lineno, 1);
    std::size_t label_col = col - tok.size() + 1;
    if (tok != "0" && tok != "1")
      throw parse_error("label must be 0 or 1, got '" + tok + "'", lineno,
                        label_col);
    int label = tok == "1" ? 1 : 0;

    while (next_token(tok)) {
      std::size_t tok_col = col - tok.size() + 1;
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
        throw parse_error("expected idx:val, got '" + tok + "'", lineno, tok_col);
      FeatureId idx;
      double val;
      try {
        std::size_t used;
        unsigned long u = std::stoul(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        idx = static_cast<FeatureId>(u);
        std::string vs = tok.substr(colon + 1);
        val = std::stod(vs, &used);
        if (used != vs.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw parse_error("malformed idx:val '" + tok + "'", lineno, tok_col);
      }
      if (idx >= d.dimension)
        throw parse_error("index " + std::to_string(idx) +
                              " outside dimension " + std::to_string(d.dimension),
                          lineno, tok_col);
      if (!x.indices.empty() && idx <= x.indices.back())
        throw parse_error("indices must be strictly increasing", lineno, tok_col);
      if (val == 0.0)
        throw parse_error("explicit zero value", lineno, tok_col);
      x.indices.push_back(idx);
      x.values.push_back(val);
    }
    d.instances.push_back(std::move(x));
    d.labels.push_back(label);
  }
  if (!have_dim) throw parse_error("missing #dim header", 1, 1);
  return d;
}

Dataset load_sparse_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path, 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sparse_dataset(buf.str());
}

void save_sparse_dataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "#dim " << d.dimension << '\n';
  for (std::size_t i = 0; i < d.instances.size(); ++i) {
    out << d.labels[i];
    const auto& x = d.instances[i];
    char buf[64];
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", x.values[k]);
      out << ' ' << x.indices[k] << ':' << buf;
    }
    out << '\n';
  }
}

ExperimentConfig parse_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);

  ExperimentConfig cfg;
  cfg.algorithms = {"sedc"};
  cfg.seeds = {1, 2, 3, 4, 5};

  auto to_double = [](const std::string& k, const std::string& v) {
    try {
      std::size_t used;
      double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw config_error("config: bad number for " + k + ": '" + v + "'");
    }
  };
  auto to_int = [&](const std::string& k, const std::string& v) {
    double d = to_double(k, v);
    long long i = static_cast<long long>(d);
    if (static_cast<double>(i) != d)
      throw config_error("config: " + k + " must be an integer");
    return i;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("config line " + std::to_string(lineno) +
                         ": empty key or value");

    if (key == "dataset") {
      cfg.dataset_path = value;
    } else if (key == "model") {
      if (value != "train-linear" && value != "train-mlp" && value != "load")
        throw config_error("config: model must be train-linear, train-mlp or load");
      cfg.model_source = value;
    } else if (key == "model_path") {
      cfg.model_path = value;
    } else if (key == "l2_strength") {
      cfg.l2_strength = to_double(key, value);
    } else if (key == "epochs") {
      cfg.epochs = static_cast<int>(to_int(key, value));
    } else if (key == "hidden") {
      cfg.hidden = static_cast<int>(to_int(key, value));
    } else if (key == "learning_rate") {
      cfg.learning_rate = to_double(key, value);
    } else if (key == "train_seed") {
      cfg.train_seed = static_cast<unsigned>(to_int(key, value));
    } else if (key == "threshold") {
      if (value != "imbalance") to_double(key, value);  // validate now
      cfg.threshold = value;
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& a : split(value, ',')) {
        std::string name = trim(a);
        if (!known_algorithms().count(name))
          throw config_error("config: unknown algorithm '" + name + "'");
        cfg.algorithms.push_back(name);
      }
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const auto& s : split(value, ','))
        cfg.seeds.push_back(static_cast<unsigned>(to_int(key, trim(s))));
    } else if (key == "max_iterations") {
      cfg.search.max_iterations = static_cast<int>(to_int(key, value));
    } else if (key == "max_explanation_size") {
      cfg.search.max_explanation_size = static_cast<int>(to_int(key, value));
    } else if (key == "max_time_ms") {
      cfg.search.max_time = std::chrono::milliseconds(to_int(key, value));
    } else if (key == "stop_at_first") {
      if (value == "true" || value == "1") cfg.search.stop_at_first = true;
      else if (value == "false" || value == "0") cfg.search.stop_at_first = false;
      else throw config_error("config: stop_at_first must be true or false");
    } else if (key == "n_samples") {
      cfg.attribution.n_samples = static_cast<int>(to_int(key, value));
    } else if (key == "ridge_strength") {
      cfg.attribution.ridge_strength = to_double(key, value);
    } else if (key == "lasso_strength") {
      if (value == "auto") cfg.attribution.lasso_strength.reset();
      else cfg.attribution.lasso_strength = to_double(key, value);
    } else if (key == "kernel_width") {
      cfg.attribution.kernel_width = to_double(key, value);
    } else if (key == "max_combinations") {
      cfg.max_combinations = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "max_draws") {
      cfg.max_draws = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "max_instances") {
      cfg.max_instances = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw config_error("config line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    }
  }

  if (cfg.dataset_path.empty()) throw config_error("config: dataset is required");
  if (cfg.model_source == "load" && cfg.model_path.empty())
    throw config_error("config: model_path is required when model = load");
  if (cfg.algorithms.empty())
    throw config_error("config: at least one algorithm");
  bool any_stochastic = false;
  for (const auto& a : cfg.algorithms) any_stochastic |= is_stochastic(a);
  if (any_stochastic && cfg.seeds.empty())
    throw config_error("config: seeds required for stochastic algorithms");
  return cfg;
}

std::vector<BenchmarkRecord> run_grid(const Classifier& c, const Dataset& d,
                                      const ExperimentConfig& cfg) {
  std::vector<BenchmarkRecord> records;
  std::size_t taken = 0;
  for (std::size_t id = 0; id < d.instances.size(); ++id) {
    const auto& x = d.instances[id];
    if (c.predict(x) != 1) continue;
    if (cfg.max_instances != 0 && taken == cfg.max_instances) break;
    ++taken;

    for (const auto& algorithm : cfg.algorithms) {
      std::vector<unsigned> seeds =
          is_stochastic(algorithm) ? cfg.seeds : std::vector<unsigned>{0};
      for (unsigned seed : seeds) {
        BenchmarkRecord rec;
        rec.instance_id = id;
        rec.active_count = static_cast<std::uint32_t>(x.active_count());
        rec.algorithm = algorithm;
        rec.seed = seed;

        auto t0 = clock::now();
        try {
          Explanation e;
          if (algorithm == "sedc") {
            e = explain_sedc(c, x, cfg.search);
          } else if (algorithm == "lime-c") {
            AttributionConfig acfg = cfg.attribution;
            acfg.seed = seed;
            e = explain_lime_c(c, x, acfg, cfg.search);
          } else if (algorithm == "shap-c") {
            AttributionConfig acfg = cfg.attribution;
            acfg.seed = seed;
            e = explain_shap_c(c, x, acfg, cfg.search);
          } else if (algorithm == "random") {
            e = explain_random(c, x, seed, cfg.max_draws);
          } else {  // complete
            e = explain_complete(c, x, cfg.search.max_explanation_size,
                                 cfg.max_combinations);
          }
          rec.status = to_string(e.status);
          if (e.status == SearchStatus::found) {
            rec.switching_point = e.switching_point;
            rec.score_change = e.score_change;
          }
          rec.note = e.note;
        } catch (const std::exception& ex) {
          rec.status = "error";
          rec.note = ex.what();
        }
        rec.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                             clock::now() - t0)
                             .count();
        records.push_back(std::move(rec));
      }
    }
  }
  std::sort(records.begin(), records.end(),
            [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
              if (a.instance_id != b.instance_id)
                return a.instance_id < b.instance_id;
              if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
              return a.seed < b.seed;
            });
  return records;
}

std::vector<BenchmarkRecord> run_experiment(const ExperimentConfig& cfg) {
  Dataset d = load_sparse_dataset(cfg.dataset_path);

  Classifier c;
  if (cfg.model_source == "load") {
    c = load_classifier(cfg.model_path);
  } else {
    if (cfg.model_source == "train-linear")
      c.model = train_linear(d, cfg.l2_strength, cfg.epochs, cfg.train_seed);
    else
      c.model = train_mlp(d, cfg.hidden, cfg.learning_rate, cfg.epochs,
                          cfg.train_seed);
    if (cfg.threshold == "imbalance") {
      std::vector<double> scores;
      scores.reserve(d.instances.size());
      for (const auto& x : d.instances) scores.push_back(c.score(x));
      c.threshold = threshold_by_imbalance(scores, d.imbalance());
    } else {
      c.threshold = std::stod(cfg.threshold);
    }
  }
  return run_grid(c, d, cfg);
}

void write_records_csv(const std::vector<BenchmarkRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "instance_id,active_count,algorithm,seed,status,switching_point,"
         "score_change,elapsed_us,note\n";
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.active_count << ','
        << csv_escape(r.algorithm) << ',' << r.seed << ','
        << csv_escape(r.status) << ',';
    if (r.switching_point >= 0) out << r.switching_point;
    out << ',' << format_double(r.score_change) << ',' << r.elapsed_us << ','
        << csv_escape(r.note) << '\n';
  }
}

std::vector<BenchmarkRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path, 0, 0);
  std::string line;
  if (!std::getline(in, line))
    throw parse_error("empty records file", 1, 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "instance_id,active_count,algorithm,seed,status,switching_point,"
              "score_change,elapsed_us,note")
    throw parse_error("unexpected csv header", 1, 1);

  std::vector<BenchmarkRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    auto f = csv_fields(line, lineno);
    if (f.size() != 9)
      throw parse_error("expected 9 fields, got " + std::to_string(f.size()),
                        lineno, 1);
    try {
      BenchmarkRecord r;
      r.instance_id = std::stoull(f[0]);
      r.active_count = static_cast<std::uint32_t>(std::stoul(f[1]));
      r.algorithm = f[2];
      r.seed = static_cast<unsigned>(std::stoul(f[3]));
      r.status = f[4];
      r.switching_point = f[5].empty() ? -1 : std::stoi(f[5]);
      r.score_change = std::stod(f[6]);
      r.elapsed_us = std::stoll(f[7]);
      r.note = f[8];
      records.push_back(std::move(r));
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      throw parse_error("malformed record", lineno, 1);
    }
  }
  return records;
}

namespace {

struct InstanceView {
  bool all_found = true;
  std::vector<double> switching_points;
  std::vector<double> elapsed;

  double median_sp() const {
    auto v = switching_points;
    std::sort(v.begin(), v.end());
    return median_of_sorted(v);
  }
  double median_elapsed() const {
    auto v = elapsed;
    std::sort(v.begin(), v.end());
    return median_of_sorted(v);
  }
  static double median_of_sorted(const std::vector<double>& v) {
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
  }
};

}  // namespace

void emit_report(std::vector<BenchmarkRecord> records,
                 const std::string& out_dir) {
  if (records.empty()) throw std::invalid_argument("emit_report: no records");
  std::filesystem::create_directories(out_dir);

  std::sort(records.begin(), records.end(),
            [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
              if (a.instance_id != b.instance_id)
                return a.instance_id < b.instance_id;
              if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
              return a.seed < b.seed;
            });
  write_records_csv(records, out_dir + "/records.csv");

  std::vector<std::string> algorithms;
  std::set<std::size_t> instance_ids;
  for (const auto& r : records) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) ==
        algorithms.end())
      algorithms.push_back(r.algorithm);
    instance_ids.insert(r.instance_id);
  }
  std::sort(algorithms.begin(), algorithms.end());

  // per (algorithm, instance): found-on-every-seed flag plus per-seed values
  std::map<std::string, std::map<std::size_t, InstanceView>> views;
  for (const auto& r : records) {
    auto& v = views[r.algorithm][r.instance_id];
    if (r.status == "found") {
      v.switching_points.push_back(static_cast<double>(r.switching_point));
      v.elapsed.push_back(static_cast<double>(r.elapsed_us));
    } else {
      v.all_found = false;
    }
  }

  // instances every algorithm explained on every seed
  std::vector<std::size_t> intersection;
  for (std::size_t id : instance_ids) {
    bool ok = true;
    for (const auto& a : algorithms) {
      auto it = views[a].find(id);
      if (it == views[a].end() || !it->second.all_found) {
        ok = false;
        break;
      }
    }
    if (ok) intersection.push_back(id);
  }

  nlohmann::json summary;
  summary["records"] = records.size();
  summary["instances"] = instance_ids.size();
  summary["intersection_count"] = intersection.size();

  for (const auto& a : algorithms) {
    nlohmann::json entry;
    // percentage explained: mean of the per-seed percentages
    std::map<unsigned, std::pair<std::size_t, std::size_t>> per_seed;
    std::size_t n_records = 0;
    for (const auto& r : records) {
      if (r.algorithm != a) continue;
      ++n_records;
      auto& [hits, total] = per_seed[r.seed];
      ++total;
      if (r.status == "found" && r.switching_point >= 0 &&
          r.switching_point <= 30)
        ++hits;
    }
    double pct = 0.0;
    for (const auto& [seed, ht] : per_seed)
      pct += 100.0 * static_cast<double>(ht.first) /
             static_cast<double>(ht.second);
    pct /= static_cast<double>(per_seed.size());
    entry["records"] = n_records;
    entry["percentage_explained"] = pct;

    // summaries pool every seed record of the intersection instances
    std::vector<double> sp, el;
    for (std::size_t id : intersection) {
      const auto& v = views[a][id];
      sp.insert(sp.end(), v.switching_points.begin(), v.switching_points.end());
      el.insert(el.end(), v.elapsed.begin(), v.elapsed.end());
    }
    if (!sp.empty()) {
      MetricSummary ms = summarize(sp);
      entry["switching_point"] = {{"median", ms.median},
                                  {"q1", ms.q1},
                                  {"q3", ms.q3},
                                  {"count", ms.count}};
      MetricSummary ts = summarize(el);
      entry["elapsed_us"] = {{"median", ts.median},
                             {"q1", ts.q1},
                             {"q3", ts.q3},
                             {"count", ts.count}};
    }
    summary["algorithms"][a] = entry;
  }

  // matched-pairs tests for every algorithm pair
  nlohmann::json pairwise = nlohmann::json::array();
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      const auto& a = algorithms[i];
      const auto& b = algorithms[j];

      auto add_test = [&](const std::string& metric, const std::vector<int>& sa,
                          const std::vector<int>& sb) {
        ContingencyTable t = pairwise_success_table(sa, sb);
        nlohmann::json p = {{"a", a},       {"b", b},       {"metric", metric},
                            {"n11", t.n11}, {"n12", t.n12}, {"n21", t.n21},
                            {"n22", t.n22}};
        if (t.discordant() > 0) {
          MidPResult r = mcnemar_mid_p(t);
          p["p_exact"] = r.p_exact;
          p["p_mid"] = r.p_mid;
        } else {
          p["p_exact"] = nullptr;
          p["p_mid"] = nullptr;
        }
        pairwise.push_back(p);
      };

      // success: explained on every seed
      std::vector<int> sa, sb;
      for (std::size_t id : instance_ids) {
        auto ia = views[a].find(id);
        auto ib = views[b].find(id);
        sa.push_back(ia != views[a].end() && ia->second.all_found ? 1 : 0);
        sb.push_back(ib != views[b].end() && ib->second.all_found ? 1 : 0);
      }
      add_test("success", sa, sb);

      // strictly smaller switching point / strictly faster, per-instance
      // medians over seeds, intersection only
      std::vector<int> wa, wb, fa, fb;
      for (std::size_t id : intersection) {
        double ma = views[a][id].median_sp();
        double mb = views[b][id].median_sp();
        wa.push_back(ma < mb ? 1 : 0);
        wb.push_back(mb < ma ? 1 : 0);
        double ta = views[a][id].median_elapsed();
        double tb = views[b][id].median_elapsed();
        fa.push_back(ta < tb ? 1 : 0);
        fb.push_back(tb < ta ? 1 : 0);
      }
      if (!intersection.empty()) {
        add_test("switching_point", wa, wb);
        add_test("elapsed", fa, fb);
      }
    }
  }
  summary["pairwise"] = pairwise;

  {
    std::ofstream out(out_dir + "/summary.json");
    if (!out) throw std::runtime_error("cannot write summary.json");
    out << summary.dump(2) << '\n';
  }

  {
    std::ofstream out(out_dir + "/sp_vs_time.csv");
    if (!out) throw std::runtime_error("cannot write sp_vs_time.csv");
    out << "algorithm,switching_point,elapsed_us\n";
    for (const auto& r : records)
      if (r.status == "found")
        out << r.algorithm << ',' << r.switching_point << ',' << r.elapsed_us
            << '\n';
  }
  {
    std::ofstream out(out_dir + "/actives_vs_time.csv");
    if (!out) throw std::runtime_error("cannot write actives_vs_time.csv");
    out << "algorithm,active_count,elapsed_us\n";
    for (const auto& r : records)
      out << r.algorithm << ',' << r.active_count << ',' << r.elapsed_us << '\n';
  }
}

std::string explanation_to_json(const Explanation& e) {
  nlohmann::json j;
  j["status"] = to_string(e.status);
  j["features"] = e.features;
  if (e.status == SearchStatus::found) {
    j["switching_point"] = e.switching_point;
    j["score_change"] = e.score_change;
  }
  j["elapsed_us"] = e.elapsed.count();
  j["note"] = e.note;
  return j.dump(2);
}

}  // namespace cfx
