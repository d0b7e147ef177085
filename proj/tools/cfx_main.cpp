#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cfx/harness.hpp"
#include "cfx/hybrid.hpp"
#include "cfx/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

cfx::Classifier train_classifier(const cfx::Dataset& d, const std::string& kind,
                                 double l2, int epochs, unsigned seed,
                                 int hidden, double lr,
                                 const std::string& threshold) {
  cfx::Classifier c;
  if (kind == "linear")
    c.model = cfx::train_linear(d, l2, epochs, seed);
  else
    c.model = cfx::train_mlp(d, hidden, lr, epochs, seed);
  if (threshold == "imbalance") {
    std::vector<double> scores;
    scores.reserve(d.instances.size());
    for (const auto& x : d.instances) scores.push_back(c.score(x));
    c.threshold = cfx::threshold_by_imbalance(scores, d.imbalance());
  } else {
    c.threshold = std::stod(threshold);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counterfactual explanations for sparse binary classifiers"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model and write its json");
  std::string train_data, train_out, train_kind = "linear",
              train_threshold = "imbalance";
  double train_l2 = 1e-4, train_lr = 0.1;
  int train_epochs = 200, train_hidden = 8;
  unsigned train_seed = 0;
  train->add_option("--data", train_data, "sparse dataset path")->required();
  train->add_option("--out", train_out, "output model json path")->required();
  train->add_option("--kind", train_kind, "linear or mlp")
      ->check(CLI::IsMember({"linear", "mlp"}));
  train->add_option("--l2", train_l2, "l2 penalty (linear)");
  train->add_option("--epochs", train_epochs, "training epochs");
  train->add_option("--seed", train_seed, "init seed");
  train->add_option("--hidden", train_hidden, "hidden units (mlp)");
  train->add_option("--lr", train_lr, "learning rate (mlp)");
  train->add_option("--threshold", train_threshold,
                    "'imbalance' or an explicit score threshold");

  // explain
  auto* explain =
      app.add_subcommand("explain", "explain one instance, json to stdout");
  std::string ex_model, ex_data, ex_algorithm = "sedc", ex_lasso = "auto";
  std::size_t ex_instance = 0;
  unsigned ex_seed = 1;
  int ex_max_iterations = 50, ex_max_size = 30, ex_n_samples = 5000;
  std::int64_t ex_max_time_ms = 120000;
  double ex_ridge = 1.0, ex_kernel_width = 0.25;
  std::uint64_t ex_max_combinations = 1000000, ex_max_draws = 0;
  explain->add_option("--model", ex_model, "model json path")->required();
  explain->add_option("--data", ex_data, "sparse dataset path")->required();
  explain->add_option("--instance", ex_instance, "0-based instance index")
      ->required();
  explain
      ->add_option("--algorithm", ex_algorithm,
                   "sedc, lime-c, shap-c, random or complete")
      ->check(CLI::IsMember({"sedc", "lime-c", "shap-c", "random", "complete"}));
  explain->add_option("--seed", ex_seed, "seed for stochastic algorithms");
  explain->add_option("--max-iterations", ex_max_iterations, "search budget");
  explain->add_option("--max-size", ex_max_size, "largest explanation size");
  explain->add_option("--max-time-ms", ex_max_time_ms, "time budget");
  explain->add_option("--n-samples", ex_n_samples, "surrogate sample count");
  explain->add_option("--ridge", ex_ridge, "ridge strength");
  explain->add_option("--lasso", ex_lasso, "'auto' or a lasso strength");
  explain->add_option("--kernel-width", ex_kernel_width, "kernel width");
  explain->add_option("--max-combinations", ex_max_combinations,
                      "complete-search budget");
  explain->add_option("--max-draws", ex_max_draws,
                      "random baseline budget, 0 = unlimited");

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment config");
  std::string bench_config;
  bench->add_option("--config", bench_config, "flat key=value config file")
      ->required();

  // report
  auto* report = app.add_subcommand("report", "re-summarize a records csv");
  std::string report_records, report_out = ".";
  report->add_option("--records", report_records, "records.csv path")
      ->required();
  report->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*train) {
      cfx::Dataset d = cfx::load_sparse_dataset(train_data);
      cfx::Classifier c =
          train_classifier(d, train_kind, train_l2, train_epochs, train_seed,
                           train_hidden, train_lr, train_threshold);
      cfx::save_classifier(c, train_out);
      std::cout << "wrote " << train_out << " (threshold " << c.threshold
                << ")\n";
    } else if (*explain) {
      cfx::Classifier c = cfx::load_classifier(ex_model);
      cfx::Dataset d = cfx::load_sparse_dataset(ex_data);
      if (ex_instance >= d.instances.size())
        throw cfx::config_error("instance index out of range");
      const auto& x = d.instances[ex_instance];

      cfx::SearchConfig scfg;
      scfg.max_iterations = ex_max_iterations;
      scfg.max_explanation_size = ex_max_size;
      scfg.max_time = std::chrono::milliseconds(ex_max_time_ms);
      cfx::AttributionConfig acfg;
      acfg.n_samples = ex_n_samples;
      acfg.seed = ex_seed;
      acfg.ridge_strength = ex_ridge;
      acfg.kernel_width = ex_kernel_width;
      if (ex_lasso == "auto")
        acfg.lasso_strength.reset();
      else
        acfg.lasso_strength = std::stod(ex_lasso);

      cfx::Explanation e;
      if (ex_algorithm == "sedc")
        e = cfx::explain_sedc(c, x, scfg);
      else if (ex_algorithm == "lime-c")
        e = cfx::explain_lime_c(c, x, acfg, scfg);
      else if (ex_algorithm == "shap-c")
        e = cfx::explain_shap_c(c, x, acfg, scfg);
      else if (ex_algorithm == "random")
        e = cfx::explain_random(c, x, ex_seed, ex_max_draws);
      else
        e = cfx::explain_complete(c, x, ex_max_size, ex_max_combinations);
      std::cout << cfx::explanation_to_json(e) << '\n';
    } else if (*bench) {
      cfx::ExperimentConfig cfg = cfx::parse_experiment_config(bench_config);
      auto records = cfx::run_experiment(cfg);
      cfx::emit_report(records, cfg.output_dir);
      std::cout << "wrote " << records.size() << " records to "
                << cfg.output_dir << "\n";
    } else if (*report) {
      auto records = cfx::read_records_csv(report_records);
      cfx::emit_report(records, report_out);
      std::cout << "summarized " << records.size() << " records into "
                << report_out << "\n";
    }
  } catch (const cfx::parse_error& e) {
    std::cerr << "data error: " << e.what();
    if (e.line > 0) std::cerr << " (line " << e.line << ", column " << e.column << ")";
    std::cerr << "\n";
    return kExitData;
  } catch (const cfx::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
